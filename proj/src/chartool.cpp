#include "grssd/chartool.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <ostream>
#include <random>

#include "json.hpp"

#include "grssd/error.hpp"
#include "grssd/parallel.hpp"

namespace grssd {

Elem pi_brute(const Field& F, const std::vector<Elem>& S, Elem x) {
    Elem acc = 1;
    for (Elem a : S) acc = F.mul(acc, F.sub(x, a));
    return acc;
}

Elem delta_brute(const Field& F, const std::vector<Elem>& S, Elem e) {
    if (!std::binary_search(S.begin(), S.end(), e)) fail(ErrorKind::InvalidArgument, "delta at a non-member");
    Elem acc = 1;
    for (Elem a : S)
        if (a != e) acc = F.mul(acc, F.sub(e, a));
    return acc;
}

bool has_structure(const SubsetFamily& family) {
    if (family.structure.empty() || family.structure.size() != family.subsets.size() || family.structure.size() > 16)
        return false;
    return std::all_of(family.structure.begin(), family.structure.end(),
                       [](const CosetUnion& u) { return pieces_disjoint(u); });
}

FactoredDelta::FactoredDelta(const Field& F, const SubsetFamily& family) : F_(&F), sets_(family.structure) {
    if (!has_structure(family)) fail(ErrorKind::InvalidArgument, "family carries no disjoint coset structure");
    const u64 n = sets_.size();
    for (u64 J = 1; J < (u64{1} << n); ++J) {
        CosetUnion X;
        bool first = true;
        for (u64 i = 0; i < n; ++i) {
            if (!(J >> i & 1)) continue;
            X = first ? sets_[i] : intersect(X, sets_[i]);
            first = false;
        }
        if (X.pieces.empty() && !X.include_zero) continue;
        const int k = std::popcount(J);
        i64 weight = (k % 2 == 1 ? 1 : -1) * (i64{1} << (k - 1));
        terms_.push_back(Term{J, weight, std::move(X)});
    }
}

u64 FactoredDelta::membership(Elem e) const {
    u64 mask = 0;
    for (size_t i = 0; i < sets_.size(); ++i)
        if (contains(*F_, sets_[i], e)) mask |= u64{1} << i;
    return mask;
}

Elem FactoredDelta::delta(Elem e) const {
    const u64 I = membership(e);
    if (std::popcount(I) % 2 == 0) fail(ErrorKind::InvalidArgument, "element is not in the combined set");
    const u64 order = F_->order();
    u64 acc = 0;
    for (const auto& t : terms_) {
        Elem val = (t.mask & ~I) == 0 ? delta_at(*F_, t.set, e) : pi_at(*F_, t.set, e);
        if (val == 0) fail(ErrorKind::Internal, "vanishing factor in factored delta");
        acc = (acc + mul_mod(F_->log(val), mod_floor(t.weight, order), order)) % order;
    }
    Elem out = F_->exp(acc);
    return sign_error_ ? F_->neg(out) : out;
}

Elem delta_factored(const Field& F, const EvalSet& S, Elem e) { return FactoredDelta(F, S.family).delta(e); }

CharacterReport character_report(const Field& F, const EvalSet& S, const CharacterOptions& opts) {
    CharacterReport rep;
    rep.elements = S.elements;
    const size_t n = S.elements.size();
    if (n == 0) fail(ErrorKind::InvalidArgument, "character report of an empty set");
    rep.delta.assign(n, 0);
    if (has_structure(S.family)) {
        rep.method = DeltaMethod::Factored;
        FactoredDelta fd(F, S.family);
        fd.inject_sign_error(opts.inject_sign_error);
        parallel_chunks(n, opts.threads, [&](size_t b, size_t e, unsigned) {
            for (size_t i = b; i < e; ++i) rep.delta[i] = fd.delta(S.elements[i]);
        });
        std::vector<size_t> idx(n);
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::mt19937_64 rng(opts.seed);
        std::shuffle(idx.begin(), idx.end(), rng);
        idx.resize(std::min<size_t>(n, opts.brute_sample));
        for (size_t i : idx) {
            if (delta_brute(F, S.elements, S.elements[i]) != rep.delta[i])
                fail(ErrorKind::Internal, "factored and brute delta disagree at element " + std::to_string(S.elements[i]));
            ++rep.brute_checked;
        }
    } else {
        rep.method = DeltaMethod::Brute;
        parallel_chunks(n, opts.threads, [&](size_t b, size_t e, unsigned) {
            for (size_t i = b; i < e; ++i) rep.delta[i] = delta_brute(F, S.elements, S.elements[i]);
        });
        rep.brute_checked = n;
    }
    rep.eta.resize(n);
    bool neg_all = true;
    for (size_t i = 0; i < n; ++i) {
        rep.eta[i] = F.eta(rep.delta[i]);
        (rep.eta[i] > 0 ? rep.plus_count : rep.minus_count)++;
        if (F.eta(F.neg(rep.delta[i])) != 1) neg_all = false;
    }
    rep.uniform = rep.plus_count == n || rep.minus_count == n;
    rep.common = rep.uniform ? rep.eta[0] : 0;
    rep.negated_uniform = neg_all;
    if (rep.negated_uniform != (rep.uniform && rep.common == 1))
        fail(ErrorKind::Internal, "eta(-1) = 1 identity violated");
    return rep;
}

void write_character_jsonl(const CharacterReport& rep, std::ostream& os) {
    for (size_t i = 0; i < rep.elements.size(); ++i) {
        nlohmann::json j{{"element", rep.elements[i]}, {"delta", rep.delta[i]}, {"eta", rep.eta[i]}};
        os << j.dump() << "\n";
    }
}

Theorem1Result theorem1_check(const Field& F, const SubsetFamily& family, int c) {
    Theorem1Result res;
    const EvalSet S = combine(family);
    const bool structured = has_structure(family);
    const size_t n = family.subsets.size();
    auto delta_of = [&](size_t i, Elem a) {
        return structured ? delta_at(F, family.structure[i], a) : delta_brute(F, family.subsets[i], a);
    };
    auto pi_of = [&](size_t i, Elem a) {
        return structured ? pi_at(F, family.structure[i], a) : pi_brute(F, family.subsets[i], a);
    };
    res.hypothesis = true;
    for (const auto& region : S.pieces) {
        for (Elem a : region.elements) {
            Elem h = 1;
            for (size_t i = 0; i < n; ++i) h = F.mul(h, (region.mask >> i & 1) ? delta_of(i, a) : pi_of(i, a));
            if (h == 0 || F.eta(h) != c) {
                res.hypothesis = false;
                if (res.witnesses.size() < 8) res.witnesses.push_back(a);
            }
        }
    }
    if (!S.elements.empty()) {
        CharacterOptions opts;
        opts.threads = 1;
        auto rep = character_report(F, S, opts);
        res.conclusion = rep.uniform && rep.common == c;
    }
    return res;
}

}
