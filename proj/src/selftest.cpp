#include "grssd/selftest.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "grssd/census.hpp"

namespace grssd {

namespace {

void record(PropertyResult& res, bool ok, const std::string& what) {
    ++res.checked;
    if (ok) return;
    ++res.failed;
    res.ok = false;
    if (res.detail.empty()) res.detail = what;
}

std::string field_name(const Field& F) { return "GF(" + std::to_string(F.q()) + ")"; }

template <class T>
T pick(std::mt19937_64& rng, const std::vector<T>& v) {
    return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
}

u64 uniform(std::mt19937_64& rng, u64 lo, u64 hi) { return std::uniform_int_distribution<u64>(lo, hi)(rng); }

// subsets are unions of same-step cosets with distinct offsets, so pieces never overlap
SubsetFamily random_coset_family(const Field& F, std::mt19937_64& rng, size_t n, u64 min_step, u64 max_pieces) {
    std::vector<u64> steps;
    for (u64 d : divisors(F.order()))
        if (d >= min_step) steps.push_back(d);
    SubsetFamily fam;
    for (size_t i = 0; i < n; ++i) {
        CosetUnion cu;
        const u64 d = pick(rng, steps);
        const u64 pieces = uniform(rng, 1, std::min(max_pieces, d));
        std::set<u64> offsets;
        while (offsets.size() < pieces) offsets.insert(uniform(rng, 0, d - 1));
        for (u64 o : offsets) cu.pieces.push_back(make_coset(F, static_cast<i64>(o), d));
        cu.include_zero = uniform(rng, 0, 5) == 0;
        fam.subsets.push_back(materialize(F, cu));
        fam.structure.push_back(cu);
    }
    return fam;
}

bool same_set(const Field& F, const Coset& a, const Coset& b) { return materialize(F, a) == materialize(F, b); }

}

PropertyResult check_lemma1(const Field& F, u64 random_families, u64 seed, bool inject_sign_error) {
    PropertyResult res;
    res.name = "lemma1 factored delta " + field_name(F);
    const u64 order = F.order();
    if (F.q() <= 64) {
        for (u64 d : divisors(order)) {
            for (u64 o = 0; o < d; ++o) {
                Coset c = make_coset(F, static_cast<i64>(o), d);
                auto mem = materialize(F, c);
                for (Elem x = 0; x < F.q(); ++x) record(res, pi_at(F, c, x) == pi_brute(F, mem, x), "pi of coset");
                for (Elem x : mem) {
                    Elem d1 = delta_at(F, c, x);
                    if (inject_sign_error) d1 = F.neg(d1);
                    std::ostringstream os;
                    os << "coset offset=" << o << " step=" << d << " at " << x;
                    record(res, d1 == delta_brute(F, mem, x), os.str());
                }
            }
        }
    }
    std::mt19937_64 rng(seed);
    for (u64 trial = 0; trial < random_families; ++trial) {
        const size_t n = uniform(rng, 1, 4);
        SubsetFamily fam = random_coset_family(F, rng, n, F.q() <= 64 ? 1 : 4, 3);
        // disjoint union form of the single-set specialization
        for (size_t i = 0; i < n; ++i) {
            const auto& mem = fam.subsets[i];
            for (Elem x : mem) {
                Elem d1 = delta_at(F, fam.structure[i], x);
                if (inject_sign_error) d1 = F.neg(d1);
                record(res, d1 == delta_brute(F, mem, x), "coset union trial " + std::to_string(trial));
            }
        }
        EvalSet S = combine(fam);
        if (S.elements.empty()) continue;
        FactoredDelta fd(F, fam);
        fd.inject_sign_error(inject_sign_error);
        for (Elem e : S.elements)
            record(res, fd.delta(e) == delta_brute(F, S.elements, e),
                   "combined family trial " + std::to_string(trial) + " element " + std::to_string(e));
    }
    return res;
}

PropertyResult check_lemma7(const Field& F) {
    PropertyResult res;
    res.name = "lemma7 norm fiber pi and delta " + field_name(F);
    const u64 r = F.r();
    const Elem rp1 = F.from_int(static_cast<i64>(r + 1));
    for (u64 l : divisors(r - 1)) {
        const Elem alpha = F.exp(F.order() / l);
        for (u64 i = 0; i < l; ++i) {
            Coset c = norm_fiber(F, l, i);
            auto mem = materialize(F, c);
            const Elem ai = F.pow(alpha, static_cast<i64>(i));
            for (Elem x = 0; x < F.q(); ++x)
                record(res, pi_at(F, c, x) == F.sub(x == 0 ? 0 : F.norm(x), ai), "pi at l=" + std::to_string(l));
            for (Elem x : mem) {
                const Elem closed = F.mul(rp1, F.pow(x, static_cast<i64>(r)));
                record(res, F.norm(x) == ai, "membership l=" + std::to_string(l));
                record(res, delta_at(F, c, x) == closed && delta_brute(F, mem, x) == closed,
                       "delta at l=" + std::to_string(l) + " i=" + std::to_string(i));
            }
        }
    }
    return res;
}

PropertyResult check_lemma4(u64 families, u64 seed) {
    PropertyResult res;
    res.name = "lemma4 multiset identity";
    std::mt19937_64 rng(seed);
    for (u64 trial = 0; trial < families; ++trial) {
        SubsetFamily fam;
        const size_t n = uniform(rng, 2, 4);
        const u64 universe = uniform(rng, 1, 40);
        for (size_t i = 0; i < n; ++i) {
            std::vector<Elem> sub;
            const u64 density = uniform(rng, 0, 100);
            for (Elem x = 0; x < universe; ++x)
                if (uniform(rng, 1, 100) <= density) sub.push_back(x);
            fam.subsets.push_back(std::move(sub));
        }
        record(res, multiset_identity_check(fam), "trial " + std::to_string(trial));
    }
    return res;
}

PropertyResult check_lemma5(const Field& F) {
    PropertyResult res;
    res.name = "lemma5 coset distinctness " + field_name(F);
    const u64 r = F.r();
    for (u64 l : divisors(r - 1)) {
        const u64 step = F.order() / l;
        for (u64 i = 0; i + 1 < r; ++i) {
            for (u64 j = 0; j + 1 < r; ++j) {
                const bool equal = same_set(F, make_coset(F, static_cast<i64>(i * (r + 1)), step),
                                            make_coset(F, static_cast<i64>(j * (r + 1)), step));
                const u64 diff = i > j ? i - j : j - i;
                std::ostringstream os;
                os << "l=" << l << " i=" << i << " j=" << j;
                record(res, equal == (diff % ((r - 1) / l) == 0), os.str());
            }
        }
    }
    return res;
}

PropertyResult check_lemma6(const Field& F) {
    PropertyResult res;
    res.name = "lemma6 fiber field intersection " + field_name(F);
    const u64 r = F.r();
    for (u64 l : divisors(r - 1)) {
        if (l % 2 != 0) continue;
        auto h0 = materialize(F, subgroup_of_size(F, l));
        for (u64 i = 0; i < l; ++i) {
            std::vector<Elem> brute;
            for (Elem x : materialize(F, norm_fiber(F, l, i)))
                if (F.pow(x, static_cast<i64>(r)) == x) brute.push_back(x);
            auto got = fiber_field_intersection(F, l, i);
            std::sort(got.begin(), got.end());
            bool ok = got == brute;
            if (i % 2 != 0) ok = ok && got.empty();
            else ok = ok && got.size() == 2 && std::includes(h0.begin(), h0.end(), got.begin(), got.end());
            record(res, ok, "l=" + std::to_string(l) + " i=" + std::to_string(i));
        }
    }
    return res;
}

PropertyResult check_lemma8(const Field& F, Lemma8Mode mode) {
    PropertyResult res;
    res.name = std::string("lemma8 ") + (mode == Lemma8Mode::AsStated ? "as stated " : "corrected ") + field_name(F);
    const u64 r = F.r();
    for (u64 l : divisors(r - 1)) {
        if (l % 2 != 0) continue;
        const Coset h0 = h_coset(F, l, 0, 0);
        for (u64 s = 0; s + 1 <= (r - 1) / l; s += 2) {
            std::vector<Coset> hs;
            for (u64 k = 1; k <= s; ++k) hs.push_back(h_coset(F, l, s, k));
            for (u64 i = 0; i < l; ++i) {
                const int first_expected = mode == Lemma8Mode::AsStated || i % 2 == 0 ? 1 : -1;
                for (Elem b : materialize(F, norm_fiber(F, l, i))) {
                    if (contains(F, h0, b)) continue;
                    Elem prod = 1;
                    for (const auto& h : hs) prod = F.mul(prod, pi_at(F, h, b));
                    std::ostringstream os;
                    os << "l=" << l << " s=" << s << " i=" << i << " b=" << b;
                    record(res, F.eta(pi_at(F, h0, b)) == first_expected, os.str() + " first claim");
                    record(res, prod != 0 && F.eta(prod) == 1, os.str() + " second claim");
                }
            }
        }
    }
    return res;
}

PropertyResult check_lemma9(const Field& F, u64 s, u64 t) {
    PropertyResult res;
    res.name = "lemma9 pairwise cardinalities " + field_name(F);
    const u64 order = F.order();
    const auto divs = divisors(order);
    for (u64 u : divs) {
        for (u64 v : divs) {
            const u64 g = std::gcd(u, v);
            if (s > u / g || t > v / g) continue;
            CosetUnion A, B;
            for (u64 i = 0; i < s; ++i) A.pieces.push_back(make_coset(F, static_cast<i64>(i * v), u));
            for (u64 j = 0; j < t; ++j) B.pieces.push_back(make_coset(F, static_cast<i64>(j * u), v));
            auto ma = materialize(F, A), mb = materialize(F, B);
            std::vector<Elem> both;
            std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(both));
            std::ostringstream os;
            os << "u=" << u << " v=" << v;
            record(res, ma.size() == s * (order / u) && mb.size() == t * (order / v), os.str() + " sizes");
            record(res, both.size() == intersection_card2(order, u, v, s, t), os.str() + " intersection");
        }
    }
    return res;
}

PropertyResult check_lemma10(const Field& F, u64 triples, u64 seed) {
    PropertyResult res;
    res.name = "lemma10 triple cardinalities " + field_name(F);
    const u64 order = F.order();
    const auto divs = divisors(order);
    std::mt19937_64 rng(seed);
    auto set_of = [&](u64 count, u64 shift, u64 step) {
        CosetUnion cu;
        for (u64 i = 0; i < count; ++i) cu.pieces.push_back(make_coset(F, static_cast<i64>(i * shift), step));
        return materialize(F, cu);
    };
    auto meet = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
        std::vector<Elem> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };
    for (u64 trial = 0; trial < triples; ++trial) {
        const u64 u = pick(rng, divs), v = pick(rng, divs), w = pick(rng, divs);
        const u64 s = uniform(rng, 0, u / std::gcd(u, v)), t = uniform(rng, 0, v / std::gcd(v, w)),
                  f = uniform(rng, 0, w / std::gcd(w, u));
        auto A = set_of(s, v, u), B = set_of(t, w, v), C = set_of(f, u, w);
        auto ab = meet(A, B), bc = meet(B, C), ca = meet(C, A), abc = meet(ab, C);
        auto k = intersection_card3(order, u, v, w, s, t, f);
        std::ostringstream os;
        os << "u=" << u << " v=" << v << " w=" << w << " s=" << s << " t=" << t << " f=" << f;
        record(res, ab.size() == k.ab && bc.size() == k.bc && ca.size() == k.ca && abc.size() == k.abc, os.str());
    }
    return res;
}

PropertyResult check_theorem1_built(const Field& F) {
    PropertyResult res;
    res.name = "theorem1 on built families " + field_name(F);
    CensusOptions co;
    co.threads = 1;
    auto census = run_census(F.r(), co);
    u64 held = 0;
    for (u64 len : census.lengths()) {
        for (const auto& w : census.witnesses[len]) {
            if (!w) continue;
            SubsetFamily fam = construction_family(F, *w);
            for (int c : {1, -1}) {
                auto t1 = theorem1_check(F, fam, c);
                if (t1.hypothesis) ++held;
                record(res, !t1.hypothesis || t1.conclusion,
                       std::string(family_tag(w->family)) + ":" + w->to_string() + " c=" + std::to_string(c));
            }
        }
    }
    res.detail = res.ok ? "hypothesis held on " + std::to_string(held) + " families" : res.detail;
    return res;
}

PropertyResult check_theorem1_random(const Field& F, u64 wanted, u64 seed) {
    PropertyResult res;
    res.name = "theorem1 on random coset families " + field_name(F);
    std::mt19937_64 rng(seed);
    u64 held = 0, attempts = 0;
    const u64 max_attempts = 200000;
    while (held < wanted && attempts < max_attempts) {
        ++attempts;
        SubsetFamily fam = random_coset_family(F, rng, uniform(rng, 2, 3), std::max<u64>(1, F.order() / 8), 2);
        if (combine(fam).elements.empty()) continue;
        for (int c : {1, -1}) {
            auto t1 = theorem1_check(F, fam, c);
            if (!t1.hypothesis) continue;
            ++held;
            record(res, t1.conclusion, "attempt " + std::to_string(attempts) + " c=" + std::to_string(c));
            break;
        }
    }
    record(res, held >= wanted, "only " + std::to_string(held) + " families satisfied the hypothesis");
    if (res.ok) res.detail = std::to_string(held) + " families after " + std::to_string(attempts) + " draws";
    return res;
}

PropertyResult check_eta_minus_one(const std::vector<FieldParams>& fields) {
    PropertyResult res;
    res.name = "eta(-1)=+1";
    for (const auto& fp : fields) {
        Field F(fp);
        record(res, F.eta(F.minus_one()) == 1, field_name(F));
    }
    return res;
}

std::vector<PropertyResult> run_self_test(const SelfTestOptions& opts) {
    std::vector<PropertyResult> out;
    std::vector<Field> fields;
    for (const auto& fp : opts.fields) fields.emplace_back(fp);
    out.push_back(check_eta_minus_one(opts.fields));
    for (const auto& F : fields) out.push_back(check_lemma1(F, F.q() <= 64 ? 100 : 20, opts.seed, opts.inject_sign_error));
    for (const auto& F : fields) out.push_back(check_lemma7(F));
    out.push_back(check_lemma4(200, opts.seed));
    for (const auto& F : fields) out.push_back(check_lemma5(F));
    for (const auto& F : fields) out.push_back(check_lemma6(F));
    for (const auto& F : fields) {
        out.push_back(check_lemma8(F, Lemma8Mode::Corrected));
        auto stated = check_lemma8(F, Lemma8Mode::AsStated);
        stated.informational = true;
        out.push_back(stated);
    }
    for (const auto& F : fields) out.push_back(check_lemma9(F, 2, 2));
    for (const auto& F : fields) out.push_back(check_lemma10(F, 50, opts.seed));
    for (const auto& F : fields) out.push_back(check_theorem1_built(F));
    for (const auto& F : fields)
        if (F.q() <= 64) out.push_back(check_theorem1_random(F, 100, opts.seed));
    return out;
}

}
