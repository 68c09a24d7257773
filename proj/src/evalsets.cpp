#include "grssd/evalsets.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "grssd/error.hpp"

namespace grssd {

namespace {

struct TagInfo {
    Family family;
    const char* tag;
};

constexpr TagInfo kTags[] = {
    {Family::Thm2, "thm2"}, {Family::Thm3, "thm3"}, {Family::Thm4, "thm4"}, {Family::Cor1, "cor1"},
    {Family::Thm5, "thm5"}, {Family::Thm6, "thm6"}, {Family::Cor2, "cor2"}, {Family::Cor3, "cor3"},
};

bool norm_family(Family f) { return f == Family::Thm2 || f == Family::Thm3; }
bool two_subgroup_family(Family f) { return f == Family::Thm4 || f == Family::Cor1 || f == Family::Thm5; }

std::vector<std::string> keys_of(Family f) {
    if (norm_family(f)) return {"l", "s", "l1", "l2"};
    if (two_subgroup_family(f)) return {"u", "v", "s", "s_prime", "t"};
    return {"u", "v", "w", "s", "t", "f"};
}

u64* field_of(ConstructionParams& p, const std::string& key) {
    if (key == "l") return &p.l;
    if (key == "s") return &p.s;
    if (key == "l1") return &p.l1;
    if (key == "l2") return &p.l2;
    if (key == "u") return &p.u;
    if (key == "v") return &p.v;
    if (key == "w") return &p.w;
    if (key == "s_prime") return &p.s_prime;
    if (key == "t") return &p.t;
    if (key == "f") return &p.f;
    return nullptr;
}

u64 value_of(const ConstructionParams& p, const std::string& key) {
    return *field_of(const_cast<ConstructionParams&>(p), key);
}

i64 three_set_n(u64 order, const ConstructionParams& p) {
    auto c = intersection_card3(order, p.u, p.v, p.w, p.s, p.t, p.f);
    return static_cast<i64>(p.s * (order / p.u) + p.t * (order / p.v) + p.f * (order / p.w)) -
           2 * static_cast<i64>(c.ab) - 2 * static_cast<i64>(c.bc) - 2 * static_cast<i64>(c.ca) +
           4 * static_cast<i64>(c.abc);
}

i64 two_set_n(u64 order, const ConstructionParams& p) {
    return static_cast<i64>((p.s + p.s_prime) * (order / p.u) + p.t * (order / p.v)) -
           2 * static_cast<i64>(intersection_card2(order, p.u, p.v, p.s, p.t));
}

}

const char* family_tag(Family f) {
    for (const auto& t : kTags)
        if (t.family == f) return t.tag;
    return "?";
}

std::optional<Family> family_from_tag(const std::string& tag) {
    for (const auto& t : kTags)
        if (tag == t.tag) return t.family;
    return std::nullopt;
}

int class_id(Family f) { return static_cast<int>(f) + 1; }

Family family_of_class(int id) {
    if (id < 1 || id > 8) fail(ErrorKind::InvalidArgument, "class id must be in 1..8");
    return static_cast<Family>(id - 1);
}

std::string ConstructionParams::to_string(char sep) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& k : keys_of(family)) {
        os << (first ? "" : std::string(1, sep)) << k << "=" << value_of(*this, k);
        first = false;
    }
    return os.str();
}

ConstructionParams ConstructionParams::parse(Family fam, const std::string& kv) {
    ConstructionParams p;
    p.family = fam;
    auto keys = keys_of(fam);
    std::vector<bool> seen(keys.size(), false);
    std::string item;
    std::string text = kv;
    std::replace(text.begin(), text.end(), ';', ',');
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::InvalidArgument, "parameter without value: " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end())
            fail(ErrorKind::InvalidArgument, "unknown parameter '" + key + "' for " + family_tag(fam));
        if (val.empty() || val.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::InvalidArgument, "parameter " + key + " must be a non-negative integer");
        *field_of(p, key) = std::stoull(val);
        seen[it - keys.begin()] = true;
    }
    for (size_t i = 0; i < keys.size(); ++i)
        if (!seen[i]) fail(ErrorKind::InvalidArgument, "missing parameter '" + keys[i] + "'");
    return p;
}

bool ConstructionParams::operator==(const ConstructionParams& o) const {
    return family == o.family && l == o.l && s == o.s && l1 == o.l1 && l2 == o.l2 && u == o.u && v == o.v &&
           w == o.w && s_prime == o.s_prime && t == o.t && f == o.f;
}

bool ValidationReport::ok() const {
    return std::all_of(items.begin(), items.end(), [](const Hypothesis& h) { return h.holds; });
}

std::string ValidationReport::failures() const {
    std::string out;
    for (const auto& h : items)
        if (!h.holds) out += (out.empty() ? "" : "; ") + h.name;
    return out;
}

ValidationReport validate(u64 r, const ConstructionParams& p) {
    ValidationReport rep;
    auto add = [&](const std::string& name, bool holds) { rep.items.push_back({name, holds}); };
    const u64 q = r * r, order = q - 1;
    add("r = 3 mod 4", r % 4 == 3);

    if (norm_family(p.family)) {
        add("l even", p.l > 0 && p.l % 2 == 0);
        add("l | r-1", divides(p.l, r - 1));
        add("s even", p.s % 2 == 0);
        add("0 <= s <= (r-1)/l - 1", p.l > 0 && p.s + 1 <= (r - 1) / p.l);
        add("0 <= l1 <= l/2", p.l1 <= p.l / 2);
        add("0 <= l2 <= l/2", p.l2 <= p.l / 2);
        return rep;
    }

    const bool du = divides(p.u, order), dv = divides(p.v, order);
    add("u | q-1", du);
    add("v | q-1", dv);

    if (two_subgroup_family(p.family)) {
        add("u != v", p.u != p.v);
        add("v even", p.v % 2 == 0 && p.v > 0);
        const u64 g = (du && dv) ? std::gcd(p.u, p.v) : 1;
        add("0 <= s <= u/gcd(u,v)", du && dv && p.s <= p.u / g);
        add("0 <= s' <= u/gcd(u,v)", du && dv && p.s_prime <= p.u / g);
        add("0 <= t <= v/gcd(u,v)", du && dv && p.t <= p.v / g);
        const bool c2a = divides(2 * p.u, (r + 1) * p.v);
        const u64 h = c2a ? (r + 1) * p.v / (2 * p.u) : 0;
        const bool ss_even = p.s % 2 == 0 && p.s_prime % 2 == 0;
        if (p.family == Family::Thm5) {
            const u64 l = p.v > 0 ? two_adic(p.v) : 0;
            add("(1) 2^l | u and v = 2^l mod 2^(l+1) for some l >= 2", p.v > 0 && l >= 2 && divides(u64{1} << l, p.u));
            add("(2) 2u | v(r+1)", c2a);
            add("(2) v | u(r-1)", divides(p.v, p.u * (r - 1)));
            add("(3) s and s' even, or v(r+1)/2u even", c2a && (ss_even || h % 2 == 0));
            return rep;
        }
        add("(1) u even", p.u > 0 && p.u % 2 == 0);
        add("(1) v even", p.v > 0 && p.v % 2 == 0);
        add("(2) 2u | (r+1)v", c2a);
        add("(2) v | (r-1)u", divides(p.v, (r - 1) * p.u));
        add("(2) 4 does not divide v", p.v % 4 != 0);
        if (p.family == Family::Thm4) {
            add("(3) (r+1)v/2u odd", c2a && h % 2 == 1);
            add("(3) s+s' odd", (p.s + p.s_prime) % 2 == 1);
        } else {
            add("(3) s and s' even, or (r+1)v/2u even", c2a && (ss_even || h % 2 == 0));
        }
        return rep;
    }

    const bool dw = divides(p.w, order);
    add("w | q-1", dw);
    const bool all = du && dv && dw;
    add("0 <= s <= u/gcd(u,v)", all && p.s <= p.u / std::gcd(p.u, p.v));
    add("0 <= t <= v/gcd(v,w)", all && p.t <= p.v / std::gcd(p.v, p.w));
    add("0 <= f <= w/gcd(w,u)", all && p.f <= p.w / std::gcd(p.w, p.u));
    const i64 n = all ? three_set_n(order, p) : 0;
    if (p.family == Family::Cor2) add("(1) n odd", all && n % 2 != 0);
    else add("(1) n even", all && n % 2 == 0);
    add("(1) u even", p.u > 0 && p.u % 2 == 0);
    add("(1) v even", p.v > 0 && p.v % 2 == 0);
    add("(1) w even", p.w > 0 && p.w % 2 == 0);
    const bool uv = divides(p.u, (r + 1) * p.v), uw = divides(p.u, (r + 1) * p.w);
    add("(2) u | (r+1)v", uv);
    add("(2) u | (r+1)w", uw);
    add("(2) v | (r-1)u", divides(p.v, (r - 1) * p.u));
    add("(2) v | (r-1)w", divides(p.v, (r - 1) * p.w));
    add("(2) w | (r-1)u", divides(p.w, (r - 1) * p.u));
    add("(2) w | (r-1)v", divides(p.w, (r - 1) * p.v));
    const u64 hv = uv ? (r + 1) * p.v / p.u : 0, hw = uw ? (r + 1) * p.w / p.u : 0;
    add("(3) (r+1)v/u * s even", uv && (hv * p.s) % 2 == 0);
    add("(3) (r+1)w/u * s even", uw && (hw * p.s) % 2 == 0);
    if (p.family != Family::Thm6) {
        const u64 half = p.s == 0 ? 0 : p.s * (p.s - 1) / 2;
        add("(4) (r+1)v/u * s(s-1)/2 even", uv && (hv * half) % 2 == 0);
    }
    return rep;
}

Shape stated_shape(u64 r, const ConstructionParams& p) {
    const u64 order = r * r - 1;
    Shape sh;
    switch (p.family) {
    case Family::Thm2:
        sh.n = static_cast<i64>(p.s * p.l + (p.l1 + p.l2) * (r + 1) + 1);
        sh.set_size = sh.n;
        sh.code_length = sh.n + 1;
        sh.extended = true;
        return sh;
    case Family::Thm3:
        sh.n = static_cast<i64>((p.s + 1) * p.l + (p.l1 + p.l2) * (r + 1)) - 2 * static_cast<i64>(p.l2) + 1;
        sh.set_size = sh.n;
        sh.code_length = sh.n + 1;
        sh.extended = true;
        return sh;
    default:
        break;
    }
    if (p.u == 0 || p.v == 0 || (!two_subgroup_family(p.family) && p.w == 0))
        fail(ErrorKind::InvalidArgument, "u, v, w must be positive divisors of q-1");
    if (two_subgroup_family(p.family)) {
        sh.n = two_set_n(order, p);
        if (p.family == Family::Thm4) {
            sh.set_size = sh.n;
            sh.code_length = sh.n;
        } else if (p.family == Family::Cor1) {
            sh.set_size = sh.n + 1;
            sh.code_length = sh.n + 2;
            sh.extended = true;
        } else {
            sh.set_size = sh.n + 1;
            sh.extended = sh.n % 2 == 0;
            sh.code_length = sh.extended ? sh.n + 2 : sh.n + 1;
        }
        return sh;
    }
    sh.n = three_set_n(order, p);
    if (p.family == Family::Thm6) {
        sh.set_size = sh.n;
        sh.code_length = sh.n;
    } else if (p.family == Family::Cor2) {
        sh.set_size = sh.n;
        sh.code_length = sh.n + 1;
        sh.extended = true;
    } else {
        sh.set_size = sh.n + 1;
        sh.code_length = sh.n + 2;
        sh.extended = true;
    }
    return sh;
}

i64 thm3_combined_size(u64 r, const ConstructionParams& p) {
    return static_cast<i64>((p.s + 1) * p.l + (p.l1 + p.l2) * (r + 1) + 1) - 4 * static_cast<i64>(p.l2);
}

std::string EvalSet::tag() const { return params ? family_tag(params->family) : "custom"; }

EvalSet combine(const SubsetFamily& family) {
    const size_t n = family.subsets.size();
    if (n == 0 || n > 64) fail(ErrorKind::InvalidArgument, "combine needs between 1 and 64 subsets");
    std::vector<std::pair<Elem, unsigned>> all;
    for (size_t i = 0; i < n; ++i)
        for (Elem e : family.subsets[i]) all.emplace_back(e, static_cast<unsigned>(i));
    std::sort(all.begin(), all.end());
    EvalSet S;
    S.family = family;
    std::map<u64, std::vector<Elem>> regions;
    for (size_t i = 0; i < all.size();) {
        size_t j = i;
        u64 mask = 0;
        while (j < all.size() && all[j].first == all[i].first) mask |= u64{1} << all[j++].second;
        if (std::popcount(mask) % 2 == 1) {
            S.elements.push_back(all[i].first);
            regions[mask].push_back(all[i].first);
        }
        i = j;
    }
    for (auto& [mask, elems] : regions) S.pieces.push_back(Region{mask, std::move(elems)});
    return S;
}

bool multiset_identity_check(const SubsetFamily& family) {
    const auto& A = family.subsets;
    const size_t n = A.size();
    if (n < 2) fail(ErrorKind::InvalidArgument, "multiset identity needs at least two subsets");
    auto member = [](const std::vector<Elem>& s, Elem e) { return std::binary_search(s.begin(), s.end(), e); };

    std::vector<std::vector<Elem>> B(n);
    for (size_t l = 0; l < n; ++l) {
        for (size_t j = 0; j < n; ++j) {
            if (j == l) continue;
            std::vector<Elem> cap;
            std::set_intersection(A[l].begin(), A[l].end(), A[j].begin(), A[j].end(), std::back_inserter(cap));
            std::vector<Elem> merged;
            std::set_union(B[l].begin(), B[l].end(), cap.begin(), cap.end(), std::back_inserter(merged));
            B[l] = std::move(merged);
        }
    }
    std::map<Elem, u64> lhs, rhs;
    for (const auto& b : B)
        for (Elem e : b) ++lhs[e];

    std::vector<Elem> universe;
    for (const auto& a : A) universe.insert(universe.end(), a.begin(), a.end());
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    for (Elem e : universe) {
        u64 size = 0;
        for (size_t i = 0; i < n; ++i) size += member(A[i], e);
        u64 in_b = 0;
        for (size_t l = 0; l < n; ++l) in_b += member(B[l], e);
        if (size == 1 && in_b != 0) return false;
        if (size >= 2) {
            rhs[e] += size;
            if (in_b != size) return false;
        }
    }
    return lhs == rhs;
}

SubsetFamily construction_family(const Field& F, const ConstructionParams& p) {
    SubsetFamily fam;
    CosetUnion A, B, C;
    switch (p.family) {
    case Family::Thm2:
    case Family::Thm3:
        for (u64 k = (p.family == Family::Thm3 ? 0 : 1); k <= p.s; ++k) A.pieces.push_back(h_coset(F, p.l, p.s, k));
        for (u64 i = 0; i < p.l1; ++i) B.pieces.push_back(norm_fiber(F, p.l, 2 * i + 1));
        B.include_zero = true;
        for (u64 j = 0; j < p.l2; ++j) C.pieces.push_back(norm_fiber(F, p.l, 2 * j));
        break;
    case Family::Thm4:
    case Family::Cor1:
    case Family::Thm5:
        for (u64 i = 0; i < p.s; ++i) A.pieces.push_back(make_coset(F, static_cast<i64>(i * p.v), p.u));
        for (u64 j = 0; j < p.t; ++j) B.pieces.push_back(make_coset(F, static_cast<i64>(j * p.u), p.v));
        for (u64 k = 0; k < p.s_prime; ++k)
            C.pieces.push_back(make_coset(F, static_cast<i64>((2 * k + 1) * (p.v / 2)), p.u));
        A.include_zero = p.family != Family::Thm4;
        break;
    default:
        for (u64 i = 0; i < p.s; ++i) A.pieces.push_back(make_coset(F, static_cast<i64>(i * p.v), p.u));
        for (u64 j = 0; j < p.t; ++j) B.pieces.push_back(make_coset(F, static_cast<i64>(j * p.w), p.v));
        for (u64 k = 0; k < p.f; ++k) C.pieces.push_back(make_coset(F, static_cast<i64>(k * p.u), p.w));
        A.include_zero = p.family == Family::Cor3;
        break;
    }
    fam.structure = {A, B, C};
    for (const auto& c : fam.structure) fam.subsets.push_back(materialize(F, c));
    return fam;
}

EvalSet build(const Field& F, const ConstructionParams& p, const BuildOptions& opts) {
    auto rep = validate(F.r(), p);
    if (!rep.ok())
        fail(ErrorKind::Validation, std::string(family_tag(p.family)) + " hypotheses fail: " + rep.failures());
    EvalSet S = combine(construction_family(F, p));
    S.params = p;
    const Shape sh = stated_shape(F.r(), p);
    const i64 got = static_cast<i64>(S.elements.size());
    if (got != sh.set_size) {
        std::string msg = "set size " + std::to_string(got) + " differs from the stated " +
                          std::to_string(sh.set_size);
        if (p.family == Family::Thm3)
            msg += " (combined-set closed form (s+1)l+(l1+l2)(r+1)+1-4*l2 = " +
                   std::to_string(thm3_combined_size(F.r(), p)) + ")";
        if (!opts.allow_size_mismatch) fail(ErrorKind::Verification, msg);
        S.notes.push_back(msg);
    }
    if (p.family == Family::Cor1 && F.r() == 19 && p.u == 20 && p.v == 18 && p.s == 2 && p.s_prime == 10 &&
        p.t == 1)
        S.notes.push_back("published example value for these parameters is 314; the length formula gives " +
                          std::to_string(sh.code_length));
    return S;
}

void write_evalset(const Field& F, const EvalSet& S, std::ostream& os) {
    os << "q=" << F.q() << " construction=" << S.tag()
       << " params=" << (S.params ? S.params->to_string() : std::string()) << " modulus=" << F.modulus_string()
       << "\n";
    for (Elem e : S.elements) os << e << "\n";
}

EvalSet read_evalset(const Field& F, std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) fail(ErrorKind::Malformed, "empty evaluation-set file");
    std::map<std::string, std::string> kv;
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) fail(ErrorKind::Malformed, "bad header token: " + tok);
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    for (const char* key : {"q", "construction", "params", "modulus"})
        if (!kv.count(key)) fail(ErrorKind::Malformed, std::string("header lacks ") + key);
    if (kv["q"] != std::to_string(F.q())) fail(ErrorKind::Malformed, "field size mismatch");
    if (kv["modulus"] != F.modulus_string()) fail(ErrorKind::Malformed, "modulus mismatch");

    EvalSet S;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line.find_first_not_of("0123456789") != std::string::npos)
            fail(ErrorKind::Malformed, "bad element line: " + line);
        u64 e = std::stoull(line);
        if (e >= F.q()) fail(ErrorKind::Malformed, "element out of range: " + line);
        if (!S.elements.empty() && e <= S.elements.back()) fail(ErrorKind::Malformed, "elements not strictly ascending");
        S.elements.push_back(static_cast<Elem>(e));
    }
    if (kv["construction"] != "custom") {
        auto fam = family_from_tag(kv["construction"]);
        if (!fam) fail(ErrorKind::Malformed, "unknown construction " + kv["construction"]);
        ConstructionParams p;
        try {
            p = ConstructionParams::parse(*fam, kv["params"]);
        } catch (const Error& e) {
            fail(ErrorKind::Malformed, e.what());
        }
        EvalSet rebuilt = combine(construction_family(F, p));
        if (rebuilt.elements != S.elements) fail(ErrorKind::Malformed, "elements disagree with the recorded construction");
        rebuilt.params = p;
        return rebuilt;
    }
    return S;
}

}
