#include "grssd/cosets.hpp"

#include <algorithm>
#include <string>

#include "grssd/error.hpp"

namespace grssd {

Coset make_coset(const Field& F, i64 offset, u64 step) {
    if (!divides(step, F.order()))
        fail(ErrorKind::InvalidArgument, "coset step " + std::to_string(step) + " does not divide q-1");
    return Coset{mod_floor(offset, step), step, F.order()};
}

Coset subgroup_of_size(const Field& F, u64 l) {
    if (!divides(l, F.order()))
        fail(ErrorKind::InvalidArgument, "subgroup size " + std::to_string(l) + " does not divide q-1");
    return make_coset(F, 0, F.order() / l);
}

Coset h_coset(const Field& F, u64 l, u64 s, u64 k) {
    const u64 r = F.r();
    if (!divides(l, r - 1)) fail(ErrorKind::InvalidArgument, "l must divide r-1");
    if (s % 2 != 0 || s + 1 > (r - 1) / l) fail(ErrorKind::InvalidArgument, "s must be even with s <= (r-1)/l - 1");
    if (k > s) fail(ErrorKind::InvalidArgument, "coset index k exceeds s");
    i64 offset = 0;
    const i64 b = static_cast<i64>(r + 1);
    if (k >= 1 && k <= s / 2) offset = static_cast<i64>(k) * b;
    else if (k > s / 2) offset = -static_cast<i64>(k - s / 2) * b;
    return make_coset(F, offset, F.order() / l);
}

Coset norm_fiber(const Field& F, u64 l, u64 i) {
    const u64 r = F.r();
    if (!divides(l, r - 1)) fail(ErrorKind::InvalidArgument, "l must divide r-1");
    if (i >= l) fail(ErrorKind::InvalidArgument, "fiber index must be below l");
    return make_coset(F, static_cast<i64>(i * ((r - 1) / l)), r - 1);
}

std::vector<Elem> fiber_field_intersection(const Field& F, u64 l, u64 i) {
    const u64 r = F.r();
    if (l % 2 != 0 || !divides(l, r - 1) || r % 4 != 3)
        fail(ErrorKind::InvalidArgument, "requires l even, l | r-1 and r = 3 mod 4");
    Coset subfield = make_coset(F, 0, r + 1);
    auto c = intersect(norm_fiber(F, l, i), subfield);
    if (!c) return {};
    return materialize(F, *c);
}

bool contains(const Field& F, const Coset& c, Elem x) {
    return x != 0 && c.contains_log(F.log(x));
}

bool contains(const Field& F, const CosetUnion& u, Elem x) {
    if (x == 0) return u.include_zero;
    u64 e = F.log(x);
    for (const auto& c : u.pieces)
        if (c.contains_log(e)) return true;
    return false;
}

Elem pi_at(const Field& F, const Coset& c, Elem x) {
    const u64 n = c.size();
    return F.sub(F.pow(x, static_cast<i64>(n)), F.exp(mul_mod(c.offset, n, F.order())));
}

Elem delta_at(const Field& F, const Coset& c, Elem x) {
    if (!contains(F, c, x)) fail(ErrorKind::InvalidArgument, "delta of a coset at a non-member");
    const u64 n = c.size();
    return F.mul(F.from_int(static_cast<i64>(n % F.p())), F.pow(x, static_cast<i64>(n - 1)));
}

Elem pi_at(const Field& F, const CosetUnion& u, Elem x) {
    Elem acc = u.include_zero ? x : 1;
    for (const auto& c : u.pieces) acc = F.mul(acc, pi_at(F, c, x));
    return acc;
}

Elem delta_at(const Field& F, const CosetUnion& u, Elem x) {
    if (x == 0) {
        if (!u.include_zero) fail(ErrorKind::InvalidArgument, "delta of a coset union at a non-member");
        Elem acc = 1;
        for (const auto& c : u.pieces) acc = F.mul(acc, pi_at(F, c, x));
        return acc;
    }
    const u64 e = F.log(x);
    Elem acc = u.include_zero ? x : 1;
    bool found = false;
    for (const auto& c : u.pieces) {
        if (!found && c.contains_log(e)) {
            acc = F.mul(acc, delta_at(F, c, x));
            found = true;
        } else {
            acc = F.mul(acc, pi_at(F, c, x));
        }
    }
    if (!found) fail(ErrorKind::InvalidArgument, "delta of a coset union at a non-member");
    return acc;
}

std::vector<Elem> materialize(const Field& F, const Coset& c) {
    std::vector<Elem> out;
    out.reserve(c.size());
    for (u64 e = c.offset; e < c.order; e += c.step) out.push_back(F.exp(e));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Elem> materialize(const Field& F, const CosetUnion& u) {
    std::vector<Elem> out;
    if (u.include_zero) out.push_back(0);
    for (const auto& c : u.pieces)
        for (u64 e = c.offset; e < c.order; e += c.step) out.push_back(F.exp(e));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Coset> intersect(const Coset& a, const Coset& b) {
    if (a.order != b.order) fail(ErrorKind::InvalidArgument, "cosets from different fields");
    auto sol = crt(a.offset, a.step, b.offset, b.step);
    if (!sol) return std::nullopt;
    return Coset{sol->first % sol->second, sol->second, a.order};
}

CosetUnion intersect(const CosetUnion& a, const CosetUnion& b) {
    CosetUnion out;
    out.include_zero = a.include_zero && b.include_zero;
    for (const auto& x : a.pieces)
        for (const auto& y : b.pieces)
            if (auto c = intersect(x, y)) out.pieces.push_back(*c);
    return out;
}

bool pieces_disjoint(const CosetUnion& u) {
    for (size_t i = 0; i < u.pieces.size(); ++i)
        for (size_t j = i + 1; j < u.pieces.size(); ++j)
            if (intersect(u.pieces[i], u.pieces[j])) return false;
    return true;
}

u64 intersection_card2(u64 order, u64 u, u64 v, u64 s, u64 t) {
    return order / std::lcm(u, v) * s * t;
}

IntersectionCounts intersection_card3(u64 order, u64 u, u64 v, u64 w, u64 s, u64 t, u64 f) {
    if (!divides(u, order) || !divides(v, order) || !divides(w, order))
        fail(ErrorKind::InvalidArgument, "u, v, w must divide q-1");
    const u64 g = gcd3(u, v, w);
    auto prime = [g](u64 x, u64 d) -> u64 { return x == 0 ? 0 : (x - 1) * g / d + 1; };
    IntersectionCounts c;
    c.s_prime = prime(s, std::gcd(w, u));
    c.t_prime = prime(t, std::gcd(u, v));
    c.f_prime = prime(f, std::gcd(v, w));
    c.ab = order / std::lcm(u, v) * s * c.t_prime;
    c.bc = order / std::lcm(v, w) * t * c.f_prime;
    c.ca = order / std::lcm(w, u) * f * c.s_prime;
    c.abc = order / lcm3(u, v, w) * c.s_prime * c.t_prime * c.f_prime;
    return c;
}

}
