#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace grssd {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 gcd3(u64 a, u64 b, u64 c) { return std::gcd(std::gcd(a, b), c); }
inline u64 lcm3(u64 a, u64 b, u64 c) { return std::lcm(std::lcm(a, b), c); }

inline bool divides(u64 d, u64 n) { return d != 0 && n % d == 0; }

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// distinct prime factors, ascending
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// all positive divisors, ascending
inline std::vector<u64> divisors(u64 n) {
    std::vector<u64> lo, hi;
    for (u64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            lo.push_back(d);
            if (d != n / d) hi.push_back(n / d);
        }
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

// r = p^m with p prime, or nullopt
inline std::optional<std::pair<u64, u64>> prime_power(u64 r) {
    if (r < 2) return std::nullopt;
    auto f = prime_factors(r);
    if (f.size() != 1) return std::nullopt;
    u64 m = 0;
    for (u64 x = r; x > 1; x /= f[0]) ++m;
    return std::make_pair(f[0], m);
}

inline u64 mod_floor(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

// inverse of a modulo m, requires gcd(a, m) = 1
inline u64 inv_mod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 qt = r / nr;
        t -= qt * nt; std::swap(t, nt);
        r -= qt * nr; std::swap(r, nr);
    }
    return mod_floor(t, m);
}

// x = a mod m1, x = b mod m2; returns (x, lcm) or nullopt
inline std::optional<std::pair<u64, u64>> crt(u64 a, u64 m1, u64 b, u64 m2) {
    u64 g = std::gcd(m1, m2);
    a %= m1;
    b %= m2;
    u64 diff = (b + m2 - a % m2) % m2;
    if (diff % g != 0) return std::nullopt;
    u64 l = m1 / g * m2;
    u64 m2g = m2 / g;
    u64 k = m2g == 1 ? 0 : mul_mod(diff / g, inv_mod((m1 / g) % m2g, m2g), m2g);
    return std::make_pair((a + m1 * k) % l, l);
}

// 2-adic valuation, n > 0
inline u64 two_adic(u64 n) {
    u64 v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    return v;
}

}
