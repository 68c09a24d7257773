#pragma once

#include <cstdint>
#include <vector>

// naive polynomial arithmetic over GF(p), independent of the table-driven field
namespace oracle {

using Poly = std::vector<std::uint64_t>;  // c0..c_{d-1}

inline Poly decode(std::uint64_t a, std::uint64_t p, std::size_t d) {
    Poly out(d);
    for (std::size_t i = 0; i < d; ++i) {
        out[i] = a % p;
        a /= p;
    }
    return out;
}

inline std::uint64_t encode(const Poly& c, std::uint64_t p) {
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
    return v;
}

// modulus given as c0..c_d with c_d = 1
inline Poly mulmod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p) {
    const std::size_t d = modulus.size() - 1;
    std::vector<std::uint64_t> prod(2 * d, 0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (std::size_t k = 2 * d - 1; k >= d; --k) {
        const std::uint64_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (std::size_t i = 0; i < d; ++i) prod[k - d + i] = (prod[k - d + i] + (p - c) * modulus[i] % p) % p;
    }
    return Poly(prod.begin(), prod.begin() + d);
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, const Poly& modulus, std::uint64_t p) {
    const std::size_t d = modulus.size() - 1;
    return encode(mulmod(decode(a, p, d), decode(b, p, d), modulus, p), p);
}

inline std::uint64_t pow(std::uint64_t a, std::uint64_t e, const Poly& modulus, std::uint64_t p) {
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < e; ++i) acc = mul(acc, a, modulus, p);
    return acc;
}

// multiplicative order of x by repeated multiplication; 0 if x is not invertible
inline std::uint64_t order_of_x(const Poly& modulus, std::uint64_t p, std::uint64_t q) {
    const std::size_t d = modulus.size() - 1;
    Poly x(d, 0);
    if (d == 1) x[0] = (p - modulus[0]) % p;
    else x[1] = 1;
    Poly cur = x;
    Poly one(d, 0);
    one[0] = 1;
    for (std::uint64_t k = 1; k < q; ++k) {
        if (cur == one) return k;
        cur = mulmod(cur, x, modulus, p);
    }
    return 0;
}

}
