#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grssd/numtheory.hpp"

namespace grssd {

// canonical encoding: sum of c_i p^i over the polynomial basis
using Elem = std::uint32_t;

struct FieldParams {
    u64 p = 0;
    u64 m = 0;
};

// GF(p^(2m)) with theta the class of x modulo the smallest primitive polynomial.
class Field {
public:
    static constexpr u64 kQCap = u64{1} << 26;

    explicit Field(FieldParams params, u64 q_cap = kQCap);
    Field(u64 p, u64 m) : Field(FieldParams{p, m}) {}

    u64 p() const { return p_; }
    u64 m() const { return m_; }
    u64 degree() const { return deg_; }
    u64 r() const { return r_; }
    u64 q() const { return q_; }
    u64 order() const { return q_ - 1; }

    // c0, c1, ..., c_{2m} (monic)
    const std::vector<u64>& modulus() const { return modulus_; }
    std::string modulus_string() const;

    Elem exp(u64 i) const { return exp_[i % (q_ - 1)]; }
    Elem exp_signed(i64 i) const { return exp_[mod_floor(i, q_ - 1)]; }
    u64 log(Elem a) const;
    u64 log_unchecked(Elem a) const { return log_[a]; }
    bool contains(Elem a) const { return a < q_; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem div(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem pow(Elem a, i64 e) const;
    Elem from_int(i64 n) const;
    Elem minus_one() const { return exp((q_ - 1) / 2); }

    int eta(Elem a) const;
    std::optional<std::pair<Elem, Elem>> sqrt(Elem a) const;
    Elem norm(Elem a) const;

    std::vector<u64> digits(Elem a) const;
    Elem from_digits(const std::vector<u64>& d) const;

private:
    u64 p_, m_, deg_, r_, q_;
    std::vector<u64> modulus_;
    std::vector<Elem> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<u64> pw_;
};

}
