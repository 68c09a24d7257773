#include "grssd/gf.hpp"

#include <sstream>

#include "grssd/error.hpp"

namespace grssd {

namespace {

using Poly = std::vector<u64>;

// a * b mod f, all of length deg, f monic of degree deg given by low coefficients
Poly mulmod(const Poly& a, const Poly& b, const Poly& low, u64 p) {
    size_t d = low.size();
    std::vector<u64> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    for (size_t k = prod.size(); k-- > d;) {
        u64 c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (size_t i = 0; i < d; ++i) prod[k - d + i] = (prod[k - d + i] + (p - low[i]) * c) % p;
    }
    prod.resize(d);
    return prod;
}

Poly powmod_x(u64 e, const Poly& low, u64 p) {
    size_t d = low.size();
    Poly result(d, 0), base(d, 0);
    result[0] = 1;
    if (d == 1) base[0] = (p - low[0]) % p;
    else base[1] = 1;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, low, p);
        base = mulmod(base, base, low, p);
        e >>= 1;
    }
    return result;
}

bool is_one(const Poly& a) {
    if (a[0] != 1) return false;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i] != 0) return false;
    return true;
}

bool x_is_primitive(const Poly& low, u64 p, u64 order, const std::vector<u64>& primes) {
    if (low[0] == 0) return false;
    if (!is_one(powmod_x(order, low, p))) return false;
    for (u64 l : primes)
        if (is_one(powmod_x(order / l, low, p))) return false;
    return true;
}

}

Field::Field(FieldParams params, u64 q_cap) : p_(params.p), m_(params.m) {
    if (p_ < 3 || !is_prime(p_)) fail(ErrorKind::InvalidArgument, "p must be an odd prime, got " + std::to_string(p_));
    if (m_ < 1) fail(ErrorKind::InvalidArgument, "m must be positive");
    deg_ = 2 * m_;
    u64 q = 1;
    for (u64 i = 0; i < deg_; ++i) {
        q *= p_;
        if (q > q_cap) fail(ErrorKind::InvalidArgument, "field size p^(2m) exceeds cap " + std::to_string(q_cap));
    }
    q_ = q;
    r_ = 1;
    for (u64 i = 0; i < m_; ++i) r_ *= p_;

    pw_.resize(deg_ + 1);
    pw_[0] = 1;
    for (u64 i = 1; i <= deg_; ++i) pw_[i] = pw_[i - 1] * p_;

    const u64 order = q_ - 1;
    const auto primes = prime_factors(order);
    Poly low(deg_, 0);
    bool found = false;
    // c0 is the most significant coordinate of the lexicographic order
    for (u64 idx = 0; idx < q_ && !found; ++idx) {
        u64 rest = idx;
        for (u64 i = deg_; i-- > 0;) {
            low[i] = rest % p_;
            rest /= p_;
        }
        found = x_is_primitive(low, p_, order, primes);
    }
    if (!found) fail(ErrorKind::Internal, "no primitive polynomial found");
    modulus_ = low;
    modulus_.push_back(1);

    exp_.assign(order, 0);
    log_.assign(q_, 0);
    std::vector<bool> seen(q_, false);
    Poly cur(deg_, 0);
    cur[0] = 1;
    for (u64 i = 0; i < order; ++i) {
        Elem e = from_digits(cur);
        if (seen[e]) fail(ErrorKind::Internal, "exp table is not a bijection");
        seen[e] = true;
        exp_[i] = e;
        log_[e] = static_cast<std::uint32_t>(i);
        u64 top = cur[deg_ - 1];
        for (u64 k = deg_ - 1; k > 0; --k) cur[k] = (cur[k - 1] + (p_ - low[k]) * top) % p_;
        cur[0] = ((p_ - low[0]) * top) % p_;
    }
    if (!is_one(cur)) fail(ErrorKind::Internal, "theta does not have order q-1");
}

std::string Field::modulus_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    return os.str();
}

u64 Field::log(Elem a) const {
    if (a == 0 || a >= q_) fail(ErrorKind::InvalidArgument, "log of zero or out-of-range element");
    return log_[a];
}

Elem Field::add(Elem a, Elem b) const {
    u64 res = 0, pw = 1;
    while (a | b) {
        u64 d = a % p_ + b % p_;
        if (d >= p_) d -= p_;
        res += d * pw;
        pw *= p_;
        a /= static_cast<Elem>(p_);
        b /= static_cast<Elem>(p_);
    }
    return static_cast<Elem>(res);
}

Elem Field::sub(Elem a, Elem b) const {
    u64 res = 0, pw = 1;
    while (a | b) {
        u64 d = a % p_ + p_ - b % p_;
        if (d >= p_) d -= p_;
        res += d * pw;
        pw *= p_;
        a /= static_cast<Elem>(p_);
        b /= static_cast<Elem>(p_);
    }
    return static_cast<Elem>(res);
}

Elem Field::neg(Elem a) const { return sub(0, a); }

Elem Field::mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    u64 s = u64{log_[a]} + log_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_[s];
}

Elem Field::inv(Elem a) const {
    if (a == 0) fail(ErrorKind::InvalidArgument, "inverse of zero");
    u64 l = log_[a];
    return exp_[l == 0 ? 0 : q_ - 1 - l];
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, i64 e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return 1;
        fail(ErrorKind::InvalidArgument, "negative power of zero");
    }
    u64 em = mod_floor(e, q_ - 1);
    return exp_[mul_mod(log_[a], em, q_ - 1)];
}

Elem Field::from_int(i64 n) const { return static_cast<Elem>(mod_floor(n, p_)); }

int Field::eta(Elem a) const {
    if (a == 0) fail(ErrorKind::InvalidArgument, "quadratic character of zero");
    return log_[a] % 2 == 0 ? 1 : -1;
}

std::optional<std::pair<Elem, Elem>> Field::sqrt(Elem a) const {
    if (a == 0) return std::make_pair(Elem{0}, Elem{0});
    u64 l = log_[a];
    if (l % 2 != 0) return std::nullopt;
    Elem s = exp_[l / 2];
    return std::make_pair(s, neg(s));
}

Elem Field::norm(Elem a) const {
    if (a == 0) fail(ErrorKind::InvalidArgument, "norm of zero");
    return pow(a, static_cast<i64>(r_ + 1));
}

std::vector<u64> Field::digits(Elem a) const {
    std::vector<u64> d(deg_, 0);
    for (u64 i = 0; i < deg_; ++i) {
        d[i] = a % p_;
        a /= static_cast<Elem>(p_);
    }
    return d;
}

Elem Field::from_digits(const std::vector<u64>& d) const {
    u64 res = 0;
    for (u64 i = 0; i < d.size(); ++i) res += (d[i] % p_) * pw_[i];
    return static_cast<Elem>(res);
}

}
