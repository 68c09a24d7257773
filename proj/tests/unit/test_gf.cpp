#include <gtest/gtest.h>

#include <random>
#include <set>

#include "grssd/error.hpp"
#include "grssd/gf.hpp"
#include "oracle.hpp"

using namespace grssd;

namespace {

// smallest monic primitive polynomial by exhaustive search, c0 most significant
std::vector<u64> brute_modulus(u64 p, u64 d) {
    u64 q = 1;
    for (u64 i = 0; i < d; ++i) q *= p;
    for (u64 idx = 0; idx < q; ++idx) {
        oracle::Poly f(d + 1, 0);
        u64 rest = idx;
        for (u64 i = d; i-- > 0;) {
            f[i] = rest % p;
            rest /= p;
        }
        f[d] = 1;
        if (f[0] == 0) continue;
        if (oracle::order_of_x(f, p, q) == q - 1) return f;
    }
    return {};
}

}

TEST(Gf, ModulusOfGf361) {
    Field F(19, 1);
    EXPECT_EQ(F.q(), 361u);
    EXPECT_EQ(F.r(), 19u);
    EXPECT_EQ(F.modulus_string(), "2,1,1");
}

TEST(Gf, ModulusMatchesExhaustiveSearch) {
    for (auto [p, m] : std::vector<std::pair<u64, u64>>{{3, 1}, {7, 1}, {11, 1}, {19, 1}, {3, 2}, {5, 1}}) {
        Field F(p, m);
        EXPECT_EQ(F.modulus(), brute_modulus(p, 2 * m)) << "p=" << p << " m=" << m;
    }
}

TEST(Gf, MultiplicationAgreesWithPolynomialOracle) {
    for (auto [p, m] : std::vector<std::pair<u64, u64>>{{7, 1}, {3, 2}}) {
        Field F(p, m);
        for (Elem a = 0; a < F.q(); ++a)
            for (Elem b = 0; b < F.q(); ++b)
                ASSERT_EQ(F.mul(a, b), oracle::mul(a, b, F.modulus(), p));
    }
    Field F(19, 1);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20000; ++i) {
        Elem a = rng() % F.q(), b = rng() % F.q();
        ASSERT_EQ(F.mul(a, b), oracle::mul(a, b, F.modulus(), 19));
    }
}

TEST(Gf, AdditiveStructure) {
    Field F(3, 3);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 5000; ++i) {
        Elem a = rng() % F.q(), b = rng() % F.q();
        auto da = F.digits(a), db = F.digits(b), ds = F.digits(F.add(a, b));
        for (size_t j = 0; j < da.size(); ++j) ASSERT_EQ(ds[j], (da[j] + db[j]) % 3);
        ASSERT_EQ(F.sub(F.add(a, b), b), a);
        ASSERT_EQ(F.add(a, F.neg(a)), 0u);
        ASSERT_EQ(F.from_digits(da), a);
    }
}

TEST(Gf, ExpLogAndInverse) {
    Field F(19, 1);
    std::set<Elem> seen;
    for (u64 i = 0; i < F.order(); ++i) {
        Elem x = F.exp(i);
        EXPECT_TRUE(seen.insert(x).second);
        EXPECT_EQ(F.log(x), i);
    }
    EXPECT_EQ(seen.size(), F.order());
    for (Elem a = 1; a < F.q(); ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
    EXPECT_THROW(F.log(0), Error);
    EXPECT_THROW(F.inv(0), Error);
}

TEST(Gf, PowMatchesRepeatedMultiplication) {
    Field F(7, 1);
    for (Elem a = 1; a < F.q(); ++a)
        for (i64 e = 0; e < 60; ++e) ASSERT_EQ(F.pow(a, e), oracle::pow(a, e, F.modulus(), 7));
    EXPECT_EQ(F.pow(0, 0), 1u);
    EXPECT_EQ(F.pow(0, 5), 0u);
    EXPECT_EQ(F.mul(F.pow(3, -1), 3), 1u);
}

TEST(Gf, EtaMatchesEulerCriterion) {
    for (auto [p, m] : std::vector<std::pair<u64, u64>>{{7, 1}, {19, 1}, {3, 3}}) {
        Field F(p, m);
        for (Elem a = 1; a < F.q(); ++a) {
            const Elem e = F.pow(a, static_cast<i64>(F.order() / 2));
            ASSERT_EQ(F.eta(a), e == 1 ? 1 : -1);
        }
        EXPECT_THROW(F.eta(0), Error);
    }
}

TEST(Gf, EtaOfMinusOneIsOneWhenRIsThreeModFour) {
    for (u64 r : {3u, 7u, 11u, 19u, 23u, 151u}) {
        Field F(r, 1);
        EXPECT_EQ(F.eta(F.minus_one()), 1) << r;
    }
}

TEST(Gf, SquareRoots) {
    Field F(19, 1);
    for (Elem a = 0; a < F.q(); ++a) {
        auto s = F.sqrt(a);
        if (a == 0) {
            ASSERT_TRUE(s);
            EXPECT_EQ(s->first, 0u);
            continue;
        }
        ASSERT_EQ(s.has_value(), F.eta(a) == 1);
        if (s) {
            EXPECT_EQ(F.mul(s->first, s->first), a);
            EXPECT_EQ(F.mul(s->second, s->second), a);
            EXPECT_EQ(F.add(s->first, s->second), 0u);
        }
    }
}

TEST(Gf, NormLandsInSubfield) {
    Field F(19, 1);
    std::set<Elem> image;
    for (Elem a = 1; a < F.q(); ++a) {
        Elem n = F.norm(a);
        EXPECT_EQ(n, F.pow(a, 20));
        EXPECT_EQ(F.pow(n, 19), n);
        image.insert(n);
    }
    EXPECT_EQ(image.size(), 18u);
}

TEST(Gf, FromIntReducesModP) {
    Field F(19, 1);
    EXPECT_EQ(F.from_int(20), 1u);
    EXPECT_EQ(F.from_int(-1), F.minus_one());
    EXPECT_EQ(F.from_int(19), 0u);
}

TEST(Gf, RejectsBadParameters) {
    EXPECT_THROW(Field(4, 1), Error);
    EXPECT_THROW(Field(2, 1), Error);
    EXPECT_THROW(Field(7, 0), Error);
    EXPECT_THROW(Field(FieldParams{19, 1}, 100), Error);
    EXPECT_NO_THROW(Field(151, 1));
}
