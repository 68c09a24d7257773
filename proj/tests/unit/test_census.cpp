#include <gtest/gtest.h>

#include <set>

#include "grssd/census.hpp"
#include "grssd/error.hpp"
#include "json.hpp"

using namespace grssd;

namespace {

// lengths per class from validate() and stated_shape() over the raw parameter box
std::array<std::set<u64>, 8> oracle_lengths(u64 r, bool class2_as_stated) {
    std::array<std::set<u64>, 8> out;
    const u64 q = r * r, order = q - 1;
    auto keep = [&](int cls, i64 len) {
        if (len >= 2 && len <= static_cast<i64>(q + 1) && len % 2 == 0) out[cls - 1].insert(static_cast<u64>(len));
    };
    for (int cls : {1, 2}) {
        for (u64 l = 1; l <= r - 1; ++l)
            for (u64 s = 0; s <= r; ++s)
                for (u64 l1 = 0; l1 <= r; ++l1)
                    for (u64 l2 = 0; l2 <= r; ++l2) {
                        ConstructionParams p;
                        p.family = family_of_class(cls);
                        p.l = l, p.s = s, p.l1 = l1, p.l2 = l2;
                        if (!validate(r, p).ok()) continue;
                        if (cls == 2 && !class2_as_stated) {
                            if (l1 == 0) keep(cls, thm3_combined_size(r, p) + 1);
                        } else {
                            keep(cls, stated_shape(r, p).code_length);
                        }
                    }
    }
    const auto divs = divisors(order);
    for (int cls : {3, 4, 5})
        for (u64 u : divs)
            for (u64 v : divs) {
                const u64 g = std::gcd(u, v);
                for (u64 s = 0; s <= u / g; ++s)
                    for (u64 sp = 0; sp <= u / g; ++sp)
                        for (u64 t = 0; t <= v / g; ++t) {
                            ConstructionParams p;
                            p.family = family_of_class(cls);
                            p.u = u, p.v = v, p.s = s, p.s_prime = sp, p.t = t;
                            if (validate(r, p).ok()) keep(cls, stated_shape(r, p).code_length);
                        }
            }
    for (int cls : {6, 7, 8})
        for (u64 u : divs)
            for (u64 v : divs)
                for (u64 w : divs)
                    for (u64 s = 0; s <= u / std::gcd(u, v); ++s)
                        for (u64 t = 0; t <= v / std::gcd(v, w); ++t)
                            for (u64 f = 0; f <= w / std::gcd(w, u); ++f) {
                                ConstructionParams p;
                                p.family = family_of_class(cls);
                                p.u = u, p.v = v, p.w = w, p.s = s, p.t = t, p.f = f;
                                if (validate(r, p).ok()) keep(cls, stated_shape(r, p).code_length);
                            }
    return out;
}

void expect_matches_oracle(u64 r, bool as_stated) {
    CensusOptions o;
    o.class2_as_stated = as_stated;
    auto c = run_census(r, o);
    auto want = oracle_lengths(r, as_stated);
    for (int cls = 1; cls <= 8; ++cls) {
        std::set<u64> got;
        for (u64 len = 0; len < c.mask.size(); ++len)
            if (c.mask[len] >> (cls - 1) & 1) got.insert(len);
        EXPECT_EQ(got, want[cls - 1]) << "r=" << r << " class " << cls;
    }
}

}

TEST(Census, MatchesValidatorOracleSmallFields) {
    for (u64 r : {3u, 7u, 11u}) {
        expect_matches_oracle(r, true);
        expect_matches_oracle(r, false);
    }
}

TEST(Census, WitnessesReproduceTheirLengths) {
    auto c = run_census(19);
    EXPECT_EQ(c.modulus, "2,1,1");
    for (u64 len : c.lengths()) {
        for (int cls = 1; cls <= 8; ++cls) {
            const auto& w = c.witnesses[len][cls - 1];
            EXPECT_EQ(w.has_value(), (c.mask[len] >> (cls - 1) & 1) != 0);
            if (!w) continue;
            EXPECT_TRUE(validate(19, *w).ok());
            EXPECT_EQ(stated_shape(19, *w).code_length, static_cast<i64>(len));
        }
    }
    auto pc = c.per_class();
    u64 sum = 0;
    for (auto x : pc) sum += x;
    EXPECT_EQ(sum, c.count());
}

TEST(Census, TableTwoRatio) {
    auto c = run_census(151);
    EXPECT_NEAR(c.ratio() * 100.0, 85.1, 1.0);
}

TEST(Census, DeterministicAcrossThreadCounts) {
    CensusOptions a, b;
    a.threads = 1;
    b.threads = 7;
    EXPECT_EQ(census_csv(run_census(23, a)), census_csv(run_census(23, b)));
}

TEST(Census, CsvRoundTrip) {
    CensusOptions o;
    o.classes = {1, 2};
    auto c = run_census(19, o);
    std::string text = census_csv(c);
    auto back = parse_census_csv(text);
    EXPECT_EQ(census_csv(back), text);
    EXPECT_EQ(back.count(), c.count());

    CensusOptions k;
    k.class2_as_stated = false;
    auto cons = run_census(19, k);
    EXPECT_EQ(census_csv(parse_census_csv(census_csv(cons))), census_csv(cons));
}

TEST(Census, CsvRejectsInconsistentRows) {
    CensusOptions o;
    o.classes = {3};
    std::string text = census_csv(run_census(19, o));
    auto pos = text.find("\n", text.find("witnessParams")) + 1;
    std::string row = text.substr(pos, text.find('\n', pos) - pos);
    std::string bad = text;
    bad.replace(pos, row.size(), "4" + row);
    EXPECT_THROW(parse_census_csv(bad), Error);
    EXPECT_THROW(parse_census_csv("length,classId,witnessParams\n"), Error);
}

TEST(Census, SummaryJson) {
    auto c = run_census(19);
    auto j = nlohmann::json::parse(census_summary_json(c));
    EXPECT_EQ(j["r"].get<u64>(), 19u);
    EXPECT_EQ(j["N"].get<u64>(), c.count());
    EXPECT_NEAR(j["ratio"].get<double>(), c.ratio(), 1e-12);
    EXPECT_EQ(j["perClass"].size(), 8u);
}

TEST(Census, RejectsBadFields) {
    EXPECT_THROW(run_census(13), Error);
    EXPECT_THROW(run_census(9), Error);
    EXPECT_THROW(run_census(15), Error);
    EXPECT_NO_THROW(run_census(27));
    CensusOptions o;
    o.classes = {9};
    EXPECT_THROW(run_census(19, o), Error);
}

TEST(Census, BudgetGuard) {
    CensusOptions o;
    o.budget = 1000;
    EXPECT_THROW(run_census(151, o), Error);
}

TEST(Census, SpotVerifyConstructiveLengths) {
    CensusOptions o;
    o.class2_as_stated = false;
    auto c = run_census(7, o);
    Field F(7, 1);
    auto res = spot_verify(F, c, 1000, 5);
    EXPECT_EQ(res.size(), c.count());
    for (const auto& r : res) EXPECT_TRUE(r.ok) << r.length << " " << r.detail;
}
