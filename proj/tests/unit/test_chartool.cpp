#include <gtest/gtest.h>

#include <sstream>

#include "grssd/chartool.hpp"
#include "grssd/error.hpp"
#include "json.hpp"

using namespace grssd;

namespace {

ConstructionParams P(const char* tag, const char* kv) { return ConstructionParams::parse(*family_from_tag(tag), kv); }

}

TEST(Chartool, BruteProductsOnSmallSet) {
    Field F(7, 1);
    std::vector<Elem> S{0, 1, 2};
    // pi(x) = x(x-1)(x-2) evaluated at 3 is 6
    EXPECT_EQ(pi_brute(F, S, 3), F.from_int(6));
    EXPECT_EQ(pi_brute(F, S, 2), 0u);
    EXPECT_EQ(delta_brute(F, S, 0), F.from_int(2));
    EXPECT_EQ(delta_brute(F, S, 1), F.minus_one());
    EXPECT_EQ(delta_brute(F, {5}, 5), 1u);
}

TEST(Chartool, FactoredDeltaMatchesBruteOnConstructions) {
    Field F(19, 1);
    for (auto [tag, kv] : std::vector<std::pair<const char*, const char*>>{
             {"thm4", "u=20,v=18,s=9,s_prime=10,t=2"},
             {"cor1", "u=20,v=18,s=2,s_prime=10,t=1"},
             {"thm5", "u=20,v=36,s=2,s_prime=4,t=7"},
             {"thm2", "l=18,s=0,l1=3,l2=2"},
             {"thm3", "l=6,s=2,l1=0,l2=2"}}) {
        BuildOptions o;
        o.allow_size_mismatch = true;
        EvalSet S = build(F, P(tag, kv), o);
        ASSERT_TRUE(has_structure(S.family)) << tag;
        FactoredDelta fd(F, S.family);
        for (Elem e : S.elements) ASSERT_EQ(fd.delta(e), delta_brute(F, S.elements, e)) << tag << " " << e;
    }
}

TEST(Chartool, CharacterReportOnExampleTwo) {
    Field F(19, 1);
    EvalSet S = build(F, P("thm4", "u=20,v=18,s=9,s_prime=10,t=2"));
    auto rep = character_report(F, S);
    EXPECT_EQ(rep.method, DeltaMethod::Factored);
    EXPECT_TRUE(rep.uniform);
    EXPECT_EQ(rep.elements.size(), 310u);
    EXPECT_GT(rep.brute_checked, 0u);
    EXPECT_EQ(rep.plus_count + rep.minus_count, 310u);
    for (size_t i = 0; i < rep.elements.size(); ++i) EXPECT_EQ(rep.eta[i], F.eta(rep.delta[i]));
}

TEST(Chartool, ExampleOneSetIsNotUniform) {
    Field F(19, 1);
    BuildOptions o;
    o.allow_size_mismatch = true;
    EvalSet S = build(F, P("thm3", "l=18,s=0,l1=8,l2=6"), o);
    auto rep = character_report(F, S);
    EXPECT_FALSE(rep.uniform);
    EXPECT_EQ(rep.common, 0);
}

TEST(Chartool, InjectedSignErrorIsCaughtByBruteSample) {
    Field F(19, 1);
    EvalSet S = build(F, P("thm4", "u=20,v=18,s=9,s_prime=10,t=2"));
    CharacterOptions o;
    o.inject_sign_error = true;
    EXPECT_THROW(character_report(F, S, o), Error);
}

TEST(Chartool, UnstructuredSetsUseBrute) {
    Field F(7, 1);
    SubsetFamily fam;
    fam.subsets = {{1, 2, 3, 9}};
    EvalSet S = combine(fam);
    auto rep = character_report(F, S);
    EXPECT_EQ(rep.method, DeltaMethod::Brute);
    for (size_t i = 0; i < S.elements.size(); ++i) EXPECT_EQ(rep.delta[i], delta_brute(F, S.elements, S.elements[i]));
}

TEST(Chartool, Theorem1OnBuiltFamilies) {
    Field F(19, 1);
    for (auto [tag, kv] : std::vector<std::pair<const char*, const char*>>{
             {"thm4", "u=20,v=18,s=9,s_prime=10,t=2"}, {"thm5", "u=20,v=36,s=2,s_prime=4,t=7"}}) {
        auto fam = construction_family(F, P(tag, kv));
        bool any = false;
        for (int c : {1, -1}) {
            auto t = theorem1_check(F, fam, c);
            if (t.hypothesis) {
                any = true;
                EXPECT_TRUE(t.conclusion) << tag;
            }
        }
        EXPECT_TRUE(any) << tag;
    }
}

TEST(Chartool, JsonLinesDump) {
    Field F(7, 1);
    EvalSet S = build(F, P("thm2", "l=6,s=0,l1=1,l2=0"));
    auto rep = character_report(F, S);
    std::stringstream ss;
    write_character_jsonl(rep, ss);
    std::string line;
    size_t rows = 0;
    while (std::getline(ss, line)) {
        auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["element"].get<Elem>(), rep.elements[rows]);
        EXPECT_EQ(j["eta"].get<int>(), rep.eta[rows]);
        ++rows;
    }
    EXPECT_EQ(rows, S.elements.size());
}
