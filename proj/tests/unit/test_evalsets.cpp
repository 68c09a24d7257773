#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "grssd/error.hpp"
#include "grssd/evalsets.hpp"

using namespace grssd;

namespace {

ConstructionParams P(const char* tag, const char* kv) { return ConstructionParams::parse(*family_from_tag(tag), kv); }

// elements lying in an odd number of the given sets
std::vector<Elem> odd_members(const std::vector<std::vector<Elem>>& sets) {
    std::map<Elem, int> count;
    for (const auto& s : sets)
        for (Elem x : std::set<Elem>(s.begin(), s.end())) ++count[x];
    std::vector<Elem> out;
    for (auto [x, c] : count)
        if (c % 2 == 1) out.push_back(x);
    return out;
}

std::vector<Elem> coset_list(const Field& F, u64 offset, u64 step) {
    std::vector<Elem> out;
    for (u64 k = 0; k < F.order() / step; ++k) out.push_back(F.exp(offset + k * step));
    return out;
}

}

TEST(Evalsets, TagsAndClasses) {
    for (int c = 1; c <= 8; ++c) {
        Family f = family_of_class(c);
        EXPECT_EQ(class_id(f), c);
        EXPECT_EQ(family_from_tag(family_tag(f)), f);
    }
    EXPECT_FALSE(family_from_tag("thm7"));
}

TEST(Evalsets, ParamsRoundTrip) {
    auto p = P("thm4", "u=20,v=18,s=9,s_prime=10,t=2");
    EXPECT_EQ(p.u, 20u);
    EXPECT_EQ(p.s_prime, 10u);
    EXPECT_EQ(ConstructionParams::parse(p.family, p.to_string()), p);
    EXPECT_EQ(ConstructionParams::parse(p.family, p.to_string(';')), p);
    EXPECT_THROW(P("thm4", "u=20,v=18,s=9,t=2"), Error);
    EXPECT_THROW(P("thm4", "u=20,v=18,s=9,s_prime=10,t=2,l=3"), Error);
    EXPECT_THROW(P("thm2", "l=x,s=0,l1=1,l2=0"), Error);
}

TEST(Evalsets, StatedShapes) {
    EXPECT_EQ(stated_shape(19, P("thm3", "l=18,s=0,l1=8,l2=6")).code_length, 288);
    EXPECT_EQ(stated_shape(19, P("thm4", "u=20,v=18,s=9,s_prime=10,t=2")).code_length, 310);
    EXPECT_EQ(stated_shape(19, P("cor1", "u=20,v=18,s=2,s_prime=10,t=1")).code_length, 230);
    auto t5 = stated_shape(19, P("thm5", "u=20,v=36,s=2,s_prime=4,t=7"));
    EXPECT_EQ(t5.n, 122);
    EXPECT_EQ(t5.code_length, 124);
    EXPECT_TRUE(t5.extended);
    auto c3 = stated_shape(151, P("cor3", "u=152,v=2,w=20,s=11,t=1,f=2"));
    EXPECT_EQ(c3.set_size, 8191);
    EXPECT_EQ(c3.code_length, 8192);
    EXPECT_EQ(stated_shape(7, P("thm2", "l=6,s=0,l1=1,l2=0")).code_length, 10);
}

TEST(Evalsets, Validation) {
    EXPECT_TRUE(validate(19, P("thm4", "u=20,v=18,s=9,s_prime=10,t=2")).ok());
    EXPECT_TRUE(validate(151, P("cor3", "u=152,v=2,w=20,s=11,t=1,f=2")).ok());
    EXPECT_FALSE(validate(13, P("thm2", "l=6,s=0,l1=1,l2=0")).ok());
    EXPECT_FALSE(validate(19, P("thm4", "u=20,v=36,s=9,s_prime=10,t=2")).ok());
    EXPECT_FALSE(validate(19, P("thm4", "u=20,v=18,s=9,s_prime=11,t=2")).ok());
    EXPECT_FALSE(validate(19, P("thm2", "l=18,s=2,l1=1,l2=0")).ok());
    EXPECT_FALSE(validate(151, P("thm6", "u=164,v=2,w=108,s=3,t=1,f=13")).ok());
    auto bad = validate(19, P("thm4", "u=20,v=18,s=9,s_prime=11,t=2"));
    EXPECT_FALSE(bad.failures().empty());
}

TEST(Evalsets, CombineMatchesOddMembershipCount) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        SubsetFamily fam;
        const size_t n = 1 + rng() % 4;
        for (size_t i = 0; i < n; ++i) {
            std::vector<Elem> s;
            for (Elem x = 0; x < 30; ++x)
                if (rng() % 3 == 0) s.push_back(x);
            fam.subsets.push_back(s);
        }
        EvalSet S = combine(fam);
        EXPECT_EQ(S.elements, odd_members(fam.subsets));
        size_t total = 0;
        for (const auto& reg : S.pieces) {
            EXPECT_EQ(__builtin_popcountll(reg.mask) % 2, 1);
            total += reg.elements.size();
        }
        EXPECT_EQ(total, S.elements.size());
        if (n >= 2) EXPECT_TRUE(multiset_identity_check(fam));
    }
}

TEST(Evalsets, Theorem4SetMatchesDirectConstruction) {
    Field F(19, 1);
    auto p = P("thm4", "u=20,v=18,s=9,s_prime=10,t=2");
    std::vector<Elem> A, B, C;
    for (u64 i = 0; i < 9; ++i)
        for (Elem x : coset_list(F, i * 18, 20)) A.push_back(x);
    for (u64 j = 0; j < 2; ++j)
        for (Elem x : coset_list(F, j * 20, 18)) B.push_back(x);
    for (u64 k = 0; k < 10; ++k)
        for (Elem x : coset_list(F, (2 * k + 1) * 9, 20)) C.push_back(x);
    EvalSet S = build(F, p);
    EXPECT_EQ(S.elements, odd_members({A, B, C}));
    EXPECT_EQ(S.elements.size(), 310u);
}

TEST(Evalsets, Theorem2SetMatchesDirectConstruction) {
    Field F(7, 1);
    auto p = P("thm2", "l=6,s=0,l1=1,l2=0");
    std::vector<Elem> B{0};
    for (Elem x = 1; x < F.q(); ++x)
        if (F.norm(x) == F.exp(8)) B.push_back(x);
    EvalSet S = build(F, p);
    EXPECT_EQ(S.elements, odd_members({{}, B, {}}));
    EXPECT_EQ(S.elements.size(), 9u);
}

TEST(Evalsets, Corollary3LargeSet) {
    Field F(151, 1);
    EvalSet S = build(F, P("cor3", "u=152,v=2,w=20,s=11,t=1,f=2"));
    EXPECT_EQ(S.elements.size(), 8191u);
    EXPECT_TRUE(std::binary_search(S.elements.begin(), S.elements.end(), Elem{0}));
}

TEST(Evalsets, Theorem3ExampleSizeMismatch) {
    Field F(19, 1);
    auto p = P("thm3", "l=18,s=0,l1=8,l2=6");
    EXPECT_EQ(thm3_combined_size(19, p), 275);
    try {
        build(F, p);
        FAIL() << "expected a verification error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Verification);
        EXPECT_NE(std::string(e.what()).find("275"), std::string::npos);
    }
    BuildOptions o;
    o.allow_size_mismatch = true;
    EvalSet S = build(F, p, o);
    EXPECT_EQ(S.elements.size(), 275u);
    EXPECT_FALSE(S.notes.empty());
}

TEST(Evalsets, Theorem3CombinedSizeClosedForm) {
    Field F(19, 1);
    for (u64 l : {2u, 6u, 18u})
        for (u64 s = 0; s + 1 <= 18 / l; s += 2)
            for (u64 l1 = 0; l1 <= l / 2; ++l1)
                for (u64 l2 = 0; l2 <= l / 2; ++l2) {
                    ConstructionParams p;
                    p.family = Family::Thm3;
                    p.l = l, p.s = s, p.l1 = l1, p.l2 = l2;
                    EXPECT_EQ(static_cast<i64>(combine(construction_family(F, p)).elements.size()),
                              thm3_combined_size(19, p));
                }
}

TEST(Evalsets, ExampleThreeCarriesNote) {
    Field F(19, 1);
    EvalSet S = build(F, P("cor1", "u=20,v=18,s=2,s_prime=10,t=1"));
    EXPECT_EQ(S.elements.size(), 229u);
    ASSERT_FALSE(S.notes.empty());
    EXPECT_NE(S.notes[0].find("314"), std::string::npos);
}

TEST(Evalsets, FileRoundTrip) {
    Field F(19, 1);
    EvalSet S = build(F, P("thm5", "u=20,v=36,s=2,s_prime=4,t=7"));
    std::stringstream ss;
    write_evalset(F, S, ss);
    EvalSet back = read_evalset(F, ss);
    EXPECT_EQ(back.elements, S.elements);
    EXPECT_EQ(back.params, S.params);

    std::stringstream os;
    write_evalset(F, S, os);
    std::string text = os.str();
    auto pos = text.find('\n');
    text.insert(pos + 1, "7\n");
    std::istringstream bad(text);
    EXPECT_THROW(read_evalset(F, bad), Error);
}
