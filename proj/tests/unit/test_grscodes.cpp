#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "grssd/error.hpp"
#include "grssd/pipeline.hpp"

using namespace grssd;

namespace {

ConstructionParams P(const char* tag, const char* kv) { return ConstructionParams::parse(*family_from_tag(tag), kv); }

CodeSpec code_for(const Field& F, const char* tag, const char* kv) {
    auto res = run_construction(F, P(tag, kv));
    EXPECT_TRUE(res.ok) << res.failure;
    return *res.code;
}

// G * G^T computed directly from the definition
bool gram_is_zero(const Field& F, const CodeSpec& spec) {
    const u64 k = spec.k;
    std::vector<std::vector<Elem>> G(k, std::vector<Elem>(spec.n, 0));
    for (u64 j = 0; j < spec.points.size(); ++j)
        for (u64 i = 0; i < k; ++i) G[i][j] = F.mul(spec.scaling[j], F.pow(spec.points[j], static_cast<i64>(i)));
    if (spec.extended) G[k - 1][spec.n - 1] = 1;
    for (u64 a = 0; a < k; ++a)
        for (u64 b = 0; b < k; ++b) {
            Elem acc = 0;
            for (u64 j = 0; j < spec.n; ++j) acc = F.add(acc, F.mul(G[a][j], G[b][j]));
            if (acc != 0) return false;
        }
    return true;
}

// exhaustive minimum distance over all q^k codewords
u64 brute_min_distance(const Field& F, const GeneratorMatrix& G) {
    u64 total = 1;
    for (u64 i = 0; i < G.k; ++i) total *= F.q();
    u64 best = G.n;
    std::vector<Elem> msg(G.k);
    for (u64 idx = 1; idx < total; ++idx) {
        u64 rest = idx;
        for (u64 i = 0; i < G.k; ++i) {
            msg[i] = static_cast<Elem>(rest % F.q());
            rest /= F.q();
        }
        u64 weight = 0;
        for (u64 j = 0; j < G.n; ++j) {
            Elem c = 0;
            for (u64 i = 0; i < G.k; ++i) c = F.add(c, F.mul(msg[i], G.at(i, j)));
            weight += c != 0;
        }
        best = std::min(best, weight);
    }
    return best;
}

}

TEST(Grscodes, SmallCodesAreSelfDualByDefinition) {
    Field F(7, 1);
    for (auto [tag, kv] : std::vector<std::pair<const char*, const char*>>{
             {"thm2", "l=6,s=0,l1=1,l2=0"}, {"thm2", "l=6,s=0,l1=0,l2=1"}, {"thm2", "l=2,s=0,l1=1,l2=1"}}) {
        CodeSpec spec = code_for(F, tag, kv);
        EXPECT_TRUE(gram_is_zero(F, spec)) << tag << " " << kv;
        EXPECT_TRUE(power_sum_self_orthogonal(F, spec));
        EXPECT_TRUE(matrix_self_orthogonal(F, generator_matrix(F, spec)));
    }
}

TEST(Grscodes, ExampleTwoVerifies) {
    Field F(19, 1);
    CodeSpec spec = code_for(F, "thm4", "u=20,v=18,s=9,s_prime=10,t=2");
    EXPECT_EQ(spec.n, 310u);
    EXPECT_FALSE(spec.extended);
    EXPECT_TRUE(gram_is_zero(F, spec));
    VerifyOptions o;
    o.samples = 20;
    auto rep = verify_self_dual(F, spec, o);
    EXPECT_TRUE(rep.passed());
    EXPECT_TRUE(rep.matrix_ok.value_or(false));
    EXPECT_TRUE(rep.randomized_ok.value_or(false));
    EXPECT_EQ(matrix_rank(F, generator_matrix(F, spec)), 155u);
    EXPECT_TRUE(leading_minor_nonzero(F, spec));
}

TEST(Grscodes, ExtendedCodeNeedsCorrectionTerm) {
    Field F(19, 1);
    CodeSpec spec = code_for(F, "thm5", "u=20,v=36,s=2,s_prime=4,t=7");
    EXPECT_TRUE(spec.extended);
    EXPECT_EQ(spec.n, 124u);
    auto P = power_sums(F, spec);
    for (u64 t = 0; t + 2 < 2 * spec.k; ++t) EXPECT_EQ(P[t], 0u) << t;
    EXPECT_EQ(F.add(P[2 * spec.k - 2], 1), 0u);
    EXPECT_TRUE(gram_is_zero(F, spec));
}

TEST(Grscodes, PerturbedScalingFails) {
    Field F(19, 1);
    CodeSpec spec = code_for(F, "thm4", "u=20,v=18,s=9,s_prime=10,t=2");
    spec.scaling[3] = F.mul(spec.scaling[3], F.exp(1));
    EXPECT_FALSE(power_sum_self_orthogonal(F, spec));
    EXPECT_FALSE(matrix_self_orthogonal(F, generator_matrix(F, spec)));
    EXPECT_FALSE(randomized_self_orthogonal(F, spec, 20, 3));
    EXPECT_FALSE(verify_self_dual(F, spec).passed());
}

TEST(Grscodes, MdsBruteForceAgreesWithExhaustiveDistance) {
    Field F(3, 1);
    auto res = run_construction(F, P("thm2", "l=2,s=0,l1=1,l2=0"));
    ASSERT_TRUE(res.ok) << res.failure;
    const CodeSpec& spec = *res.code;
    EXPECT_EQ(spec.n, 6u);
    EXPECT_EQ(verify_mds(F, spec), MdsStatus::Pass);
    EXPECT_EQ(brute_min_distance(F, generator_matrix(F, spec)), spec.n - spec.k + 1);
}

TEST(Grscodes, MdsOnLengthTen) {
    Field F(7, 1);
    CodeSpec spec = code_for(F, "thm2", "l=6,s=0,l1=1,l2=0");
    EXPECT_EQ(spec.n, 10u);
    EXPECT_EQ(verify_mds(F, spec), MdsStatus::Pass);
}

TEST(Grscodes, SpecChecks) {
    CodeSpec spec;
    spec.n = 4;
    spec.k = 2;
    spec.points = {1, 2, 2, 3};
    spec.scaling = {1, 1, 1, 1};
    EXPECT_THROW(check_code_spec(spec), Error);
    spec.points = {1, 2, 4, 3};
    spec.scaling = {1, 0, 1, 1};
    EXPECT_THROW(check_code_spec(spec), Error);
    spec.scaling = {1, 1, 1, 1};
    EXPECT_NO_THROW(check_code_spec(spec));
    spec.k = 1;
    EXPECT_THROW(check_code_spec(spec), Error);
}

TEST(Grscodes, MatrixFileRoundTripAndTamper) {
    Field F(19, 1);
    CodeSpec spec = code_for(F, "thm5", "u=20,v=36,s=2,s_prime=4,t=7");
    auto G = generator_matrix(F, spec);
    std::string text = format_matrix(F, spec, G);
    MatrixFile mf = parse_matrix(text);
    EXPECT_EQ(mf.G, G);
    EXPECT_EQ(mf.spec.points, spec.points);
    EXPECT_EQ(mf.spec.scaling, spec.scaling);
    EXPECT_EQ(mf.spec.extended, spec.extended);
    EXPECT_EQ(mf.modulus, F.modulus());
    EXPECT_EQ(format_matrix(F, mf.spec, mf.G), text);

    std::string bad = text;
    auto pos = bad.find('\n', bad.size() / 2);
    bad[pos - 1] = bad[pos - 1] == '1' ? '2' : '1';
    try {
        parse_matrix(bad);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Malformed);
    }
    EXPECT_THROW(parse_matrix(text.substr(0, text.size() - 1)), Error);

    auto path = std::filesystem::temp_directory_path() / "grssd_unit_matrix.txt";
    write_matrix(F, spec, G, path.string());
    EXPECT_EQ(read_matrix(path.string()).G, G);
    std::filesystem::remove(path);
}

TEST(Grscodes, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Grscodes, LargeCorollaryThreeVerifies) {
    Field F(151, 1);
    auto res = run_construction(F, P("cor3", "u=152,v=2,w=20,s=11,t=1,f=2"));
    ASSERT_TRUE(res.ok) << res.failure;
    EXPECT_EQ(res.code->n, 8192u);
    EXPECT_TRUE(res.verify->power_sum_ok);
    EXPECT_EQ(res.verify->rank_method, "vandermonde-minor");
}
