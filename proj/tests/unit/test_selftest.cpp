#include <gtest/gtest.h>

#include "grssd/selftest.hpp"

using namespace grssd;

TEST(SelfTest, DefaultRunPasses) {
    auto results = run_self_test({});
    ASSERT_FALSE(results.empty());
    for (const auto& r : results)
        if (!r.informational) EXPECT_TRUE(r.ok) << r.name << ": " << r.detail;
}

TEST(SelfTest, LemmaEightAsStatedFailsOnOddFibers) {
    Field F(19, 1);
    auto stated = check_lemma8(F, Lemma8Mode::AsStated);
    EXPECT_FALSE(stated.ok);
    EXPECT_NE(stated.detail.find("first claim"), std::string::npos);
    EXPECT_TRUE(check_lemma8(F, Lemma8Mode::Corrected).ok);
}

TEST(SelfTest, InjectedSignErrorNamesLemmaOne) {
    SelfTestOptions o;
    o.inject_sign_error = true;
    auto results = run_self_test(o);
    const PropertyResult* first = nullptr;
    for (const auto& r : results)
        if (!r.ok && !r.informational) {
            first = &r;
            break;
        }
    ASSERT_NE(first, nullptr);
    EXPECT_EQ(first->name.rfind("lemma1", 0), 0u);
}

TEST(SelfTest, IndividualSuites) {
    Field F(7, 1);
    EXPECT_TRUE(check_lemma4(50, 3).ok);
    EXPECT_TRUE(check_lemma5(F).ok);
    EXPECT_TRUE(check_lemma6(F).ok);
    EXPECT_TRUE(check_lemma7(F).ok);
    EXPECT_TRUE(check_lemma9(F, 2, 2).ok);
    EXPECT_TRUE(check_lemma10(F, 30, 9).ok);
    EXPECT_TRUE(check_theorem1_random(F, 20, 4).ok);
    EXPECT_TRUE(check_eta_minus_one({{3, 1}, {7, 1}, {3, 3}}).ok);
}
