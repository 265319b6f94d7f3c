#include "oracles.hpp"

#include <cowaist/pairing_json.hpp>

#include <gtest/gtest.h>

using namespace cowaist;

namespace
{

PairingData plain(int n, std::map<std::string, Rational> table)
{
    return PairingData(n, GradedClass::constant(pontryagin_universe(0), n, 1), std::move(table));
}

} // namespace

TEST(ComparisonConstant, DependsOnlyOnN)
{
    // n = 1: A_1 = 1, C_1 = 1, C_2 = 2.
    const auto c1 = comparison_constant(1);
    EXPECT_EQ(c1.A_N, 1);
    EXPECT_EQ(c1.max_C, 2);
    EXPECT_EQ(c1.c, Rational(1, 2));
    for (int n = 1; n <= 4; ++n) {
        const auto cc = comparison_constant(n);
        Rational maxC = 0;
        for (int k = 1; k <= n + 1; ++k) {
            const AdamsParts parts = adams_parts(k);
            maxC = std::max({maxC, bound_constant(parts.positive).constant, bound_constant(parts.negative).constant});
        }
        EXPECT_EQ(cc.max_C, maxC);
        EXPECT_EQ(cc.A_N, build_library(n, n).sup_bound_constant(n));
        EXPECT_EQ(cc.c, 1 / (cc.max_C * cc.A_N));
    }
}

TEST(AdamsBoundConstant, Values)
{
    // psi_k contains Lambda^k E and E^{(x)k}, both with constant k.
    for (int k = 1; k <= 6; ++k) {
        EXPECT_EQ(adams_bound_constant(k), k);
    }
}

TEST(Pipeline, LineBundleOnSurface)
{
    const FormalBundle E = FormalBundle::parse("x");
    const PipelineResult r = comparison_pipeline(E, plain(1, {{"x", 1}}), Partition({1}), 1);
    EXPECT_EQ(r.first_functor, FunctorExpr::identity(0));
    EXPECT_EQ(r.k0, 1);
    EXPECT_TRUE(r.positive_part);
    EXPECT_EQ(r.A_N, 1);
    EXPECT_EQ(r.c, 1 / (r.max_C * r.A_N));
    EXPECT_EQ(r.c, Rational(1, 2));
    EXPECT_EQ(r.bound, 2);
    EXPECT_NE(ahat_pairing(evaluate_functor(r.functor, {E}), plain(1, {{"x", 1}})), 0);
}

TEST(Pipeline, ZeroPairingIsHypothesisFailure)
{
    const FormalBundle E = FormalBundle::parse("x");
    try {
        comparison_pipeline(E, plain(1, {{"x", 0}}), Partition({1}), 1);
        FAIL();
    } catch (const hypothesis_failure &e) {
        EXPECT_NE(std::string(e.what()).find("hypothesis"), std::string::npos);
    }
    EXPECT_THROW(comparison_pipeline(E, plain(1, {{"x", 1}}), Partition({1}), 0), usage_error);
}

TEST(Pipeline, CIndependentOfData)
{
    const FormalBundle E = FormalBundle::parse("x1,x2,-x1+x2");
    const std::vector<std::map<std::string, Rational>> tables{
        {{"x1^2", 1}},
        {{"x1*x2", 3}, {"x2^2", -1}},
        {{"x1^2", 2}, {"x1*x2", -5}, {"x2^2", Rational(1, 3)}},
    };
    std::optional<Rational> c;
    for (const auto &t : tables) {
        for (const Partition &w : {Partition({2}), Partition({1, 1})}) {
            const PairingData data = plain(2, t);
            PipelineResult r;
            try {
                r = comparison_pipeline(E, data, w, Rational(3, 2));
            } catch (const hypothesis_failure &) {
                continue;
            }
            if (!c) {
                c = r.c;
            }
            EXPECT_EQ(r.c, *c);
            EXPECT_NE(ahat_pairing(evaluate_functor(r.functor, {E}), data), 0);
            EXPECT_LE(bound_constant(r.functor).constant, 1 / r.c);
            EXPECT_EQ(r.bound, 1 / (r.c * Rational(3, 2)));
        }
    }
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(*c, comparison_constant(2).c);
}

TEST(Pipeline, ScansPastVanishingFirstAdamsPairing)
{
    // With A-hat = 1 - p1/24 the k = 1 pairing is a - rank(E1) t(p1)/24, where a pairs ch_2(E1).
    // Choosing t(p1) = 24 a / rank(E1) kills it, so the pipeline must move on to k0 > 1.
    const FormalBundle E = FormalBundle::parse("x1,x2");
    const std::string head = R"({"n":2,"ahat":{"terms":{"p1":"-1/24"}},"table":{"x1^2":"1","x1*x2":"2","p1":")";
    const PairingData probe = parse_pairing(head + R"(0"}})");
    const PipelineResult first = comparison_pipeline(E, probe, Partition({1, 1}), 1);
    const FormalBundle E1 = evaluate_functor(first.first_functor, {E});
    const Rational tp1 = 24 * first.ch_pairing / Rational(E1.rank());
    const PairingData data = parse_pairing(head + to_string(tp1) + R"("}})");
    EXPECT_EQ(ahat_pairing(E1, data), 0);

    const PipelineResult r = comparison_pipeline(E, data, Partition({1, 1}), 1);
    EXPECT_EQ(r.first_functor, first.first_functor);
    EXPECT_GT(r.k0, 1);
    EXPECT_NE(ahat_pairing(evaluate_functor(r.functor, {E}), data), 0);
}
