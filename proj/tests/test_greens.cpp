#include "dbvp/error.hpp"
#include "dbvp/greens.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

namespace dbvp {
namespace {

BvpParams make(double alpha, double beta, double eta, double tau = 0.25, double lambda = 1.0) {
    return {alpha, beta, eta, tau, lambda};
}

TEST(Denom, DirectSubstitution) {
    EXPECT_DOUBLE_EQ(denom(make(1.0, 0.0, 0.5)), 0.5);
    EXPECT_DOUBLE_EQ(denom(make(0.0, 0.0, 0.3)), 1.0);
    EXPECT_DOUBLE_EQ(denom(make(0.5, 0.5, 0.5)), 0.5);
}

TEST(Denom, BetaAtOrBeyondBoundIsDegenerate) {
    EXPECT_THROW(denom(make(1.0, 2.0, 0.5)), DegenerateParams);
    // β exactly at (1-αη)/(1-η) = 1
    EXPECT_THROW(denom(make(1.0, 1.0, 0.5)), DegenerateParams);
}

TEST(Validate, NamesTheViolatedInequality) {
    const auto v = find_violation(make(1.0, 2.0, 0.5));
    ASSERT_TRUE(v);
    EXPECT_NE(v->find("beta ≥ (1−αη)/(1−η)"), std::string::npos);
    EXPECT_EQ(*find_violation(make(2.5, 0.0, 0.5)), "alpha ≥ 1/η");
    EXPECT_EQ(*find_violation(make(1.0, 0.0, 1.0)), "eta outside (0,1)");
    EXPECT_EQ(*find_violation(make(1.0, 0.0, 0.5, 0.0)), "tau outside (0,1)");
    EXPECT_EQ(*find_violation(make(1.0, 0.0, 0.5, 0.5, 0.0)), "lambda ≤ 0");
    EXPECT_FALSE(find_violation(make(1.0, 0.0, 0.5, 0.5, 0.0), false));
    EXPECT_EQ(*find_violation(make(1.0, -0.1, 0.5)), "beta < 0");
    EXPECT_FALSE(find_violation(make(0.0, 0.0, 0.5)));
    EXPECT_THROW(validate(make(1.0, 2.0, 0.5)), DegenerateParams);
}

TEST(GKernel, Values) {
    EXPECT_DOUBLE_EQ(g_kernel(0.5, 0.5), 0.25);
    EXPECT_DOUBLE_EQ(g_kernel(0.3, 0.6), 0.3 * 0.4);
    for (double s : {0.0, 0.2, 0.7, 1.0}) EXPECT_EQ(g_kernel(1.0, s), 0.0);
}

TEST(GKernel, RejectsOutsideUnitSquare) {
    EXPECT_THROW(g_kernel(-0.1, 0.5), DomainError);
    EXPECT_THROW(g_kernel(0.5, 1.1), DomainError);
}

TEST(Green, ReducesToDirichletKernelWithoutCorrection) {
    const auto p = make(0.0, 0.0, 0.4);
    for (double t : {0.0, 0.3, 0.9})
        for (double s : {0.1, 0.5, 1.0}) EXPECT_DOUBLE_EQ(green(p, t, s), g_kernel(t, s));
}

TEST(Green, ClosedFormValues) {
    EXPECT_DOUBLE_EQ(green(make(1.0, 0.0, 0.5), 0.5, 0.5), 0.5);
    EXPECT_DOUBLE_EQ(green(make(0.5, 0.5, 0.5), 0.0, 0.5), 0.25);
    EXPECT_THROW(green(make(1.0, 2.0, 0.5), 0.5, 0.5), DegenerateParams);
}

TEST(ConeConstants, WorkedExamples) {
    auto c = cone_constants(make(1.0, 0.0, 0.5), 0.25);
    EXPECT_NEAR(c.k1, 3.0, 1e-15);
    EXPECT_NEAR(c.k2, 0.375, 1e-15);
    EXPECT_NEAR(c.gamma, 0.125, 1e-15);

    c = cone_constants(make(0.0, 0.0, 0.5), 0.25);
    EXPECT_NEAR(c.k1, 1.0, 1e-15);
    EXPECT_NEAR(c.k2, 0.25, 1e-15);
    EXPECT_NEAR(c.gamma, 0.25, 1e-15);

    // hand evaluation: denom = 1 - 0.25 - 0.25 = 0.5, max = 0.5, min{0, 0} = 0
    c = cone_constants(make(0.5, 0.5, 0.5), 0.1);
    EXPECT_NEAR(c.k1, 1.0 + 0.5 / 0.5, 1e-15);
    EXPECT_NEAR(c.k2, 0.1 * (1.0 + (0.5 + 0.0) / 0.5), 1e-15);
    EXPECT_NEAR(c.gamma, 0.1, 1e-15);
}

TEST(ConeConstants, ThetaMustBeInsideOpenInterval) {
    const auto p = make(1.0, 0.0, 0.5);
    EXPECT_THROW(cone_constants(p, 0.0), DomainError);
    EXPECT_THROW(cone_constants(p, 0.5), DomainError);
    EXPECT_THROW(cone_constants(p, -0.1), DomainError);
    EXPECT_NO_THROW(cone_constants(p, 0.499));
}

TEST(ConeConstants, MinTermPicksThetaBranchWhenAlphaBelowBeta) {
    // α < β: min{(α-β)θ, (α-β)(1-θ)} = (α-β)(1-θ)
    const auto p = make(0.2, 0.6, 0.5);
    const double d = (1 - 0.1) - 0.6 * 0.5;
    const auto c = cone_constants(p, 0.3);
    EXPECT_NEAR(c.k2, 0.3 * (1.0 + (0.6 + (0.2 - 0.6) * 0.7) / d), 1e-15);
    EXPECT_NEAR(c.k1, 1.0 + 0.6 / d, 1e-15);
}

// The k2 lower bound needs η ∈ [θ, 1-θ]; outside it the bound genuinely fails.
TEST(ConeConstants, LowerBoundFailsWhenEtaOutsideWindow) {
    const auto p = make(15.0, 0.0, 0.05);
    const auto c = cone_constants(p, 0.4);
    EXPECT_FALSE(c.lower_bound_certified);
    const double t = 0.4, s = 0.58;
    EXPECT_LT(green(p, t, s) - c.k2 * g_kernel(s, s), -1.0);
    EXPECT_TRUE(cone_constants(make(1.0, 0.0, 0.5), 0.25).lower_bound_certified);
}

class KernelProperties : public ::testing::TestWithParam<unsigned> {};

TEST_P(KernelProperties, InequalitiesHoldOnGrid) {
    std::mt19937_64 rng(GetParam());
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    constexpr double slack = 1e-12;
    for (int c = 0; c < 10; ++c) {
        const double theta = 0.05 + 0.44 * unit(rng);
        BvpParams p;
        p.eta = theta + (1.0 - 2.0 * theta) * unit(rng);
        p.alpha = 0.999 * unit(rng) / p.eta;
        p.beta = 0.999 * unit(rng) * (1.0 - p.alpha * p.eta) / (1.0 - p.eta);
        ASSERT_FALSE(find_violation(p));
        const auto cone = cone_constants(p, theta);
        ASSERT_GT(cone.gamma, 0.0);
        ASSERT_LE(cone.gamma, 1.0);

        for (int j = 0; j <= 100; ++j) {
            const double s = j / 100.0;
            const double diag = g_kernel(s, s);
            double window_min = 1e300;
            for (int i = 0; i <= 100; ++i) {
                const double t = i / 100.0;
                const double g = g_kernel(t, s);
                const double G = green(p, t, s);
                EXPECT_EQ(g, g_kernel(s, t));
                EXPECT_GE(g, 0.0);
                EXPECT_LE(g, diag + slack);
                EXPECT_GE(g, std::min(t, 1.0 - t) * diag - slack);
                EXPECT_GE(G, -slack);
                EXPECT_LE(G, cone.k1 * diag + slack);
                if (t >= theta && t <= 1.0 - theta) window_min = std::min(window_min, G);
            }
            if (window_min < 1e300) EXPECT_GE(window_min, cone.k2 * diag - slack);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, KernelProperties, ::testing::Values(1u, 7u, 2024u));

}  // namespace
}  // namespace dbvp
