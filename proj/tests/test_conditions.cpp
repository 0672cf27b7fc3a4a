#include "dbvp/conditions.hpp"
#include "dbvp/error.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace dbvp {
namespace {

const Coefficient one = [](double) { return 1.0; };

// antiderivative of s(1-s): s²/2 - s³/3
double gss_integral(double lo, double hi) {
    auto F = [](double s) { return s * s / 2 - s * s * s / 3; };
    return F(hi) - F(lo);
}

TEST(ComputeM1, Examples) {
    const Grid g(256);
    const double m1 = compute_M1({0.0, 0.0, 0.5, 0.25, 1.0}, one, g);
    EXPECT_NEAR(m1, 9.0 / 64.0, 1e-10);
    EXPECT_NEAR(m1, gss_integral(0.25, 1.0), 1e-12);
    for (double tau : {0.1, 0.37, 0.9}) EXPECT_NEAR(compute_M1({0.0, 1.0, 0.5, tau, 1.0}, one, g), 1.0 / 6.0, 1e-12);
    EXPECT_EQ(compute_M1({0.0, 0.5, 0.5, 0.25, 1.0}, [](double) { return 0.0; }, g), 0.0);
    // β = 0.6 on a ≡ 1
    EXPECT_NEAR(compute_M1({0.2, 0.6, 0.5, 0.3, 1.0}, one, g), 0.6 * gss_integral(0, 0.3) + gss_integral(0.3, 1), 1e-12);
}

TEST(ComputeM1, NegativeCoefficientThrows) {
    EXPECT_THROW(compute_M1({0.0, 0.0, 0.5, 0.25, 1.0}, [](double t) { return t - 0.5; }, Grid(16)), NegativeData);
    EXPECT_THROW(compute_M2({0.0, 0.0, 0.5, 0.25, 1.0}, [](double t) { return t - 0.5; }, Grid(16)), NegativeData);
}

TEST(ComputeM2, Examples) {
    const Grid g(256);
    const BvpParams p{0.0, 0.0, 0.5, 0.25, 1.0};
    EXPECT_NEAR(compute_M2(p, one, g), 1.0 / 6.0, 1e-12);
    // ∫ s·s(1-s) = s³/3 - s⁴/4 on [0,1]
    EXPECT_NEAR(compute_M2(p, [](double s) { return s; }, g), 1.0 / 3.0 - 1.0 / 4.0, 1e-12);
    EXPECT_EQ(compute_M2(p, [](double) { return 0.0; }, g), 0.0);
}

TEST(ConstantBounds, RandomCoefficients) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Grid g(128);
    for (int c = 0; c < 50; ++c) {
        BvpParams p;
        p.eta = 0.1 + 0.8 * unit(rng);
        p.tau = 0.05 + 0.9 * unit(rng);
        p.alpha = 0.9 * unit(rng) / p.eta;
        p.beta = 0.99 * unit(rng) * (1 - p.alpha * p.eta) / (1 - p.eta);
        const double c0 = unit(rng), c1 = 3 * unit(rng), w = 10 * unit(rng);
        const Coefficient a = [&](double t) { return c0 + c1 * std::sin(w * t) * std::sin(w * t); };
        const double m1 = compute_M1(p, a, g), m2 = compute_M2(p, a, g);
        double amax = 0.0;
        for (int i = 0; i <= 2000; ++i) amax = std::max(amax, a(i / 2000.0));
        EXPECT_GE(m1, 0.0);
        EXPECT_LE(m1, std::max(1.0, p.beta) * m2 + 1e-14);
        EXPECT_LE(m1, (1 + p.beta) * m2 + 1e-14);
        if (p.beta <= 1) EXPECT_LE(m1, m2 + 1e-14);
        EXPECT_LE(m2, amax / 6 + 1e-6);
    }
}

TEST(EstimateF0, Examples) {
    const Grid g(16);
    const auto lin = estimate_f0([](double, double u) { return u; }, g);
    EXPECT_NEAR(lin.value, 1.0, 1e-12);
    EXPECT_EQ(lin.kind, GrowthEstimate::Kind::probed);
    EXPECT_EQ(lin.probe_points.size(), default_f0_probes().size());

    const auto sq = estimate_f0([](double, double u) { return u * u; }, g);
    EXPECT_LE(sq.value, 1e-7);
    EXPECT_EQ(sq.value, 0.0);
    EXPECT_LE(sq.probe_points.back().second, 1e-7);

    // a small but steady ratio is kept
    EXPECT_NEAR(estimate_f0([](double, double u) { return 1e-7 * u; }, g).value, 1e-7, 1e-20);

    const auto sat = estimate_f0([](double, double u) { return u / (1 + u) + 1; }, g);
    EXPECT_FALSE(sat.finite());
    // ratio at u = 1e-8 is 1/(1+u) + 1/u
    EXPECT_NEAR(sat.probe_points.back().second, 1.0 / (1 + 1e-8) + 1e8, 1e-4);
}

TEST(EstimateF0, MaximizesOverT) {
    const auto e = estimate_f0([](double t, double u) { return (1 + t) * u; }, Grid(8));
    EXPECT_NEAR(e.value, 2.0, 1e-12);
}

TEST(EstimateFinf, Examples) {
    const Grid g(16);
    const auto sat = estimate_finf([](double, double u) { return u / (1 + u) + 1; }, g);
    EXPECT_LE(sat.value, 1e-7);
    const auto two = estimate_finf([](double, double u) { return 2 * u + std::sin(u); }, g);
    EXPECT_NEAR(two.value, 2.0, 1e-6);
    EXPECT_EQ(two.probe_points.back().first, 1e8);
    EXPECT_FALSE(estimate_finf([](double, double u) { return u * u; }, g).finite());
    EXPECT_EQ(estimate_finf([](double, double) { return 0.0; }, g).value, 0.0);
}

TEST(EstimateGrowth, NonFiniteThrows) {
    EXPECT_THROW(estimate_f0([](double, double u) { return std::log(u - 1); }, Grid(4)), NonFiniteEvaluation);
}

TEST(LogSpaced, Endpoints) {
    const auto p = default_f0_probes();
    ASSERT_EQ(p.size(), 33u);
    EXPECT_EQ(p.front(), 1.0);
    EXPECT_NEAR(p.back(), 1e-8, 1e-22);
    EXPECT_NEAR(p[4], 0.1, 1e-15);
    const auto q = log_spaced(1.0, 100.0, 3);
    EXPECT_NEAR(q[1], 10.0, 1e-13);
}

ConeConstants cone_with_k1(double k1) {
    ConeConstants c;
    c.k1 = k1;
    return c;
}

TEST(CheckTheorems, Theorem1Examples) {
    const BvpParams p{1.0, 0.0, 0.5, 0.25, 1.0};
    const auto r = check_theorems(p, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), GrowthEstimate::user(1.0),
                                  GrowthEstimate::user(kInfinity), std::nullopt, std::nullopt);
    EXPECT_TRUE(r.theorem1_applicable);
    ASSERT_TRUE(r.lambda_max_thm1);
    EXPECT_NEAR(*r.lambda_max_thm1, 64.0 / 27.0, 1e-12);
    EXPECT_FALSE(r.theorem2_applicable);

    const auto zero = check_theorems(p, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), GrowthEstimate::user(0.0),
                                     GrowthEstimate::user(kInfinity), std::nullopt, std::nullopt);
    EXPECT_TRUE(zero.theorem1_applicable);
    EXPECT_EQ(*zero.lambda_max_thm1, kInfinity);

    const auto inf = check_theorems(p, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), GrowthEstimate::user(kInfinity),
                                    GrowthEstimate::user(kInfinity), std::nullopt, std::nullopt);
    EXPECT_FALSE(inf.theorem1_applicable);
    EXPECT_FALSE(inf.lambda_max_thm1);
}

TEST(CheckTheorems, Theorem2Examples) {
    const BvpParams p{1.0, 0.0, 0.5, 0.25, 1.0};
    const auto r = check_theorems(p, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), GrowthEstimate::user(kInfinity),
                                  GrowthEstimate::user(2.0), std::nullopt, std::nullopt);
    EXPECT_FALSE(r.theorem2_applicable);
    EXPECT_NEAR(*r.lambda_max_thm2, 16.0 / 27.0, 1e-12);
    EXPECT_FALSE(r.B_thm2);

    auto q = p;
    q.lambda = 0.5;
    const auto ok = check_theorems(q, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), GrowthEstimate::user(kInfinity),
                                   GrowthEstimate::user(2.0), 4.0, 10.0);
    EXPECT_TRUE(ok.theorem2_applicable);
    ASSERT_TRUE(ok.B_thm2);
    EXPECT_NEAR(*ok.B_thm2, 10.0 + 1.0 + 2 * 0.5 * 3.0 * (1.0 / 6) * 4.0, 1e-12);
}

TEST(CheckTheorems, NotesAlwaysSaySufficientOnly) {
    const BvpParams p{1.0, 0.0, 0.5, 0.25, 100.0};
    const auto r = check_theorems(p, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), GrowthEstimate::user(1.0),
                                  GrowthEstimate::user(1.0), std::nullopt, std::nullopt);
    EXPECT_FALSE(r.theorem1_applicable);
    EXPECT_FALSE(r.theorem2_applicable);
    const bool found = std::any_of(r.notes.begin(), r.notes.end(),
                                   [](const std::string& n) { return n.find("sufficient") != std::string::npos; });
    EXPECT_TRUE(found);
}

TEST(CheckTheorems, LambdaMonotonicity) {
    const auto f0 = GrowthEstimate::user(1.3);
    const auto finf = GrowthEstimate::user(0.7);
    bool previous = true;
    for (int k = 1; k <= 400; ++k) {
        const BvpParams p{1.0, 0.0, 0.5, 0.25, 0.01 * k};
        const bool now =
            check_theorems(p, 9.0 / 64, 1.0 / 6, cone_with_k1(3.0), f0, finf, std::nullopt, std::nullopt)
                .theorem1_applicable;
        if (!previous) EXPECT_FALSE(now) << "lambda=" << p.lambda;
        previous = now;
    }
}

TEST(Theorem2Slack, Cases) {
    const BvpParams p{1.0, 0.0, 0.5, 0.25, 0.5};
    // 1/(2λk1M1) = 1/(2·0.5·3·9/64) = 64/27
    EXPECT_NEAR(*theorem2_slack(p, 9.0 / 64, cone_with_k1(3.0), GrowthEstimate::user(0.0)), 64.0 / 27, 1e-12);
    EXPECT_NEAR(*theorem2_slack(p, 9.0 / 64, cone_with_k1(3.0), GrowthEstimate::user(2.0)), 2e-3, 1e-15);
    EXPECT_FALSE(theorem2_slack(p, 9.0 / 64, cone_with_k1(3.0), GrowthEstimate::user(3.0)));
}

TEST(ProbeThreshold, FindsCrossing) {
    const Grid g(4);
    // ratio = 1 + 1/u: stays below 1.01 once u > 100
    const auto finf = estimate_finf([](double, double u) { return u + 1; }, g);
    const auto n = probe_threshold_crossing(finf, 1.01);
    ASSERT_TRUE(n);
    EXPECT_GT(*n, 100.0);
    EXPECT_LT(*n, 100.0 * std::pow(10.0, 0.25) + 1e-9);
    EXPECT_FALSE(probe_threshold_crossing(finf, 1.0));
}

TEST(MaxFOnBox, Values) {
    EXPECT_NEAR(max_f_on_box([](double t, double u) { return t + u * u; }, Grid(8), 2.0), 5.0, 1e-12);
}

}  // namespace
}  // namespace dbvp
