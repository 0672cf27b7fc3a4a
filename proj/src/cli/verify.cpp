#include "dbvp/cli.hpp"

#include "dbvp/greens.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

namespace dbvp::cli {

namespace {

constexpr double kSlack = 1e-12;
constexpr int kGridIntervals = 100;
constexpr std::array<double, 3> kThetas{0.1, 0.25, 0.4};

enum Inequality {
    kSymmetry,
    kNonnegativeG,
    kGBelowDiagonal,
    kGAboveMinTimesDiagonal,
    kGreenNonnegative,
    kGreenBelowK1,
    kGreenAboveK2,
    kInequalityCount,
};

constexpr std::array<const char*, kInequalityCount> kNames{
    "g(t,s) = g(s,t)",
    "g(t,s) >= 0",
    "g(t,s) <= g(s,s)",
    "g(t,s) >= min{t,1-t} g(s,s)",
    "G(t,s) >= 0",
    "G(t,s) <= k1 g(s,s)",
    "G(t,s) >= k2 g(s,s) on [theta,1-theta]",
};

double uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::string describe(const BvpParams& p, double theta, double t, double s) {
    std::ostringstream os;
    os << "alpha=" << format_number(p.alpha) << " beta=" << format_number(p.beta) << " eta=" << format_number(p.eta)
       << " tau=" << format_number(p.tau) << " theta=" << format_number(theta) << " t=" << format_number(t)
       << " s=" << format_number(s);
    return os.str();
}

}  // namespace

bool VerifySummary::passed() const {
    return std::all_of(inequalities.begin(), inequalities.end(),
                       [](const InequalityResult& r) { return r.violations == 0; });
}

void verify_case(const BvpParams& params, double theta, double k1_scale, VerifySummary& summary) {
    if (summary.inequalities.size() != kInequalityCount) {
        summary.inequalities.clear();
        for (const char* name : kNames) summary.inequalities.push_back({name, kInfinity, 0, {}});
    }
    ConeConstants cone = cone_constants(params, theta);
    cone.k1 *= k1_scale;

    auto record = [&](Inequality which, double slack, double t, double s) {
        auto& r = summary.inequalities[which];
        r.worst_slack = std::min(r.worst_slack, slack);
        if (slack < -kSlack) {
            if (r.violations == 0) r.first_violation = describe(params, theta, t, s);
            ++r.violations;
        }
    };

    for (int j = 0; j <= kGridIntervals; ++j) {
        const double s = static_cast<double>(j) / kGridIntervals;
        const double diag = g_kernel(s, s);
        for (int i = 0; i <= kGridIntervals; ++i) {
            const double t = static_cast<double>(i) / kGridIntervals;
            const double g = g_kernel(t, s);
            const double G = green(params, t, s);
            record(kSymmetry, 0.0 - std::abs(g - g_kernel(s, t)), t, s);
            record(kNonnegativeG, g, t, s);
            record(kGBelowDiagonal, diag - g, t, s);
            record(kGAboveMinTimesDiagonal, g - std::min(t, 1.0 - t) * diag, t, s);
            record(kGreenNonnegative, G, t, s);
            record(kGreenBelowK1, cone.k1 * diag - G, t, s);
            if (cone.lower_bound_certified && t >= theta - kSlack && t <= 1.0 - theta + kSlack)
                record(kGreenAboveK2, G - cone.k2 * diag, t, s);
        }
    }
    ++summary.cases;
}

VerifySummary run_verify(std::uint64_t seed, int cases, double k1_scale) {
    VerifySummary summary;
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        const double theta = kThetas[static_cast<std::size_t>(c) % kThetas.size()];
        BvpParams p;
        p.eta = theta + (1.0 - 2.0 * theta) * uniform(rng);
        p.alpha = (0.01 + 0.98 * uniform(rng)) / p.eta;
        p.beta = 0.99 * uniform(rng) * (1.0 - p.alpha * p.eta) / (1.0 - p.eta);
        p.tau = 0.01 + 0.98 * uniform(rng);
        p.lambda = 1.0;
        verify_case(p, theta, k1_scale, summary);
    }
    return summary;
}

int cmd_verify(std::uint64_t seed, int cases, std::ostream& out, std::ostream& err, double k1_scale) {
    if (cases < 0) {
        err << "error: --cases must be ≥ 0\n";
        return kConfigError;
    }
    const VerifySummary summary = run_verify(seed, cases, k1_scale);
    out << "seed = " << seed << "\n";
    out << "cases = " << summary.cases << "\n";
    if (summary.cases == 0) {
        out << "note = 0 cases: nothing checked\n";
        return kOk;
    }
    for (const auto& r : summary.inequalities) {
        out << (r.violations == 0 ? "PASS " : "FAIL ") << r.name << "  worst_slack = " << format_number(r.worst_slack)
            << "  violations = " << r.violations << "\n";
    }
    if (!summary.passed()) {
        for (const auto& r : summary.inequalities)
            if (r.violations > 0) err << "violation of " << r.name << ": " << r.first_violation << "\n";
        return kVerifyViolation;
    }
    return kOk;
}

}  // namespace dbvp::cli
