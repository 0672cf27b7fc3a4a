#pragma once

#include "dbvp/greens.hpp"
#include "dbvp/operator.hpp"
#include "dbvp/quadrature.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dbvp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Estimate of f⁰ = limsup_{u→0} max_t f(t,u)/u or f^∞ (u→∞).
struct GrowthEstimate {
    enum class Kind { user_supplied, probed };

    double value = 0.0;  // +infinity when unbounded
    Kind kind = Kind::probed;
    /// (u, max over t of f(t,u)/u) for every probe, in probe order.
    std::vector<std::pair<double, double>> probe_points;

    bool finite() const { return value < kInfinity; }
    static GrowthEstimate user(double v) { return {v, Kind::user_supplied, {}}; }
};

/// Probe ratios above this are reported as +infinity; a tail that keeps
/// falling and ends below its reciprocal is reported as 0.
inline constexpr double kUnboundedRatio = 1e6;

/// `count` log-spaced values from `from` to `to` inclusive (either direction).
std::vector<double> log_spaced(double from, double to, int count);
/// 1 → 1e-8, four probes per decade.
std::vector<double> default_f0_probes();
/// 1 → 1e8, four probes per decade.
std::vector<double> default_finf_probes();

/// Max over the t-grid of f(t,u)/u at each probe (probes decreasing toward
/// 0); the estimate is the largest ratio among the last three probes. A
/// finite sample cannot certify a limsup, so the result is a heuristic.
GrowthEstimate estimate_f0(const Nonlinearity& f, const Grid& t_grid,
                           const std::vector<double>& u_probes = default_f0_probes());
/// As estimate_f0 with probes increasing toward +∞.
GrowthEstimate estimate_finf(const Nonlinearity& f, const Grid& t_grid,
                             const std::vector<double>& u_probes = default_finf_probes());

/// β∫₀^τ s(1-s)a(s)ds + ∫_τ¹ s(1-s)a(s)ds, Simpson on each piece with the
/// grid's interval count. Throws NegativeData if a < 0 at a sample.
double compute_M1(const BvpParams& params, const Coefficient& a, const Grid& grid);
/// ∫₀¹ s(1-s)a(s)ds on the grid.
double compute_M2(const BvpParams& params, const Coefficient& a, const Grid& grid);

/// Smallest probe u beyond which every probed ratio stays below `threshold`,
/// or nullopt when the last probe is already above it.
std::optional<double> probe_threshold_crossing(const GrowthEstimate& finf, double threshold);

/// max f(t,u) over the t-grid × `samples` points of [0, N].
double max_f_on_box(const Nonlinearity& f, const Grid& t_grid, double N, int samples = 201);

struct ConditionReport {
    double M1 = 0.0;
    double M2 = 0.0;
    ConeConstants cone;
    GrowthEstimate f0;
    GrowthEstimate finf;
    double lambda = 0.0;

    bool theorem1_applicable = false;
    /// Absent when f⁰ is infinite; +infinity when f⁰·k1·M1 = 0.
    std::optional<double> lambda_max_thm1;
    bool theorem2_applicable = false;
    std::optional<double> lambda_max_thm2;
    std::optional<double> N;
    std::optional<double> fmax;
    std::optional<double> B_thm2;
    std::vector<std::string> notes;
};

/// theorem 1: f⁰ < ∞ and λ f⁰ k1 M1 < 1, admissible for λ < 1/(f⁰ k1 M1).
/// theorem 2: f^∞ < ∞ and λ f^∞ k1 M1 < 1/2, admissible for λ < 1/(2 f^∞ k1 M1);
/// B = N + 1 + 2λ k1 M2 max f when N and max f are known.
/// Both conditions are sufficient only; the notes say so.
ConditionReport check_theorems(const BvpParams& params, double M1, double M2, const ConeConstants& cone,
                               const GrowthEstimate& f0, const GrowthEstimate& finf,
                               std::optional<double> fmax, std::optional<double> N);

/// Admissible slack ε for the N search: min(1e-3·f^∞, 1/(2λk1M1) - f^∞) for
/// f^∞ > 0, the full slack 1/(2λk1M1) when f^∞ = 0. Nullopt when theorem 2
/// is not applicable.
std::optional<double> theorem2_slack(const BvpParams& params, double M1, const ConeConstants& cone,
                                     const GrowthEstimate& finf);

}  // namespace dbvp
