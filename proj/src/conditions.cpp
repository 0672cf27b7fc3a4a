#include "dbvp/conditions.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dbvp {

std::vector<double> log_spaced(double from, double to, int count) {
    if (count < 1 || !(from > 0.0) || !(to > 0.0)) throw DomainError("log_spaced needs positive ends and count ≥ 1");
    std::vector<double> out(static_cast<std::size_t>(count));
    const double a = std::log10(from);
    const double b = std::log10(to);
    for (int i = 0; i < count; ++i)
        out[static_cast<std::size_t>(i)] = count == 1 ? from : std::pow(10.0, a + (b - a) * i / (count - 1));
    out.front() = from;
    out.back() = to;
    return out;
}

std::vector<double> default_f0_probes() { return log_spaced(1.0, 1e-8, 33); }
std::vector<double> default_finf_probes() { return log_spaced(1.0, 1e8, 33); }

namespace {

GrowthEstimate estimate_growth(const Nonlinearity& f, const Grid& t_grid, const std::vector<double>& probes) {
    if (probes.empty()) throw DomainError("growth estimate needs at least one probe");
    GrowthEstimate est;
    est.kind = GrowthEstimate::Kind::probed;
    for (double u : probes) {
        if (!(u > 0.0)) throw DomainError("growth probes must be positive");
        double ratio = -kInfinity;
        for (double t : t_grid.nodes()) {
            const double v = f(t, u);
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "f(" << t << ", " << u << ") is not finite";
                throw NonFiniteEvaluation(msg.str());
            }
            ratio = std::max(ratio, v / u);
        }
        est.probe_points.emplace_back(u, ratio);
    }
    const std::size_t tail = std::min<std::size_t>(3, est.probe_points.size());
    double value = -kInfinity;
    for (std::size_t i = est.probe_points.size() - tail; i < est.probe_points.size(); ++i)
        value = std::max(value, est.probe_points[i].second);
    bool vanishing = est.probe_points.back().second < 1.0 / kUnboundedRatio;
    for (std::size_t i = est.probe_points.size() - tail + 1; i < est.probe_points.size(); ++i)
        vanishing = vanishing && est.probe_points[i].second < est.probe_points[i - 1].second;
    if (value > kUnboundedRatio) est.value = kInfinity;
    else if (vanishing) est.value = 0.0;
    else est.value = std::max(value, 0.0);
    return est;
}

void require_nonnegative(double value, double s) {
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "a(" << s << ") is not finite";
        throw NonFiniteEvaluation(msg.str());
    }
    if (value < 0.0) {
        std::ostringstream msg;
        msg << "a(" << s << ") = " << value << " is negative";
        throw NegativeData(msg.str());
    }
}

double weighted_integral(const Coefficient& a, double lo, double hi, int intervals) {
    if (hi <= lo) return 0.0;
    return simpson(
        [&](double s) {
            const double av = a(s);
            require_nonnegative(av, s);
            return s * (1.0 - s) * av;
        },
        lo, hi, intervals);
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

GrowthEstimate estimate_f0(const Nonlinearity& f, const Grid& t_grid, const std::vector<double>& u_probes) {
    return estimate_growth(f, t_grid, u_probes);
}

GrowthEstimate estimate_finf(const Nonlinearity& f, const Grid& t_grid, const std::vector<double>& u_probes) {
    return estimate_growth(f, t_grid, u_probes);
}

double compute_M1(const BvpParams& params, const Coefficient& a, const Grid& grid) {
    const int n = grid.intervals();
    return params.beta * weighted_integral(a, 0.0, params.tau, n) + weighted_integral(a, params.tau, 1.0, n);
}

double compute_M2(const BvpParams&, const Coefficient& a, const Grid& grid) {
    return weighted_integral(a, 0.0, 1.0, grid.intervals());
}

std::optional<double> probe_threshold_crossing(const GrowthEstimate& finf, double threshold) {
    const auto& pts = finf.probe_points;
    if (pts.empty() || !(pts.back().second < threshold)) return std::nullopt;
    std::size_t first = pts.size() - 1;
    while (first > 0 && pts[first - 1].second < threshold) --first;
    return pts[first].first;
}

double max_f_on_box(const Nonlinearity& f, const Grid& t_grid, double N, int samples) {
    double best = -kInfinity;
    for (int k = 0; k < samples; ++k) {
        const double u = samples == 1 ? 0.0 : N * k / (samples - 1);
        for (double t : t_grid.nodes()) {
            const double v = f(t, u);
            if (!std::isfinite(v)) throw NonFiniteEvaluation("f is not finite on [0,1]×[0,N]");
            best = std::max(best, v);
        }
    }
    return best;
}

std::optional<double> theorem2_slack(const BvpParams& params, double M1, const ConeConstants& cone,
                                     const GrowthEstimate& finf) {
    if (!finf.finite()) return std::nullopt;
    const double scale = params.lambda * cone.k1 * M1;
    const double full = scale > 0.0 ? 0.5 / scale - finf.value : kInfinity;
    if (!(full > 0.0)) return std::nullopt;
    return finf.value > 0.0 ? std::min(1e-3 * finf.value, full) : full;
}

ConditionReport check_theorems(const BvpParams& params, double M1, double M2, const ConeConstants& cone,
                               const GrowthEstimate& f0, const GrowthEstimate& finf, std::optional<double> fmax,
                               std::optional<double> N) {
    ConditionReport r;
    r.M1 = M1;
    r.M2 = M2;
    r.cone = cone;
    r.f0 = f0;
    r.finf = finf;
    r.lambda = params.lambda;
    r.N = N;
    r.fmax = fmax;
    r.notes.emplace_back("both theorem conditions are sufficient only; a false verdict does not imply that no "
                         "positive solution exists");

    const double k1M1 = cone.k1 * M1;
    if (f0.finite()) {
        const double rate = f0.value * k1M1;
        r.theorem1_applicable = params.lambda * rate < 1.0;
        r.lambda_max_thm1 = rate > 0.0 ? 1.0 / rate : kInfinity;
    } else {
        r.notes.emplace_back("f0 is infinite: theorem 1 does not apply for any lambda");
    }
    if (finf.finite()) {
        const double rate = finf.value * k1M1;
        r.theorem2_applicable = params.lambda * rate < 0.5;
        r.lambda_max_thm2 = rate > 0.0 ? 0.5 / rate : kInfinity;
    } else {
        r.notes.emplace_back("finf is infinite: theorem 2 does not apply for any lambda");
    }

    if (N && fmax) {
        r.B_thm2 = *N + 1.0 + 2.0 * params.lambda * cone.k1 * M2 * *fmax;
    } else {
        r.notes.emplace_back("B for theorem 2 not computed: N or max f on [0,1]x[0,N] unavailable");
    }

    if (f0.kind == GrowthEstimate::Kind::probed)
        r.notes.emplace_back("f0 estimated by probing f(t,u)/u down to u = " +
                             format_number(f0.probe_points.empty() ? 0.0 : f0.probe_points.back().first) +
                             " (heuristic; supply f0 to override)");
    if (finf.kind == GrowthEstimate::Kind::probed)
        r.notes.emplace_back("finf estimated by probing f(t,u)/u up to u = " +
                             format_number(finf.probe_points.empty() ? 0.0 : finf.probe_points.back().first) +
                             " (heuristic; supply finf to override)");
    if (!cone.lower_bound_certified)
        r.notes.emplace_back("eta lies outside [theta, 1-theta]: the k2 lower bound on G is not guaranteed");
    if (!(M2 > 0.0)) r.notes.emplace_back("a vanishes on the sampled grid: hypothesis H2 (a(t0) > 0) fails");
    return r;
}

}  // namespace dbvp
