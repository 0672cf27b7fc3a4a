#include "dbvp/greens.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <cmath>

namespace dbvp {

std::optional<std::string> find_violation(const BvpParams& p, bool require_positive_lambda) {
    auto finite = [](double x) { return std::isfinite(x); };
    if (!finite(p.alpha) || !finite(p.beta) || !finite(p.eta) || !finite(p.tau) || !finite(p.lambda))
        return "parameters must be finite";
    if (!(p.eta > 0.0 && p.eta < 1.0)) return "eta outside (0,1)";
    if (!(p.tau > 0.0 && p.tau < 1.0)) return "tau outside (0,1)";
    if (require_positive_lambda) {
        if (!(p.lambda > 0.0)) return "lambda ≤ 0";
    } else if (!(p.lambda >= 0.0)) {
        return "lambda < 0";
    }
    if (!(p.alpha >= 0.0)) return "alpha < 0";
    if (!(p.alpha * p.eta < 1.0)) return "alpha ≥ 1/η";
    if (!(p.beta >= 0.0)) return "beta < 0";
    const double bound = (1.0 - p.alpha * p.eta) / (1.0 - p.eta);
    if (!(p.beta < bound)) return "beta ≥ (1−αη)/(1−η)";
    if (!((1.0 - p.alpha * p.eta) - p.beta * (1.0 - p.eta) > 0.0))
        return "beta ≥ (1−αη)/(1−η)";
    return std::nullopt;
}

void validate(const BvpParams& params, bool require_positive_lambda) {
    if (auto v = find_violation(params, require_positive_lambda))
        throw DegenerateParams("invalid parameters: " + *v);
}

double denom(const BvpParams& p) {
    if (!(p.eta > 0.0 && p.eta < 1.0)) throw DomainError("eta outside (0,1)");
    const double d = (1.0 - p.alpha * p.eta) - p.beta * (1.0 - p.eta);
    if (!(d > 0.0))
        throw DegenerateParams("(1−αη) − β(1−η) ≤ 0: beta ≥ (1−αη)/(1−η)");
    return d;
}

double g_kernel(double t, double s) {
    if (!(t >= 0.0 && t <= 1.0) || !(s >= 0.0 && s <= 1.0))
        throw DomainError("g_kernel arguments must lie in [0,1]");
    return s <= t ? s * (1.0 - t) : t * (1.0 - s);
}

double green(const BvpParams& p, double t, double s) {
    const double d = denom(p);
    return g_kernel(t, s) + (p.beta + (p.alpha - p.beta) * t) / d * g_kernel(p.eta, s);
}

ConeConstants cone_constants(const BvpParams& p, double theta) {
    if (!(theta > 0.0 && theta < 0.5)) throw DomainError("theta outside (0, 1/2)");
    const double d = denom(p);
    const double diff = p.alpha - p.beta;

    ConeConstants c;
    c.theta = theta;
    c.k1 = 1.0 + std::max(p.alpha, p.beta) / d;
    c.k2 = theta * (1.0 + (p.beta + std::min(diff * theta, diff * (1.0 - theta))) / d);
    c.gamma = c.k2 / c.k1;
    c.lower_bound_certified = p.eta >= theta && p.eta <= 1.0 - theta;
    if (!(c.k2 > 0.0 && c.k2 <= c.k1))
        throw DegenerateParams("cone constants violate 0 < k2 ≤ k1");
    return c;
}

}  // namespace dbvp
