#pragma once

#include <optional>
#include <string>

namespace dbvp {

/// Constants of the delay problem
///
///   u''(t) + λ a(t) f(t, u(t-τ)) = 0,   t ∈ [0,1]
///   u(t) = β u(η),                      t ∈ [-τ,0]
///   u(1) = α u(η)
///
/// Admissible when 0 < η < 1, 0 < τ < 1, λ > 0, 0 ≤ α < 1/η and
/// 0 ≤ β < (1-αη)/(1-η).
struct BvpParams {
    double alpha = 0.0;
    double beta = 0.0;
    double eta = 0.5;
    double tau = 0.25;
    double lambda = 1.0;
};

/// Returns the first violated admissibility inequality, phrased as the
/// violation (e.g. "beta ≥ (1−αη)/(1−η)"), or nullopt when params are valid.
/// With `require_positive_lambda == false` the λ > 0 check is relaxed to λ ≥ 0.
std::optional<std::string> find_violation(const BvpParams& params,
                                          bool require_positive_lambda = true);

/// Throws DegenerateParams naming the violated inequality.
void validate(const BvpParams& params, bool require_positive_lambda = true);

/// (1-αη) - β(1-η). Throws DegenerateParams when the result is ≤ 0 and
/// DomainError when η is outside (0,1).
double denom(const BvpParams& params);

/// Dirichlet kernel: s(1-t) for s ≤ t, t(1-s) otherwise.
double g_kernel(double t, double s);

/// Three-point Green's function G(t,s) = g(t,s) + (β + (α-β)t)/denom · g(η,s).
double green(const BvpParams& params, double t, double s);

struct ConeConstants {
    double theta = 0.25;
    double k1 = 1.0;
    double k2 = 0.25;
    double gamma = 0.25;
    /// k2 is a valid lower bound for G on [θ,1-θ] only when η itself lies in
    /// that window; outside it the bound can fail.
    bool lower_bound_certified = true;
};

/// k1 = 1 + max{α,β}/denom,
/// k2 = θ[1 + (β + min{(α-β)θ, (α-β)(1-θ)})/denom], γ = k2/k1.
/// Throws DomainError for θ ∉ (0, 1/2).
ConeConstants cone_constants(const BvpParams& params, double theta);

}  // namespace dbvp
