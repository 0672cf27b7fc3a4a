#pragma once

#include "dbvp/greens.hpp"
#include "dbvp/quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dbvp {

/// a(t), required nonnegative on [0,1].
using Coefficient = std::function<double(double)>;
/// f(t,u), required nonnegative on [0,1]×[0,∞).
using Nonlinearity = std::function<double(double, double)>;

/// Nodal values of u on [0,1] plus the constant history β·u(η) on [-τ,0].
struct SolutionFunction {
    Grid grid;
    std::vector<double> values;
    double history_value = 0.0;

    /// Zero function with zero history.
    explicit SolutionFunction(const Grid& g) : grid(g), values(g.size(), 0.0) {}
    SolutionFunction(const Grid& g, std::vector<double> v, double history);

    /// Wraps nodal values and sets history_value = β·u(η).
    static SolutionFunction with_history(const BvpParams& params, const Grid& g, std::vector<double> v);

    double at(double t) const { return interpolate(grid, values, t); }
};

struct InitialGuess {
    enum class Kind { zero, constant, user };
    Kind kind = Kind::zero;
    double constant = 0.0;
    std::vector<double> values;

    static InitialGuess zero() { return {}; }
    static InitialGuess constant_value(double c) { return {Kind::constant, c, {}}; }
    static InitialGuess user(std::vector<double> v) { return {Kind::user, 0.0, std::move(v)}; }
};

struct SolverConfig {
    int n = 512;
    double tol = 1e-10;
    int max_iter = 500;
    double relaxation = 1.0;
    InitialGuess initial;

    /// Throws ConfigError unless tol > 0, max_iter ≥ 1 and 0 < relaxation ≤ 1.
    void validate() const;
};

struct SolveDiagnostics {
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    double final_relaxation = 1.0;
    std::vector<double> residual_history;
    std::string message;
};

struct SolveResult {
    SolutionFunction solution;
    SolveDiagnostics diagnostics;
};

/// u(s-τ): the history value when s-τ ≤ 0, the cubic interpolant otherwise.
double delayed_value(const SolutionFunction& u, double s, double tau);

/// (Tu)(tᵢ) = λ ∫ G(tᵢ,s) a(s) f(s, u(s-τ)) ds with output history β·(Tu)(η).
///
/// Delayed arguments use the input's history. Undershoot of the delayed
/// value down to -1e-8 is clamped to 0 before calling f; anything lower is a
/// NonFiniteEvaluation. Throws NegativeData when a or f is negative at a node.
SolutionFunction apply_T(const BvpParams& params, const Coefficient& a, const Nonlinearity& f,
                         const SolutionFunction& u);

/// Relaxed Picard iteration u ← (1-ω)u + ωTu.
///
/// Stops when ‖Tu - u‖∞ ≤ tol (returning that u) or after max_iter
/// applications of T. Five consecutive residual increases halve ω, down to
/// 1/16; five more increases at the floor, or an iterate above 1e100, end
/// the solve unconverged. Non-convergence is reported in the diagnostics
/// rather than thrown; use require_converged() for the throwing variant.
SolveResult picard_solve(const BvpParams& params, const Coefficient& a, const Nonlinearity& f,
                         const SolverConfig& config);

/// Throws NotConverged carrying the diagnostic message when the solve failed.
const SolveResult& require_converged(const SolveResult& result);

/// min over nodes in [θ,1-θ] of u ≥ γ‖u‖₁ - 1e-10.
bool cone_check(const SolutionFunction& u, const ConeConstants& constants);

/// sup |u| over the [0,1] nodes.
double sup_norm_01(const SolutionFunction& u);
/// sup |u| over [-τ,1], i.e. including the history value.
double sup_norm_full(const SolutionFunction& u);

}  // namespace dbvp
