#include "dbvp/operator.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dbvp {

namespace {

constexpr double kUndershootTolerance = 1e-8;
constexpr double kRelaxationFloor = 1.0 / 16.0;
constexpr int kGrowthPatience = 5;
constexpr double kDivergenceCap = 1e100;

double sup_diff(std::span<const double> x, std::span<const double> y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

SolutionFunction initial_iterate(const BvpParams& params, const Grid& grid, const InitialGuess& guess) {
    switch (guess.kind) {
    case InitialGuess::Kind::zero:
        return SolutionFunction(grid);
    case InitialGuess::Kind::constant:
        return SolutionFunction::with_history(params, grid, std::vector<double>(grid.size(), guess.constant));
    case InitialGuess::Kind::user:
        if (guess.values.size() != grid.size())
            throw LengthMismatch("initial iterate has " + std::to_string(guess.values.size()) +
                                 " values, grid has " + std::to_string(grid.size()));
        return SolutionFunction::with_history(params, grid, guess.values);
    }
    return SolutionFunction(grid);
}

}  // namespace

SolutionFunction::SolutionFunction(const Grid& g, std::vector<double> v, double history)
    : grid(g), values(std::move(v)), history_value(history) {
    if (values.size() != grid.size()) throw LengthMismatch("solution values do not match grid");
}

SolutionFunction SolutionFunction::with_history(const BvpParams& params, const Grid& g, std::vector<double> v) {
    SolutionFunction u(g, std::move(v), 0.0);
    u.history_value = params.beta * u.at(params.eta);
    return u;
}

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw ConfigError("solver tol must be > 0");
    if (max_iter < 1) throw ConfigError("solver max_iter must be ≥ 1");
    if (!(relaxation > 0.0 && relaxation <= 1.0)) throw ConfigError("solver relaxation must lie in (0,1]");
}

double delayed_value(const SolutionFunction& u, double s, double tau) {
    const double shifted = s - tau;
    if (shifted <= 0.0) return u.history_value;
    return u.at(shifted);
}

SolutionFunction apply_T(const BvpParams& params, const Coefficient& a, const Nonlinearity& f,
                         const SolutionFunction& u) {
    const Grid& grid = u.grid;
    std::vector<double> y(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double s = grid.node(j);
        double lagged = delayed_value(u, s, params.tau);
        if (!std::isfinite(lagged) || lagged < -kUndershootTolerance) {
            std::ostringstream msg;
            msg << "delayed value u(" << s - params.tau << ") = " << lagged << " outside the domain of f";
            throw NonFiniteEvaluation(msg.str());
        }
        lagged = std::max(lagged, 0.0);

        const double av = a(s);
        const double fv = f(s, lagged);
        if (!std::isfinite(av) || !std::isfinite(fv)) {
            std::ostringstream msg;
            msg << "non-finite a or f at s = " << s << " (a = " << av << ", f = " << fv << ")";
            throw NonFiniteEvaluation(msg.str());
        }
        if (av < 0.0 || fv < 0.0) {
            std::ostringstream msg;
            msg << "negative data at s = " << s << " (a = " << av << ", f = " << fv << ")";
            throw NegativeData(msg.str());
        }
        y[j] = params.lambda * av * fv;
    }
    return SolutionFunction::with_history(params, grid, green_apply(params, grid, y));
}

SolveResult picard_solve(const BvpParams& params, const Coefficient& a, const Nonlinearity& f,
                         const SolverConfig& config) {
    validate(params);
    config.validate();
    const Grid grid(config.n);

    SolveResult result{initial_iterate(params, grid, config.initial), {}};
    SolutionFunction& u = result.solution;
    SolveDiagnostics& diag = result.diagnostics;

    double omega = config.relaxation;
    double previous = std::numeric_limits<double>::infinity();
    int growth = 0;

    for (int k = 1; k <= config.max_iter; ++k) {
        const SolutionFunction next = apply_T(params, a, f, u);
        const double residual = sup_diff(next.values, u.values);
        diag.iterations = k;
        diag.final_residual = residual;
        diag.residual_history.push_back(residual);
        diag.final_relaxation = omega;

        if (residual <= config.tol) {
            diag.converged = true;
            diag.message = "converged";
            return result;
        }
        if (!std::isfinite(residual)) {
            diag.message = "diverged: non-finite residual";
            return result;
        }

        growth = residual > previous ? growth + 1 : 0;
        previous = residual;
        if (growth >= kGrowthPatience) {
            if (omega <= kRelaxationFloor) {
                diag.message = "diverged: residual kept growing at the relaxation floor";
                return result;
            }
            omega = std::max(omega / 2.0, kRelaxationFloor);
            growth = 0;
        }

        for (std::size_t i = 0; i < u.values.size(); ++i)
            u.values[i] = (1.0 - omega) * u.values[i] + omega * next.values[i];
        u.history_value = (1.0 - omega) * u.history_value + omega * next.history_value;

        if (!(sup_norm_full(u) <= kDivergenceCap)) {
            diag.message = "diverged: iterate exceeded 1e100";
            return result;
        }
    }
    diag.message = "max_iter reached";
    return result;
}

const SolveResult& require_converged(const SolveResult& result) {
    if (!result.diagnostics.converged) {
        std::ostringstream msg;
        msg << "Picard iteration did not converge after " << result.diagnostics.iterations
            << " iterations (residual " << result.diagnostics.final_residual << "): " << result.diagnostics.message;
        throw NotConverged(msg.str());
    }
    return result;
}

bool cone_check(const SolutionFunction& u, const ConeConstants& c) {
    constexpr double eps = 1e-12;
    double window_min = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.grid.size(); ++i) {
        const double t = u.grid.node(i);
        if (t >= c.theta - eps && t <= 1.0 - c.theta + eps) window_min = std::min(window_min, u.values[i]);
    }
    return window_min >= c.gamma * sup_norm_01(u) - 1e-10;
}

double sup_norm_01(const SolutionFunction& u) {
    double m = 0.0;
    for (double v : u.values) m = std::max(m, std::abs(v));
    return m;
}

double sup_norm_full(const SolutionFunction& u) {
    return std::max(sup_norm_01(u), std::abs(u.history_value));
}

}  // namespace dbvp
