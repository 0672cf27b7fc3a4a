#include "dbvp/cli.hpp"

#include "dbvp/error.hpp"
#include "dbvp/oracle.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace dbvp::cli {

namespace {

std::string solution_csv(const SolutionFunction& u, double tau) {
    std::ostringstream os;
    os << "t,u\n";
    // history segment [-τ, 0) at spacing no coarser than the grid
    const int rows = static_cast<int>(std::ceil(tau / u.grid.h() - 1e-9));
    for (int j = 0; j < rows; ++j) {
        const double t = -tau + tau * j / rows;
        os << format_number(t) << ',' << format_number(u.history_value) << '\n';
    }
    for (std::size_t i = 0; i < u.grid.size(); ++i)
        os << format_number(u.grid.node(i)) << ',' << format_number(u.values[i]) << '\n';
    return os.str();
}

}  // namespace

int cmd_solve(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
    ProblemConfig config;
    std::optional<Problem> compiled;
    try {
        config = load_config(config_path);
        compiled = compile_problem(config);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    const Problem& problem = *compiled;
    const BvpParams& p = problem.params;
    const auto a = problem.a();
    const auto f = problem.f();

    std::ostringstream report;
    report << "command = solve\n";

    std::optional<SolveResult> picard;
    std::optional<SolutionFunction> solution;
    std::string method;
    try {
        picard = picard_solve(p, a, f, config.solver);
        const auto& d = picard->diagnostics;
        report << "picard_converged = " << (d.converged ? "true" : "false") << "\n"
               << "picard_iterations = " << d.iterations << "\n"
               << "picard_residual = " << format_number(d.final_residual) << "\n"
               << "picard_relaxation = " << format_number(d.final_relaxation) << "\n"
               << "picard_message = " << d.message << "\n";
        if (d.converged) {
            solution = picard->solution;
            method = "picard";
        }
    } catch (const NegativeData& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const Error& e) {
        report << "picard_converged = false\npicard_message = " << e.what() << "\n";
    }

    if (!solution) {
        try {
            NewtonOptions opts;
            if (picard) opts.initial = picard->solution.values;
            const Grid grid(config.solver.n);
            auto newton = newton_solve(p, a, f, grid, opts);
            solution = SolutionFunction::with_history(p, grid, std::move(newton.values));
            method = "newton_fallback";
            report << "newton_iterations = " << newton.iterations << "\n"
                   << "newton_residual = " << format_number(newton.residual) << "\n";
        } catch (const Error& e) {
            report << "newton_message = " << e.what() << "\n";
        }
    }

    if (!solution) {
        report << "converged = false\n";
        err << "error: Picard iteration and the Newton fallback both failed to converge\n";
        try {
            if (config.report) write_atomically(*config.report, report.str());
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
        }
        return kNotConverged;
    }

    const SolutionFunction& u = *solution;
    const double u_eta = u.at(p.eta);
    const ConeConstants cone = cone_constants(p, config.theta);
    report << "converged = true\n"
           << "method = " << method << "\n"
           << "n = " << config.solver.n << "\n"
           << "history_value = " << format_number(u.history_value) << "\n"
           << "sup_norm_01 = " << format_number(sup_norm_01(u)) << "\n"
           << "sup_norm_full = " << format_number(sup_norm_full(u)) << "\n"
           << "bc_residual_left = " << format_number(std::abs(u.values.front() - p.beta * u_eta)) << "\n"
           << "bc_residual_right = " << format_number(std::abs(u.values.back() - p.alpha * u_eta)) << "\n"
           << "theta = " << format_number(cone.theta) << "\n"
           << "gamma = " << format_number(cone.gamma) << "\n"
           << "cone_check = " << (cone_check(u, cone) ? "true" : "false") << "\n";
    try {
        const auto next = apply_T(p, a, f, u);
        double residual = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i)
            residual = std::max(residual, std::abs(next.values[i] - u.values[i]));
        report << "fixed_point_residual = " << format_number(residual) << "\n";
    } catch (const Error& e) {
        report << "fixed_point_residual = none\nnote = " << e.what() << "\n";
    }

    try {
        const std::string csv = solution_csv(u, p.tau);
        if (config.solution_csv) write_atomically(*config.solution_csv, csv);
        else out << csv;
        if (config.report) write_atomically(*config.report, report.str());
        else err << report.str();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}

}  // namespace dbvp::cli
