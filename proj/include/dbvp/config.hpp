#pragma once

#include "dbvp/expr.hpp"
#include "dbvp/greens.hpp"
#include "dbvp/operator.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace dbvp {

/// Contents of a problem file: flat `key = value` lines, `#` starts a
/// comment, expression values may be wrapped in double quotes.
///
///   alpha = 1        beta = 0       eta = 0.5     tau = 0.25    lambda = 1
///   a = "1"          f = "u/(1+u)+1"
///   theta = 0.25     n = 512
///   tol = 1e-10      max_iter = 500  relaxation = 1
///   initial = zero | constant:<c>
///   f0, finf, N, fmax           optional certified overrides for `check`
///   solution_csv, report, sweep_csv   output paths, relative to the file
struct ProblemConfig {
    BvpParams params;
    std::string a_source = "1";
    std::string f_source;
    double theta = 0.25;
    SolverConfig solver;

    std::optional<double> f0;
    std::optional<double> finf;
    std::optional<double> N;
    std::optional<double> fmax;

    std::optional<std::filesystem::path> solution_csv;
    std::optional<std::filesystem::path> report;
    std::optional<std::filesystem::path> sweep_csv;
};

/// Throws ConfigError on unknown keys, malformed numbers or missing keys.
/// Relative output paths are resolved against `base_dir`.
ProblemConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
ProblemConfig load_config(const std::filesystem::path& file);

/// Parsed a(t) and f(t,u) bound into callables.
struct Problem {
    BvpParams params;
    expr::Expr a_expr;
    expr::Expr f_expr;

    Coefficient a() const;
    Nonlinearity f() const;
};

/// Validates the parameters (DegenerateParams) and parses both expressions.
Problem compile_problem(const ProblemConfig& config);

}  // namespace dbvp
