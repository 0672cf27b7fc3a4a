#pragma once

#include "dbvp/conditions.hpp"
#include "dbvp/config.hpp"
#include "dbvp/greens.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dbvp::cli {

enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kNotConverged = 2,
    kVerifyViolation = 3,
};

/// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

/// Writes to `path.tmp` and renames over `path`.
void write_atomically(const std::filesystem::path& path, const std::string& content);

// ---- verify ---------------------------------------------------------------

struct InequalityResult {
    std::string name;
    double worst_slack = kInfinity;
    std::size_t violations = 0;
    std::string first_violation;  // params and (t, s) of the first failure
};

struct VerifySummary {
    int cases = 0;
    std::vector<InequalityResult> inequalities;
    bool passed() const;
};

/// Randomized kernel-inequality suite on 101×101 (t,s) grids with slack
/// 1e-12. Case i uses θ = {0.1, 0.25, 0.4}[i mod 3] and draws η inside
/// [θ, 1-θ]. `k1_scale` multiplies k1 before the upper-bound check (test
/// hook for mutation testing; 1 in normal use).
VerifySummary run_verify(std::uint64_t seed, int cases, double k1_scale = 1.0);

/// Checks one parameter tuple and θ, folding results into `summary`.
void verify_case(const BvpParams& params, double theta, double k1_scale, VerifySummary& summary);

// ---- check ----------------------------------------------------------------

/// Condition report for a config: M1, M2, cone constants, growth estimates
/// (user overrides win), N, max f and B.
ConditionReport evaluate_conditions(const Problem& problem, const ProblemConfig& config);

std::string format_report(const ConditionReport& report);

// ---- sweep ----------------------------------------------------------------

struct SweepAxis {
    std::string name;  // lambda, alpha, beta, eta or tau
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;

    double value(int k) const;
};

/// Parses "name:lo:hi:steps". Throws ConfigError.
SweepAxis parse_axis(const std::string& spec);

struct SweepRow {
    std::vector<double> axis_values;
    std::string status;  // ok, invalid, error
    std::optional<bool> thm1_applicable;
    std::optional<bool> thm2_applicable;
    std::optional<bool> picard_converged;
    std::optional<double> sup_norm;
    std::optional<bool> cone_check;
};

/// Rows in row-major axis order; rows are evaluated on worker threads and
/// merged by index, so output is independent of scheduling.
std::vector<SweepRow> run_sweep(const ProblemConfig& config, const std::vector<SweepAxis>& axes,
                                unsigned threads = 0);
std::string format_sweep_csv(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows);

// ---- command entry points -------------------------------------------------

int cmd_solve(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int cmd_verify(std::uint64_t seed, int cases, std::ostream& out, std::ostream& err, double k1_scale = 1.0);
int cmd_check(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);
int cmd_sweep(const std::filesystem::path& config_path, const std::vector<std::string>& axis_specs,
              std::ostream& out, std::ostream& err);

}  // namespace dbvp::cli
