#include "dbvp/cli.hpp"

#include "dbvp/error.hpp"

#include <ostream>
#include <sstream>

namespace dbvp::cli {

namespace {

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "none"; }

const char* kind_name(GrowthEstimate::Kind k) {
    return k == GrowthEstimate::Kind::user_supplied ? "user_supplied" : "probed";
}

std::string format_probes(const GrowthEstimate& est) {
    std::string out;
    for (const auto& [u, ratio] : est.probe_points) {
        if (!out.empty()) out += ' ';
        out += format_number(u) + ':' + format_number(ratio);
    }
    return out.empty() ? "none" : out;
}

}  // namespace

ConditionReport evaluate_conditions(const Problem& problem, const ProblemConfig& config) {
    const Grid grid(config.solver.n);
    const auto a = problem.a();
    const auto f = problem.f();
    const BvpParams& p = problem.params;

    const double M1 = compute_M1(p, a, grid);
    const double M2 = compute_M2(p, a, grid);
    const ConeConstants cone = cone_constants(p, config.theta);
    const GrowthEstimate f0 = config.f0 ? GrowthEstimate::user(*config.f0) : estimate_f0(f, grid);
    const GrowthEstimate finf = config.finf ? GrowthEstimate::user(*config.finf) : estimate_finf(f, grid);

    std::optional<double> N = config.N;
    if (!N) {
        if (const auto slack = theorem2_slack(p, M1, cone, finf)) {
            const GrowthEstimate& probes = finf.probe_points.empty() ? estimate_finf(f, grid) : finf;
            N = probe_threshold_crossing(probes, finf.value + *slack);
        }
    }
    std::optional<double> fmax = config.fmax;
    if (!fmax && N) fmax = max_f_on_box(f, grid, *N);

    ConditionReport report = check_theorems(p, M1, M2, cone, f0, finf, fmax, N);
    if (!config.N && N) report.notes.emplace_back("N probed: smallest probe beyond which f(t,u)/u stays below finf + eps");
    return report;
}

std::string format_report(const ConditionReport& r) {
    std::ostringstream os;
    auto line = [&](const char* key, const std::string& value) { os << key << " = " << value << "\n"; };
    auto flag = [](bool b) { return std::string(b ? "true" : "false"); };
    line("M1", format_number(r.M1));
    line("M2", format_number(r.M2));
    line("theta", format_number(r.cone.theta));
    line("k1", format_number(r.cone.k1));
    line("k2", format_number(r.cone.k2));
    line("gamma", format_number(r.cone.gamma));
    line("k2_bound_certified", flag(r.cone.lower_bound_certified));
    line("lambda", format_number(r.lambda));
    line("f0", format_number(r.f0.value));
    line("f0_kind", kind_name(r.f0.kind));
    line("f0_probes", format_probes(r.f0));
    line("finf", format_number(r.finf.value));
    line("finf_kind", kind_name(r.finf.kind));
    line("finf_probes", format_probes(r.finf));
    line("theorem1_applicable", flag(r.theorem1_applicable));
    line("lambda_max_thm1", format_optional(r.lambda_max_thm1));
    line("theorem2_applicable", flag(r.theorem2_applicable));
    line("lambda_max_thm2", format_optional(r.lambda_max_thm2));
    line("N", format_optional(r.N));
    line("fmax", format_optional(r.fmax));
    line("B_thm2", format_optional(r.B_thm2));
    for (const auto& note : r.notes) line("note", note);
    return os.str();
}

int cmd_check(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err) {
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
    std::string text;
    try {
        ConditionReport report = evaluate_conditions(problem, config);
        // Flag only: compare the computed solution against the theorem-2 ball.
        if (report.B_thm2) {
            try {
                const auto solved = picard_solve(problem.params, problem.a(), problem.f(), config.solver);
                if (solved.diagnostics.converged) {
                    const double norm = sup_norm_full(solved.solution);
                    report.notes.push_back("computed solution has sup norm " + format_number(norm) +
                                           (norm <= *report.B_thm2 ? " <= B" : " > B (outside the theorem-2 ball)"));
                }
            } catch (const Error& e) {
                report.notes.push_back(std::string("solution for the B comparison failed: ") + e.what());
            }
        }
        text = "command = check\n" + format_report(report);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        if (config.report) write_atomically(*config.report, text);
        else out << text;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}

}  // namespace dbvp::cli
