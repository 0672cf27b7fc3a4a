#include "dbvp/cli.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <ostream>
#include <sstream>
#include <thread>

namespace dbvp::cli {

namespace {

double& axis_target(BvpParams& p, const std::string& name) {
    if (name == "lambda") return p.lambda;
    if (name == "alpha") return p.alpha;
    if (name == "beta") return p.beta;
    if (name == "eta") return p.eta;
    return p.tau;
}

template <typename T>
T parse_field(const std::string& spec, std::string_view field, const char* what) {
    T out{};
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
    if (ec != std::errc{} || end != field.data() + field.size() || field.empty())
        throw ConfigError("axis '" + spec + "': bad " + what + " '" + std::string(field) + "'");
    return out;
}

// Growth estimates depend only on f, so every row shares them.
struct SharedEstimates {
    GrowthEstimate f0;
    GrowthEstimate finf;
};

SweepRow evaluate_row(const ProblemConfig& config, const Problem& base, const SharedEstimates& growth,
                      const std::vector<SweepAxis>& axes, const std::vector<int>& index) {
    SweepRow row;
    BvpParams p = base.params;
    for (std::size_t k = 0; k < axes.size(); ++k) {
        const double v = axes[k].value(index[k]);
        row.axis_values.push_back(v);
        axis_target(p, axes[k].name) = v;
    }
    if (find_violation(p)) {
        row.status = "invalid";
        return row;
    }
    try {
        const Grid grid(config.solver.n);
        const auto a = base.a();
        const auto f = base.f();
        const double M1 = compute_M1(p, a, grid);
        const double M2 = compute_M2(p, a, grid);
        const ConeConstants cone = cone_constants(p, config.theta);
        const auto report = check_theorems(p, M1, M2, cone, growth.f0, growth.finf, std::nullopt, std::nullopt);
        row.thm1_applicable = report.theorem1_applicable;
        row.thm2_applicable = report.theorem2_applicable;

        row.picard_converged = false;
        const auto solved = picard_solve(p, a, f, config.solver);
        row.picard_converged = solved.diagnostics.converged;
        if (solved.diagnostics.converged) {
            row.sup_norm = sup_norm_01(solved.solution);
            row.cone_check = cone_check(solved.solution, cone);
        }
        row.status = "ok";
    } catch (const Error&) {
        row.status = "error";
    }
    return row;
}

std::string flag(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

}  // namespace

double SweepAxis::value(int k) const {
    if (steps <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
}

SweepAxis parse_axis(const std::string& spec) {
    std::vector<std::string_view> parts;
    std::string_view rest(spec);
    while (true) {
        const auto colon = rest.find(':');
        parts.push_back(rest.substr(0, colon));
        if (colon == std::string_view::npos) break;
        rest.remove_prefix(colon + 1);
    }
    if (parts.size() != 4) throw ConfigError("axis '" + spec + "': expected name:lo:hi:steps");
    SweepAxis axis;
    axis.name = std::string(parts[0]);
    if (axis.name != "lambda" && axis.name != "alpha" && axis.name != "beta" && axis.name != "eta" &&
        axis.name != "tau")
        throw ConfigError("axis '" + spec + "': name must be one of lambda, alpha, beta, eta, tau");
    axis.lo = parse_field<double>(spec, parts[1], "lower bound");
    axis.hi = parse_field<double>(spec, parts[2], "upper bound");
    axis.steps = parse_field<int>(spec, parts[3], "step count");
    if (axis.steps < 1) throw ConfigError("axis '" + spec + "': steps must be ≥ 1");
    return axis;
}

std::vector<SweepRow> run_sweep(const ProblemConfig& config, const std::vector<SweepAxis>& axes, unsigned threads) {
    if (axes.empty() || axes.size() > 2) throw ConfigError("sweep takes one or two axes");
    const Problem base{config.params, expr::parse(config.a_source, expr::AllowedVariables::t_only()),
                       expr::parse(config.f_source, expr::AllowedVariables::t_and_u())};
    const Grid grid(config.solver.n);
    const auto f = base.f();
    const SharedEstimates growth{config.f0 ? GrowthEstimate::user(*config.f0) : estimate_f0(f, grid),
                                 config.finf ? GrowthEstimate::user(*config.finf) : estimate_finf(f, grid)};

    std::size_t total = 1;
    for (const auto& ax : axes) total *= static_cast<std::size_t>(ax.steps);

    std::vector<SweepRow> rows(total);
    auto index_of = [&](std::size_t r) {
        std::vector<int> idx(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            idx[k] = static_cast<int>(r % static_cast<std::size_t>(axes[k].steps));
            r /= static_cast<std::size_t>(axes[k].steps);
        }
        return idx;
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t r = next++; r < total; r = next++)
            rows[r] = evaluate_row(config, base, growth, axes, index_of(r));
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

std::string format_sweep_csv(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    for (const auto& ax : axes) os << ax.name << ',';
    os << "status,thm1_applicable,thm2_applicable,picard_converged,sup_norm,cone_check\n";
    for (const auto& row : rows) {
        for (double v : row.axis_values) os << format_number(v) << ',';
        os << row.status << ',' << flag(row.thm1_applicable) << ',' << flag(row.thm2_applicable) << ','
           << flag(row.picard_converged) << ',' << (row.sup_norm ? format_number(*row.sup_norm) : "") << ','
           << flag(row.cone_check) << '\n';
    }
    return os.str();
}

int cmd_sweep(const std::filesystem::path& config_path, const std::vector<std::string>& axis_specs,
              std::ostream& out, std::ostream& err) {
    ProblemConfig config;
    std::vector<SweepAxis> axes;
    try {
        config = load_config(config_path);
        for (const auto& spec : axis_specs) axes.push_back(parse_axis(spec));
        if (axes.empty() || axes.size() > 2) throw ConfigError("sweep takes one or two --axis options");
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        const std::string csv = format_sweep_csv(axes, run_sweep(config, axes));
        if (config.sweep_csv) write_atomically(*config.sweep_csv, csv);
        else out << csv;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }
    return kOk;
}

}  // namespace dbvp::cli
