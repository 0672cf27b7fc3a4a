#include "dbvp/config.hpp"

#include "dbvp/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dbvp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size())
        throw ConfigError("key '" + std::string(key) + "': '" + std::string(value) + "' is not a number");
    return out;
}

int to_int(std::string_view key, std::string_view value) {
    int out = 0;
    const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || end != value.data() + value.size())
        throw ConfigError("key '" + std::string(key) + "': '" + std::string(value) + "' is not an integer");
    return out;
}

std::string unquote(std::string_view v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return std::string(v.substr(1, v.size() - 2));
    return std::string(v);
}

// Drops a trailing comment unless the '#' sits inside quotes.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

}  // namespace

ProblemConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
    ProblemConfig cfg;
    bool seen_alpha = false, seen_beta = false, seen_eta = false, seen_tau = false, seen_lambda = false;
    bool seen_f = false;

    auto resolve = [&](std::string_view v) {
        std::filesystem::path p(unquote(v));
        return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(strip_comment(line));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty value for '" +
                                             std::string(key) + "'");

        if (key == "alpha") { cfg.params.alpha = to_double(key, value); seen_alpha = true; }
        else if (key == "beta") { cfg.params.beta = to_double(key, value); seen_beta = true; }
        else if (key == "eta") { cfg.params.eta = to_double(key, value); seen_eta = true; }
        else if (key == "tau") { cfg.params.tau = to_double(key, value); seen_tau = true; }
        else if (key == "lambda") { cfg.params.lambda = to_double(key, value); seen_lambda = true; }
        else if (key == "a") cfg.a_source = unquote(value);
        else if (key == "f") { cfg.f_source = unquote(value); seen_f = true; }
        else if (key == "theta") cfg.theta = to_double(key, value);
        else if (key == "n") cfg.solver.n = to_int(key, value);
        else if (key == "tol") cfg.solver.tol = to_double(key, value);
        else if (key == "max_iter") cfg.solver.max_iter = to_int(key, value);
        else if (key == "relaxation") cfg.solver.relaxation = to_double(key, value);
        else if (key == "initial") {
            const std::string v = unquote(value);
            if (v == "zero") cfg.solver.initial = InitialGuess::zero();
            else if (v.rfind("constant:", 0) == 0)
                cfg.solver.initial = InitialGuess::constant_value(to_double(key, std::string_view(v).substr(9)));
            else throw ConfigError("initial must be 'zero' or 'constant:<value>'");
        }
        else if (key == "f0") cfg.f0 = to_double(key, value);
        else if (key == "finf") cfg.finf = to_double(key, value);
        else if (key == "N") cfg.N = to_double(key, value);
        else if (key == "fmax") cfg.fmax = to_double(key, value);
        else if (key == "solution_csv") cfg.solution_csv = resolve(value);
        else if (key == "report") cfg.report = resolve(value);
        else if (key == "sweep_csv") cfg.sweep_csv = resolve(value);
        else throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }

    auto require = [](bool seen, const char* key) {
        if (!seen) throw ConfigError(std::string("missing required key '") + key + "'");
    };
    require(seen_alpha, "alpha");
    require(seen_beta, "beta");
    require(seen_eta, "eta");
    require(seen_tau, "tau");
    require(seen_lambda, "lambda");
    require(seen_f, "f");
    if (cfg.solver.n < 2 || cfg.solver.n % 2 != 0) throw ConfigError("n must be an even integer ≥ 2");
    if (!(cfg.theta > 0.0 && cfg.theta < 0.5)) throw ConfigError("theta must lie in (0, 1/2)");
    cfg.solver.validate();
    return cfg;
}

ProblemConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), file.parent_path());
}

Coefficient Problem::a() const {
    return [e = a_expr](double t) { return e.eval(t); };
}

Nonlinearity Problem::f() const {
    return [e = f_expr](double t, double u) { return e.eval(t, u); };
}

Problem compile_problem(const ProblemConfig& config) {
    validate(config.params);
    return Problem{config.params, expr::parse(config.a_source, expr::AllowedVariables::t_only()),
                   expr::parse(config.f_source, expr::AllowedVariables::t_and_u())};
}

}  // namespace dbvp
