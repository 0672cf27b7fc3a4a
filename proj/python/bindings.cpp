#include "dbvp/cli.hpp"
#include "dbvp/conditions.hpp"
#include "dbvp/config.hpp"
#include "dbvp/error.hpp"
#include "dbvp/expr.hpp"
#include "dbvp/greens.hpp"
#include "dbvp/operator.hpp"
#include "dbvp/oracle.hpp"
#include "dbvp/quadrature.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace dbvp;

namespace {

Problem make_problem(const BvpParams& params, const std::string& a, const std::string& f) {
    return Problem{params, expr::parse(a, expr::AllowedVariables::t_only()),
                   expr::parse(f, expr::AllowedVariables::t_and_u())};
}

py::dict solution_dict(const SolutionFunction& u) {
    py::dict d;
    d["t"] = std::vector<double>(u.grid.nodes().begin(), u.grid.nodes().end());
    d["u"] = u.values;
    d["history_value"] = u.history_value;
    return d;
}

py::dict solve(const BvpParams& params, const std::string& a, const std::string& f, int n, double tol, int max_iter,
               double relaxation, std::optional<double> initial) {
    validate(params);
    const Problem problem = make_problem(params, a, f);
    SolverConfig cfg;
    cfg.n = n;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.relaxation = relaxation;
    if (initial) cfg.initial = InitialGuess::constant_value(*initial);
    SolveResult r = [&] {
        py::gil_scoped_release release;
        return picard_solve(params, problem.a(), problem.f(), cfg);
    }();
    py::dict d = solution_dict(r.solution);
    d["converged"] = r.diagnostics.converged;
    d["iterations"] = r.diagnostics.iterations;
    d["residual"] = r.diagnostics.final_residual;
    d["residual_history"] = r.diagnostics.residual_history;
    d["message"] = r.diagnostics.message;
    return d;
}

py::dict newton(const BvpParams& params, const std::string& a, const std::string& f, int n, double tol,
                int max_iter) {
    const Problem problem = make_problem(params, a, f);
    const Grid grid(n);
    NewtonOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    NewtonResult r = [&] {
        py::gil_scoped_release release;
        return newton_solve(params, problem.a(), problem.f(), grid, opts);
    }();
    py::dict d;
    d["t"] = std::vector<double>(grid.nodes().begin(), grid.nodes().end());
    d["u"] = r.values;
    d["iterations"] = r.iterations;
    d["residual"] = r.residual;
    return d;
}

py::dict check(const BvpParams& params, const std::string& a, const std::string& f, double theta, int n) {
    ProblemConfig cfg;
    cfg.params = params;
    cfg.a_source = a;
    cfg.f_source = f;
    cfg.theta = theta;
    cfg.solver.n = n;
    const ConditionReport r = cli::evaluate_conditions(compile_problem(cfg), cfg);
    py::dict d;
    d["M1"] = r.M1;
    d["M2"] = r.M2;
    d["k1"] = r.cone.k1;
    d["k2"] = r.cone.k2;
    d["gamma"] = r.cone.gamma;
    d["f0"] = r.f0.value;
    d["finf"] = r.finf.value;
    d["theorem1_applicable"] = r.theorem1_applicable;
    d["lambda_max_thm1"] = r.lambda_max_thm1;
    d["theorem2_applicable"] = r.theorem2_applicable;
    d["lambda_max_thm2"] = r.lambda_max_thm2;
    d["N"] = r.N;
    d["fmax"] = r.fmax;
    d["B_thm2"] = r.B_thm2;
    d["notes"] = r.notes;
    return d;
}

py::dict verify(std::uint64_t seed, int cases) {
    const auto summary = cli::run_verify(seed, cases);
    py::dict d;
    d["cases"] = summary.cases;
    d["passed"] = summary.passed();
    py::dict worst;
    py::dict violations;
    for (const auto& r : summary.inequalities) {
        worst[py::str(r.name)] = r.worst_slack;
        violations[py::str(r.name)] = r.violations;
    }
    d["worst_slack"] = worst;
    d["violations"] = violations;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Three-point delay boundary value problem solver";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DegenerateParams>(m, "DegenerateParams", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<InvalidGrid>(m, "InvalidGrid", base.ptr());
    py::register_exception<LengthMismatch>(m, "LengthMismatch", base.ptr());
    py::register_exception<NonFiniteEvaluation>(m, "NonFiniteEvaluation", base.ptr());
    py::register_exception<NegativeData>(m, "NegativeData", base.ptr());
    py::register_exception<NotConverged>(m, "NotConverged", base.ptr());
    py::register_exception<SingularJacobian>(m, "SingularJacobian", base.ptr());
    py::register_exception<SyntaxError>(m, "ExpressionSyntaxError", base.ptr());
    py::register_exception<UnknownIdentifier>(m, "UnknownIdentifier", base.ptr());
    py::register_exception<ForbiddenVariable>(m, "ForbiddenVariable", base.ptr());
    py::register_exception<EvalError>(m, "EvalError", base.ptr());
    py::register_exception<UnboundVariable>(m, "UnboundVariable", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<BvpParams>(m, "BvpParams")
        .def(py::init([](double alpha, double beta, double eta, double tau, double lambda_) {
                 return BvpParams{alpha, beta, eta, tau, lambda_};
             }),
             py::kw_only(), py::arg("alpha") = 0.0, py::arg("beta") = 0.0, py::arg("eta") = 0.5,
             py::arg("tau") = 0.25, py::arg("lambda_") = 1.0)
        .def_readwrite("alpha", &BvpParams::alpha)
        .def_readwrite("beta", &BvpParams::beta)
        .def_readwrite("eta", &BvpParams::eta)
        .def_readwrite("tau", &BvpParams::tau)
        .def_readwrite("lambda_", &BvpParams::lambda)
        .def("violation", [](const BvpParams& p) { return find_violation(p); })
        .def("__repr__", [](const BvpParams& p) {
            return "BvpParams(alpha=" + cli::format_number(p.alpha) + ", beta=" + cli::format_number(p.beta) +
                   ", eta=" + cli::format_number(p.eta) + ", tau=" + cli::format_number(p.tau) +
                   ", lambda_=" + cli::format_number(p.lambda) + ")";
        });

    py::class_<ConeConstants>(m, "ConeConstants")
        .def_readonly("theta", &ConeConstants::theta)
        .def_readonly("k1", &ConeConstants::k1)
        .def_readonly("k2", &ConeConstants::k2)
        .def_readonly("gamma", &ConeConstants::gamma)
        .def_readonly("lower_bound_certified", &ConeConstants::lower_bound_certified);

    m.def("denom", &denom, py::arg("params"));
    m.def("g_kernel", &g_kernel, py::arg("t"), py::arg("s"));
    m.def("green", &green, py::arg("params"), py::arg("t"), py::arg("s"));
    m.def("cone_constants", &cone_constants, py::arg("params"), py::arg("theta"));

    m.def(
        "green_apply",
        [](const BvpParams& params, const std::vector<double>& y) {
            if (y.size() < 3) throw InvalidGrid("need at least 3 samples");
            return green_apply(params, Grid(static_cast<int>(y.size()) - 1), y);
        },
        py::arg("params"), py::arg("y"),
        "u(tᵢ) = ∫ G(tᵢ,s) y(s) ds for y sampled on a uniform grid of [0,1].");

    m.def("evaluate", [](const std::string& source, double t, std::optional<double> u) {
        return expr::parse(source).eval(t, u);
    }, py::arg("source"), py::arg("t"), py::arg("u") = py::none());

    m.def("solve", &solve, py::arg("params"), py::arg("a") = "1", py::arg("f"), py::arg("n") = 512,
          py::arg("tol") = 1e-10, py::arg("max_iter") = 500, py::arg("relaxation") = 1.0,
          py::arg("initial") = py::none(), "Picard iteration; non-convergence is reported, not raised.");
    m.def("newton", &newton, py::arg("params"), py::arg("a") = "1", py::arg("f"), py::arg("n") = 512,
          py::arg("tol") = 1e-8, py::arg("max_iter") = 50, "Finite-difference Newton solve.");
    m.def("check", &check, py::arg("params"), py::arg("a") = "1", py::arg("f"), py::arg("theta") = 0.25,
          py::arg("n") = 512);
    m.def("verify", &verify, py::arg("seed") = 42, py::arg("cases") = 100);
}
