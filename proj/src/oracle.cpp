#include "dbvp/oracle.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace dbvp {

LuDecomposition::LuDecomposition(DenseMatrix a) : lu_(std::move(a)), perm_(lu_.size()) {
    const std::size_t n = lu_.size();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                pivot = i;
            }
        }
        if (best == 0.0 || !std::isfinite(best))
            throw SingularJacobian("singular matrix: no usable pivot in column " + std::to_string(k));
        if (pivot != k) {
            std::swap_ranges(lu_.row(k).begin(), lu_.row(k).end(), lu_.row(pivot).begin());
            std::swap(perm_[k], perm_[pivot]);
        }

        const auto pivot_row = lu_.row(k);
        const double diag = pivot_row[k];
        for (std::size_t i = k + 1; i < n; ++i) {
            auto r = lu_.row(i);
            if (r[k] == 0.0) continue;
            const double l = r[k] / diag;
            r[k] = l;
            for (std::size_t j = k + 1; j < n; ++j) r[j] -= l * pivot_row[j];
        }
    }
}

std::vector<double> LuDecomposition::solve(std::span<const double> rhs) const {
    const std::size_t n = lu_.size();
    if (rhs.size() != n) throw LengthMismatch("LU solve: right-hand side has wrong length");
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double v = rhs[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) v -= lu_(i, j) * x[j];
        x[i] = v;
    }
    for (std::size_t i = n; i-- > 0;) {
        double v = x[i];
        for (std::size_t j = i + 1; j < n; ++j) v -= lu_(i, j) * x[j];
        x[i] = v / lu_(i, i);
    }
    return x;
}

namespace {

// Linear interpolation stencil on the uniform grid i/n.
struct LinearStencil {
    std::size_t left;
    double weight_right;

    LinearStencil(double x, std::size_t n) {
        const double scaled = std::clamp(x, 0.0, 1.0) * static_cast<double>(n);
        left = std::min(static_cast<std::size_t>(scaled), n - 1);
        weight_right = scaled - static_cast<double>(left);
    }
    double apply(std::span<const double> u) const {
        return (1.0 - weight_right) * u[left] + weight_right * u[left + 1];
    }
};

struct Discretization {
    std::size_t n;
    double h;
    LinearStencil eta;

    Discretization(const BvpParams& p, std::size_t nodes)
        : n(nodes - 1), h(1.0 / static_cast<double>(nodes - 1)), eta(p.eta, nodes - 1) {}

    double node(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n); }
    bool in_history(const BvpParams& p, std::size_t i) const { return node(i) <= p.tau; }
};

double lagged_argument(const BvpParams& p, const Discretization& disc, std::span<const double> u, std::size_t i) {
    if (disc.in_history(p, i)) return p.beta * disc.eta.apply(u);
    return LinearStencil(disc.node(i) - p.tau, disc.n).apply(u);
}

void require_finite(double v, const char* what, double t) {
    if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite " << what << " at t = " << t;
        throw NonFiniteEvaluation(msg.str());
    }
}

double sup_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return std::isfinite(m) ? m : std::numeric_limits<double>::infinity();
}

double numeric_derivative(const Nonlinearity& f, double t, double u) {
    const double step = 1e-6 * (1.0 + std::abs(u));
    if (u - step < 0.0) return (f(t, u + step) - f(t, u)) / step;
    return (f(t, u + step) - f(t, u - step)) / (2.0 * step);
}

}  // namespace

std::vector<double> fd_residual(const BvpParams& p, const Coefficient& a, const Nonlinearity& f,
                                std::span<const double> u) {
    if (u.size() < 3) throw LengthMismatch("fd_residual needs at least 3 nodes");
    validate(p, false);
    const Discretization disc(p, u.size());
    const std::size_t n = disc.n;
    const double inv_h2 = 1.0 / (disc.h * disc.h);
    const double u_eta = disc.eta.apply(u);

    std::vector<double> r(u.size());
    r[0] = u[0] - p.beta * u_eta;
    r[n] = u[n] - p.alpha * u_eta;
    for (std::size_t i = 1; i < n; ++i) {
        const double t = disc.node(i);
        const double forcing = p.lambda * a(t) * f(t, lagged_argument(p, disc, u, i));
        require_finite(forcing, "forcing λ·a·f", t);
        r[i] = (u[i - 1] - 2.0 * u[i] + u[i + 1]) * inv_h2 + forcing;
    }
    return r;
}

NewtonResult newton_solve(const BvpParams& p, const Coefficient& a, const Nonlinearity& f, const Grid& grid,
                          const NewtonOptions& options) {
    validate(p, false);
    const std::size_t m = grid.size();
    const Discretization disc(p, m);
    const std::size_t n = disc.n;
    const double inv_h2 = 1.0 / (disc.h * disc.h);

    NewtonResult result;
    result.values = options.initial.value_or(std::vector<double>(m, 0.0));
    if (result.values.size() != m) throw LengthMismatch("newton_solve: warm start does not match grid");

    auto residual = fd_residual(p, a, f, result.values);
    double norm = sup_abs(residual);

    for (int it = 0; it < options.max_iter && norm > options.tol; ++it) {
        DenseMatrix jac(m);
        const auto& eta = disc.eta;
        jac(0, 0) += 1.0;
        jac(0, eta.left) -= p.beta * (1.0 - eta.weight_right);
        jac(0, eta.left + 1) -= p.beta * eta.weight_right;
        jac(n, n) += 1.0;
        jac(n, eta.left) -= p.alpha * (1.0 - eta.weight_right);
        jac(n, eta.left + 1) -= p.alpha * eta.weight_right;

        for (std::size_t i = 1; i < n; ++i) {
            const double t = disc.node(i);
            jac(i, i - 1) += inv_h2;
            jac(i, i) -= 2.0 * inv_h2;
            jac(i, i + 1) += inv_h2;

            const double lag = lagged_argument(p, disc, result.values, i);
            const double dfdu = options.df ? (*options.df)(t, lag) : numeric_derivative(f, t, lag);
            const double coupling = p.lambda * a(t) * dfdu;
            require_finite(coupling, "Jacobian entry", t);
            if (coupling == 0.0) continue;
            if (disc.in_history(p, i)) {
                jac(i, eta.left) += coupling * p.beta * (1.0 - eta.weight_right);
                jac(i, eta.left + 1) += coupling * p.beta * eta.weight_right;
            } else {
                const LinearStencil st(t - p.tau, n);
                jac(i, st.left) += coupling * (1.0 - st.weight_right);
                jac(i, st.left + 1) += coupling * st.weight_right;
            }
        }

        std::vector<double> rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs[i] = -residual[i];
        const auto delta = LuDecomposition(std::move(jac)).solve(rhs);

        double step = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 30; ++halving, step *= 0.5) {
            std::vector<double> trial(m);
            for (std::size_t i = 0; i < m; ++i) trial[i] = result.values[i] + step * delta[i];
            auto trial_residual = fd_residual(p, a, f, trial);
            const double trial_norm = sup_abs(trial_residual);
            if (trial_norm <= norm) {
                result.values = std::move(trial);
                residual = std::move(trial_residual);
                norm = trial_norm;
                accepted = true;
                break;
            }
        }
        result.iterations = it + 1;
        if (!accepted) {
            std::ostringstream msg;
            msg << "Newton line search failed at iteration " << it + 1 << " with residual " << norm;
            throw NotConverged(msg.str());
        }
    }

    result.residual = norm;
    if (!(norm <= options.tol)) {
        std::ostringstream msg;
        msg << "Newton did not converge in " << options.max_iter << " iterations (residual " << norm << ")";
        throw NotConverged(msg.str());
    }
    return result;
}

}  // namespace dbvp
