#include "dbvp/quadrature.hpp"

#include "dbvp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dbvp {

Grid::Grid(int n) : n_(n), h_(0.0) {
    if (n < 2 || n % 2 != 0)
        throw InvalidGrid("grid needs an even number of intervals ≥ 2, got " + std::to_string(n));
    h_ = 1.0 / n;
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) nodes_[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
}

Grid make_grid(int n) { return Grid(n); }

QuadratureRule QuadratureRule::simpson(const Grid& grid) {
    QuadratureRule rule;
    const std::size_t last = grid.size() - 1;
    rule.weights.resize(grid.size());
    const double third = grid.h() / 3.0;
    for (std::size_t i = 0; i <= last; ++i) {
        double m = (i % 2 == 1) ? 4.0 : 2.0;
        if (i == 0 || i == last) m = 1.0;
        rule.weights[i] = m * third;
    }
    return rule;
}

double integrate(const QuadratureRule& rule, std::span<const double> values) {
    if (values.size() != rule.size())
        throw LengthMismatch("integrate: " + std::to_string(values.size()) + " values for a rule of size " +
                             std::to_string(rule.size()));
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += rule.weights[i] * values[i];
    return sum;
}

double interpolate(const Grid& grid, std::span<const double> values, double x) {
    if (values.size() != grid.size()) throw LengthMismatch("interpolate: value count does not match grid");
    const int n = grid.intervals();
    const int width = std::min(4, n + 1);
    int k = static_cast<int>(std::floor(x / grid.h()));
    k = std::clamp(k, 0, n - 1);
    const int start = std::clamp(k - 1, 0, n + 1 - width);

    double result = 0.0;
    for (int i = start; i < start + width; ++i) {
        double w = 1.0;
        const double xi = grid.node(static_cast<std::size_t>(i));
        for (int j = start; j < start + width; ++j) {
            if (j == i) continue;
            const double xj = grid.node(static_cast<std::size_t>(j));
            w *= (x - xj) / (xi - xj);
        }
        result += w * values[static_cast<std::size_t>(i)];
    }
    return result;
}

namespace {

// out[i] = ∫_0^{t_i} F for a smooth integrand sampled on ≥ 5 uniform nodes.
std::vector<double> cumulative_integral(std::span<const double> f, double h) {
    const std::size_t n = f.size() - 1;
    std::vector<double> out(f.size(), 0.0);
    for (std::size_t i = 2; i <= n; i += 2)
        out[i] = out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
    // odd endpoints: Simpson to i-1, then one cubic panel on [t_{i-1}, t_i]
    out[1] = h / 24.0 * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
    for (std::size_t i = 3; i < n; i += 2)
        out[i] = out[i - 1] + h / 24.0 * (-f[i - 2] + 13.0 * f[i - 1] + 13.0 * f[i] - f[i + 1]);
    return out;
}

}  // namespace

std::vector<double> green_apply(const BvpParams& params, const Grid& grid, std::span<const double> y) {
    if (y.size() != grid.size())
        throw LengthMismatch("green_apply: " + std::to_string(y.size()) + " samples for a grid of " +
                             std::to_string(grid.size()) + " nodes");
    const double d = denom(params);
    const std::size_t m = grid.size();
    std::vector<double> u(m, 0.0);

    if (grid.intervals() < 4) {
        const auto rule = QuadratureRule::simpson(grid);
        for (std::size_t i = 0; i < m; ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < m; ++j)
                sum += rule.weights[j] * green(params, grid.node(i), grid.node(j)) * y[j];
            u[i] = sum;
        }
        return u;
    }

    // g part: (1-t)∫_0^t s y(s) ds + t ∫_t^1 (1-s) y(s) ds
    std::vector<double> left(m), right_rev(m);
    for (std::size_t j = 0; j < m; ++j) {
        left[j] = grid.node(j) * y[j];
        right_rev[m - 1 - j] = (1.0 - grid.node(j)) * y[j];
    }
    const auto below = cumulative_integral(left, grid.h());
    const auto above_rev = cumulative_integral(right_rev, grid.h());

    std::vector<double> dirichlet(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = grid.node(i);
        dirichlet[i] = (1.0 - t) * below[i] + t * above_rev[m - 1 - i];
    }
    dirichlet.front() = 0.0;
    dirichlet.back() = 0.0;

    const double at_eta = interpolate(grid, dirichlet, params.eta);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = grid.node(i);
        u[i] = dirichlet[i] + (params.beta + (params.alpha - params.beta) * t) / d * at_eta;
    }
    return u;
}

}  // namespace dbvp
