#pragma once

#include "dbvp/greens.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dbvp {

/// Uniform grid on [0,1] with an even number of intervals.
class Grid {
public:
    /// Throws InvalidGrid unless n ≥ 2 and n is even.
    explicit Grid(int n);

    int intervals() const noexcept { return n_; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double h() const noexcept { return h_; }
    double node(std::size_t i) const { return nodes_[i]; }
    std::span<const double> nodes() const noexcept { return nodes_; }

private:
    int n_;
    double h_;
    std::vector<double> nodes_;
};

Grid make_grid(int n);

/// Composite Simpson weights h/3·[1,4,2,4,...,2,4,1].
struct QuadratureRule {
    std::vector<double> weights;

    static QuadratureRule simpson(const Grid& grid);
    std::size_t size() const noexcept { return weights.size(); }
};

/// Σ wᵢ·valuesᵢ. Throws LengthMismatch.
double integrate(const QuadratureRule& rule, std::span<const double> values);

/// Composite Simpson for a callable over [lo, hi] with `intervals` (even) panels.
template <typename F>
double simpson(F&& fn, double lo, double hi, int intervals) {
    const double h = (hi - lo) / intervals;
    double sum = fn(lo) + fn(hi);
    for (int i = 1; i < intervals; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * fn(lo + i * h);
    return sum * h / 3.0;
}

/// Four-point Lagrange interpolation of nodal `values` at x ∈ [0,1]. The
/// stencil is the two nodes either side of x, shifted inward at the ends.
double interpolate(const Grid& grid, std::span<const double> values, double x);

/// Discrete u(tᵢ) = ∫₀¹ G(tᵢ,s) y(s) ds for y sampled on the grid nodes.
///
/// For n ≥ 4 the g part is integrated piecewise on [0,tᵢ] and [tᵢ,1] so the
/// kernel kink at s = t never falls inside a panel; pieces with an odd number
/// of intervals close with a four-point cubic panel. The rank-one correction
/// needs ∫ g(η,s) y(s) ds with η off-grid; it is taken from the cubic
/// interpolant of the g part at η, which makes u(0) = βu(η) and u(1) = αu(η)
/// hold to rounding. For n = 2 the plain Simpson sum of G is used.
std::vector<double> green_apply(const BvpParams& params, const Grid& grid,
                                std::span<const double> y_values);

}  // namespace dbvp
