#pragma once

// Finite-difference Newton solver for the delay problem. It shares no code
// with the Green's-function route (own interpolation, own linear algebra) so
// it can serve as an independent cross-check of picard_solve.

#include "dbvp/greens.hpp"
#include "dbvp/operator.hpp"
#include "dbvp/quadrature.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace dbvp {

/// ∂f/∂u(t,u); when absent newton_solve uses a central difference.
using NonlinearityDerivative = std::function<double(double, double)>;

/// Row-major dense square matrix.
class DenseMatrix {
public:
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
    std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * n_, n_}; }

private:
    std::size_t n_;
    std::vector<double> data_;
};

/// LU factorization with partial pivoting, PA = LU stored in place.
class LuDecomposition {
public:
    /// Throws SingularJacobian when a pivot is zero or non-finite.
    explicit LuDecomposition(DenseMatrix a);
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    DenseMatrix lu_;
    std::vector<std::size_t> perm_;
};

/// Residual of the discretized problem:
///   row 0:  u₀ - β·u(η)
///   row i:  (u_{i-1} - 2u_i + u_{i+1})/h² + λ a(tᵢ) f(tᵢ, u(tᵢ-τ))
///   row n:  u_n - α·u(η)
/// u(η) and u(tᵢ-τ) by linear interpolation; tᵢ ≤ τ uses β·u(η).
/// λ = 0 is accepted here.
std::vector<double> fd_residual(const BvpParams& params, const Coefficient& a, const Nonlinearity& f,
                                std::span<const double> u_grid);

struct NewtonOptions {
    double tol = 1e-8;
    int max_iter = 50;
    std::optional<NonlinearityDerivative> df;
    /// Warm start; zero vector when absent.
    std::optional<std::vector<double>> initial;
};

struct NewtonResult {
    std::vector<double> values;
    int iterations = 0;
    double residual = 0.0;
};

/// Damped Newton on fd_residual with a dense Jacobian. Steps are halved (at
/// most 30 times) while the residual sup-norm increases.
/// Throws SingularJacobian or NotConverged.
NewtonResult newton_solve(const BvpParams& params, const Coefficient& a, const Nonlinearity& f,
                          const Grid& grid, const NewtonOptions& options = {});

}  // namespace dbvp
