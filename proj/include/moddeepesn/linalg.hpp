#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "moddeepesn/rng.hpp"

namespace esn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Magnitude of the largest eigenvalue, via a full dense eigensolver.
/// Throws std::invalid_argument on non-square or non-finite input.
double spectral_radius(const Matrix& m);

/// All eigenvalues of a square matrix (unordered).
std::vector<std::complex<double>> eigenvalues(const Matrix& m);

/// Solves (a + beta*I) * X^T = b^T for X, i.e. X = b * (a + beta*I)^{-1} for
/// symmetric a. Factorizes via LDLT with iterative refinement, falling back to
/// full-pivot LU when the shifted matrix is not numerically definite. A
/// singular system with beta == 0 throws numeric_error.
Matrix solve_regularized(const Matrix& a, double beta, const Matrix& b);

/// rows x cols matrix with entries drawn from dist in row-major counter order.
Matrix draw_matrix(const RngStream& stream, const Dist& dist, Eigen::Index rows,
                   Eigen::Index cols);

}  // namespace esn
