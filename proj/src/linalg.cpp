#include "moddeepesn/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

void check_square_finite(const Matrix& m, const char* who) {
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(who) + ": matrix must be square");
    if (!m.allFinite())
        throw std::invalid_argument(std::string(who) + ": matrix entries must be finite");
}

}  // namespace

std::vector<std::complex<double>> eigenvalues(const Matrix& m) {
    check_square_finite(m, "eigenvalues");
    Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw numeric_error("eigenvalue computation failed");
    const auto& ev = es.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

double spectral_radius(const Matrix& m) {
    check_square_finite(m, "spectral_radius");
    if (m.rows() == 0) return 0.0;
    double rho = 0.0;
    for (const auto& ev : eigenvalues(m)) rho = std::max(rho, std::abs(ev));
    return rho;
}

Matrix solve_regularized(const Matrix& a, double beta, const Matrix& b) {
    check_square_finite(a, "solve_regularized");
    if (!(beta >= 0) || !std::isfinite(beta))
        throw std::invalid_argument("solve_regularized: beta must be finite and >= 0");
    if (b.cols() != a.rows())
        throw std::invalid_argument("solve_regularized: b column count must match a");

    Matrix shifted = a;
    shifted.diagonal().array() += beta;

    const Matrix rhs = b.transpose();
    const double bnorm = rhs.norm();
    const double anorm = shifted.norm();
    const auto residual = [&](const Matrix& xt) { return (rhs - shifted * xt).norm(); };
    // Backward-stable solves land well under this; failures overshoot it by orders.
    const auto acceptable = [&](const Matrix& xt, double res) {
        return xt.allFinite() && res <= 1e-9 * (anorm * xt.norm() + bnorm + 1e-300);
    };

    if (beta == 0.0) {
        // A singular system must be rejected even when the rhs happens to be
        // consistent; the pivoted path below decides invertibility.
        Eigen::FullPivLU<Matrix> lu(shifted);
        if (!lu.isInvertible())
            throw numeric_error("solve_regularized: singular system with beta = 0");
        Matrix xt = lu.solve(rhs);
        for (int it = 0; it < 2; ++it) {
            Matrix r = rhs - shifted * xt;
            if (r.norm() <= 1e-13 * (bnorm + 1.0)) break;
            Matrix corr = lu.solve(r);
            if (!corr.allFinite()) break;
            xt += corr;
        }
        if (!xt.allFinite())
            throw numeric_error("solve_regularized: solve produced non-finite values");
        return xt.transpose();
    }

    Eigen::LDLT<Matrix> ldlt(shifted);
    if (ldlt.info() == Eigen::Success) {
        Matrix xt = ldlt.solve(rhs);
        if (xt.allFinite()) {
            // Refinement steps tighten the residual on ill-conditioned grams.
            for (int it = 0; it < 2; ++it) {
                Matrix r = rhs - shifted * xt;
                if (r.norm() <= 1e-13 * (bnorm + 1.0)) break;
                Matrix corr = ldlt.solve(r);
                if (!corr.allFinite()) break;
                xt += corr;
            }
            double res = residual(xt);
            if (acceptable(xt, res)) return xt.transpose();
        }
    }

    // Not numerically definite (or LDLT lost too much accuracy): pivoted solve.
    Eigen::FullPivLU<Matrix> lu(shifted);
    if (!lu.isInvertible())
        throw numeric_error("solve_regularized: shifted system is singular");
    Matrix xt = lu.solve(rhs);
    for (int it = 0; it < 2; ++it) {
        Matrix r = rhs - shifted * xt;
        if (r.norm() <= 1e-13 * (bnorm + 1.0)) break;
        Matrix corr = lu.solve(r);
        if (!corr.allFinite()) break;
        xt += corr;
    }
    if (!xt.allFinite()) throw numeric_error("solve_regularized: solve produced non-finite values");
    return xt.transpose();
}

Matrix draw_matrix(const RngStream& stream, const Dist& dist, Eigen::Index rows,
                   Eigen::Index cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("draw_matrix: negative dimensions");
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = sample_at(stream, dist, static_cast<std::uint64_t>(r) * cols + c);
    return m;
}

}  // namespace esn
