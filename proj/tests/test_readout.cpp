#include <doctest.h>

#include <cmath>

#include "moddeepesn/errors.hpp"
#include "moddeepesn/readout.hpp"
#include "moddeepesn/reservoir.hpp"

using esn::Matrix;
using esn::RngStream;
using esn::StateMatrix;

namespace {

StateMatrix wrap(Matrix entries) {
    StateMatrix s;
    s.n_u = 0;
    s.n_r = static_cast<int>(entries.rows());
    s.n_l = 1;
    s.entries = std::move(entries);
    return s;
}

// Brute-force normal equations through hand-rolled Gauss-Jordan inversion,
// independent of the production solver.
Matrix oracle_ridge(const Matrix& chi, const Matrix& y, double beta) {
    const Eigen::Index d = chi.rows();
    Matrix a = chi * chi.transpose();
    a.diagonal().array() += beta;
    Matrix inv = Matrix::Identity(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        Eigen::Index pivot = col;
        for (Eigen::Index r = col + 1; r < d; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        a.row(col).swap(a.row(pivot));
        inv.row(col).swap(inv.row(pivot));
        const double diag = a(col, col);
        REQUIRE(diag != 0.0);
        a.row(col) /= diag;
        inv.row(col) /= diag;
        for (Eigen::Index r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a(r, col);
            a.row(r) -= f * a.row(col);
            inv.row(r) -= f * inv.row(col);
        }
    }
    return y * chi.transpose() * inv;
}

}  // namespace

TEST_CASE("identity states reproduce the targets") {
    const Matrix chi = Matrix::Identity(4, 4);
    const Matrix y = esn::draw_matrix(RngStream(1, "y"), esn::Dist::normal(0.0, 1.0), 2, 4);
    const auto w = esn::train_readout(wrap(chi), y, 0.0);
    CHECK((w.w_out - y).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("scalar ridge cases") {
    Matrix chi(1, 1), y(1, 1);
    chi << 2.0;
    y << 4.0;
    CHECK(esn::train_readout(wrap(chi), y, 0.0).w_out(0, 0) == doctest::Approx(2.0));
    CHECK(esn::train_readout(wrap(chi), y, 4.0).w_out(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("predict is the linear map") {
    esn::ReadoutWeights w{Matrix::Zero(1, 3), 0.0};
    Matrix chi(3, 2);
    chi << 0.5, 0.1, 0.25, 0.2, 0.0, 0.3;
    CHECK(esn::predict(w, wrap(chi)).cwiseAbs().maxCoeff() == 0.0);

    w.w_out = Matrix::Ones(1, 3);
    const Matrix y = esn::predict(w, wrap(chi));
    CHECK(y(0, 0) == doctest::Approx(0.75));
    CHECK(y(0, 1) == doctest::Approx(0.6));
}

TEST_CASE("full-row-rank interpolation at beta = 0") {
    const Matrix chi = esn::draw_matrix(RngStream(2, "chi"), esn::Dist::normal(0.0, 1.0), 6, 6);
    const Matrix y = esn::draw_matrix(RngStream(3, "y"), esn::Dist::normal(0.0, 1.0), 1, 6);
    const auto w = esn::train_readout(wrap(chi), y, 0.0);
    CHECK((esn::predict(w, wrap(chi)) - y).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("agreement with the brute-force oracle on random instances") {
    for (int trial = 0; trial < 25; ++trial) {
        const RngStream s(trial, "ridge");
        const Matrix chi = esn::draw_matrix(s.child("chi"), esn::Dist::normal(0.0, 1.0), 5, 7);
        const Matrix y = esn::draw_matrix(s.child("y"), esn::Dist::normal(0.0, 1.0), 2, 7);
        const double beta = trial % 3 == 0 ? 1e-4 : 0.1 * (trial + 1);
        const auto w = esn::train_readout(wrap(chi), y, beta);
        const Matrix expect = oracle_ridge(chi, y, beta);
        CHECK((w.w_out - expect).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("monotone shrinkage in beta") {
    const Matrix chi = esn::draw_matrix(RngStream(5, "chi"), esn::Dist::normal(0.0, 1.0), 8, 30);
    const Matrix y = esn::draw_matrix(RngStream(6, "y"), esn::Dist::normal(0.0, 1.0), 1, 30);
    double prev = std::numeric_limits<double>::infinity();
    for (double beta : {1e-6, 1e-3, 1e-1, 1.0, 10.0}) {
        const double norm = esn::train_readout(wrap(chi), y, beta).w_out.norm();
        CHECK(norm <= prev + 1e-12);
        prev = norm;
    }
}

TEST_CASE("ridge objective is stationary at the solution") {
    const Matrix chi = esn::draw_matrix(RngStream(7, "chi"), esn::Dist::normal(0.0, 1.0), 6, 20);
    const Matrix y = esn::draw_matrix(RngStream(8, "y"), esn::Dist::normal(0.0, 1.0), 1, 20);
    const double beta = 0.05;
    const auto w = esn::train_readout(wrap(chi), y, beta);

    const auto objective = [&](const Matrix& wo) {
        return (y - wo * chi).squaredNorm() + beta * wo.squaredNorm();
    };
    const double h = 1e-6;
    for (int k = 0; k < 5; ++k) {
        const Eigen::Index j = (k * 7) % w.w_out.cols();
        Matrix up = w.w_out, dn = w.w_out;
        up(0, j) += h;
        dn(0, j) -= h;
        const double grad = (objective(up) - objective(dn)) / (2.0 * h);
        CHECK(std::abs(grad) <= 1e-5 * (1.0 + y.norm()));
    }
}

TEST_CASE("mismatched time spans are rejected") {
    const Matrix chi = Matrix::Ones(2, 5);
    const Matrix y = Matrix::Ones(1, 4);
    CHECK_THROWS_AS(esn::train_readout(wrap(chi), y, 0.1), esn::data_error);
    esn::ReadoutWeights w{Matrix::Ones(1, 3), 0.0};
    CHECK_THROWS_AS(esn::predict(w, wrap(chi)), std::invalid_argument);
}
