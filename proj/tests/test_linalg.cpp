#include <doctest.h>

#include <cmath>

#include "moddeepesn/errors.hpp"
#include "moddeepesn/linalg.hpp"

using esn::Matrix;

TEST_CASE("spectral radius of simple spectra") {
    CHECK(esn::spectral_radius(Matrix::Identity(2, 2)) == doctest::Approx(1.0).epsilon(1e-8));

    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 0.5;
    CHECK(esn::spectral_radius(d) == doctest::Approx(2.0).epsilon(1e-8));

    // Rotation block: eigenvalues +-i.
    Matrix rot(2, 2);
    rot << 0, 1, -1, 0;
    CHECK(esn::spectral_radius(rot) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("spectral radius rejects bad input") {
    CHECK_THROWS_AS(esn::spectral_radius(Matrix::Zero(2, 3)), std::invalid_argument);
    Matrix nan = Matrix::Zero(2, 2);
    nan(0, 1) = std::nan("");
    CHECK_THROWS_AS(esn::spectral_radius(nan), std::invalid_argument);
}

TEST_CASE("spectral radius scales with |c|") {
    const esn::RngStream s(5, "rad");
    const Matrix m = esn::draw_matrix(s, esn::Dist::uniform(-1.0, 1.0), 24, 24);
    const double rho = esn::spectral_radius(m);
    for (double c : {2.0, -3.0, 0.25}) {
        CHECK(esn::spectral_radius(c * m) ==
              doctest::Approx(std::abs(c) * rho).epsilon(1e-8));
    }
}

TEST_CASE("solve_regularized on scalar and identity cases") {
    Matrix a(1, 1), b(1, 1);
    a << 4.0;
    b << 8.0;
    CHECK(esn::solve_regularized(a, 0.0, b)(0, 0) == doctest::Approx(2.0));
    CHECK(esn::solve_regularized(a, 4.0, b)(0, 0) == doctest::Approx(1.0));

    const Matrix id = Matrix::Identity(2, 2);
    CHECK((esn::solve_regularized(id, 0.0, id) - id).norm() < 1e-12);
}

TEST_CASE("solve_regularized matches exact 2x2 solve at beta = 0") {
    Matrix a(2, 2);
    a << 3.0, 1.0, 1.0, 2.0;  // det = 5
    Matrix b(1, 2);
    b << 5.0, 5.0;
    // X a = b with a symmetric: X = b a^{-1} = (1, 2).
    const Matrix x = esn::solve_regularized(a, 0.0, b);
    CHECK(x(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(x(0, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("solve_regularized residual stays tiny on random SPD systems") {
    for (int trial = 0; trial < 10; ++trial) {
        const esn::RngStream s(trial, "spd");
        const Matrix g = esn::draw_matrix(s, esn::Dist::normal(0.0, 1.0), 12, 20);
        const Matrix a = g * g.transpose();
        const Matrix b = esn::draw_matrix(s.child("rhs"), esn::Dist::normal(0.0, 1.0), 3, 12);
        const double beta = trial % 2 ? 1e-6 : 0.5;
        const Matrix x = esn::solve_regularized(a, beta, b);
        Matrix shifted = a;
        shifted.diagonal().array() += beta;
        CHECK((x * shifted - b).norm() <= 1e-9 * b.norm());
    }
}

TEST_CASE("singular system with beta = 0 raises, beta > 0 recovers") {
    Matrix a(2, 2);
    a << 1.0, 1.0, 1.0, 1.0;
    Matrix b(1, 2);
    b << 1.0, 1.0;
    CHECK_THROWS_AS(esn::solve_regularized(a, 0.0, b), esn::numeric_error);
    CHECK_NOTHROW(esn::solve_regularized(a, 1e-3, b));
}
