#include <doctest.h>

#include <cmath>
#include <vector>

#include "moddeepesn/errors.hpp"
#include "moddeepesn/metrics.hpp"
#include "moddeepesn/rng.hpp"

using esn::Dist;
using esn::RngStream;

namespace {

// Straight-loop reference implementations.
double rmse_oracle(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += (u[i] - v[i]) * (u[i] - v[i]);
    return std::sqrt(s / u.size());
}

double nrmse_oracle(const std::vector<double>& u, const std::vector<double>& v) {
    double mean = 0;
    for (double x : u) mean += x;
    mean /= u.size();
    double num = 0, den = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        num += (u[i] - v[i]) * (u[i] - v[i]);
        den += (u[i] - mean) * (u[i] - mean);
    }
    return std::sqrt(num / den);
}

double mape_oracle(const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] - v[i]) / u[i];
    return s / u.size() * 100.0;
}

}  // namespace

TEST_CASE("hand-computed metric values") {
    const std::vector<double> zero2{0.0, 2.0}, one1{1.0, 1.0};
    CHECK(esn::rmse(zero2, zero2) == 0.0);
    CHECK(esn::rmse(zero2, one1) == doctest::Approx(1.0));
    CHECK(esn::rmse(std::vector<double>{3.0}, std::vector<double>{0.0}) == doctest::Approx(3.0));

    const std::vector<double> u13{1.0, 3.0}, two2{2.0, 2.0};
    CHECK(esn::nrmse(u13, u13) == 0.0);
    CHECK(esn::nrmse(u13, two2) == doctest::Approx(1.0));

    const std::vector<double> u24{2.0, 4.0}, v15{1.0, 5.0};
    CHECK(esn::mape(u24, u24) == 0.0);
    CHECK(esn::mape(u24, v15) == doctest::Approx(37.5));
    CHECK(esn::mape(std::vector<double>{1.0}, std::vector<double>{2.0}) == doctest::Approx(100.0));
}

TEST_CASE("predicting the mean gives NRMSE exactly 1") {
    const auto u = draw(RngStream(1, "u"), Dist::uniform(1.0, 3.0), 50);
    double mean = 0;
    for (double x : u) mean += x;
    mean /= u.size();
    const std::vector<double> flat(u.size(), mean);
    CHECK(esn::nrmse(u, flat) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("agreement with straight-loop oracles on random pairs") {
    for (int trial = 0; trial < 100; ++trial) {
        const RngStream s(trial, "m");
        const auto u = draw(s.child("u"), Dist::uniform(0.5, 2.5), 64);
        const auto v = draw(s.child("v"), Dist::uniform(0.5, 2.5), 64);
        CHECK(esn::rmse(u, v) == doctest::Approx(rmse_oracle(u, v)).epsilon(1e-12));
        CHECK(esn::nrmse(u, v) == doctest::Approx(nrmse_oracle(u, v)).epsilon(1e-12));
        CHECK(esn::mape(u, v) == doctest::Approx(mape_oracle(u, v)).epsilon(1e-12));
    }
}

TEST_CASE("rmse symmetry and bounds") {
    for (int trial = 0; trial < 20; ++trial) {
        const RngStream s(trial, "sym");
        const auto u = draw(s.child("u"), Dist::normal(0.0, 1.0), 32);
        const auto v = draw(s.child("v"), Dist::normal(0.0, 1.0), 32);
        CHECK(esn::rmse(u, v) == esn::rmse(v, u));

        double max_err = 0, mean_err = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            max_err = std::max(max_err, std::abs(u[i] - v[i]));
            mean_err += u[i] - v[i];
        }
        mean_err = std::abs(mean_err / u.size());
        CHECK(esn::rmse(u, v) <= max_err + 1e-15);
        CHECK(esn::rmse(u, v) >= mean_err - 1e-15);
    }
}

TEST_CASE("nrmse is scale invariant") {
    const auto u = draw(RngStream(9, "u"), Dist::uniform(1.0, 2.0), 40);
    const auto v = draw(RngStream(9, "v"), Dist::uniform(1.0, 2.0), 40);
    const double base = esn::nrmse(u, v);
    for (double c : {0.5, 2.0, 100.0}) {
        std::vector<double> cu(u.size()), cv(v.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            cu[i] = c * u[i];
            cv[i] = c * v[i];
        }
        CHECK(esn::nrmse(cu, cv) == doctest::Approx(base).epsilon(1e-14));
    }
}

TEST_CASE("degenerate inputs are rejected") {
    const std::vector<double> a{1.0, 2.0}, short1{1.0}, empty{};
    CHECK_THROWS_AS(esn::rmse(a, short1), esn::data_error);
    CHECK_THROWS_AS(esn::rmse(empty, empty), esn::data_error);
    const std::vector<double> constant{2.0, 2.0};
    CHECK_THROWS_AS(esn::nrmse(constant, a), esn::data_error);
    const std::vector<double> with_zero{1.0, 0.0};
    CHECK_THROWS_AS(esn::mape(with_zero, a), esn::data_error);
}
