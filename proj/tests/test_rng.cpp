#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "moddeepesn/rng.hpp"

using esn::Dist;
using esn::RngStream;

TEST_CASE("identical (seed, label, dist, n) draws are bitwise identical") {
    const RngStream a(42, "init/res/2");
    const RngStream b(42, "init/res/2");
    const auto xs = draw(a, Dist::uniform(-1.0, 1.0), 64);
    const auto ys = draw(b, Dist::uniform(-1.0, 1.0), 64);
    REQUIRE(xs.size() == 64);
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(xs[i] == ys[i]);

    // Re-drawing fewer samples reproduces the prefix.
    const auto zs = draw(a, Dist::uniform(-1.0, 1.0), 8);
    for (std::size_t i = 0; i < zs.size(); ++i) CHECK(zs[i] == xs[i]);
}

TEST_CASE("distinct labels give distinct sequences") {
    const RngStream root(7, "root");
    const auto xs = draw(root.child("a"), Dist::uniform(0.0, 1.0), 16);
    const auto ys = draw(root.child("b"), Dist::uniform(0.0, 1.0), 16);
    int same = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) same += xs[i] == ys[i];
    CHECK(same == 0);

    CHECK(root.child("a").label() == "root/a");
}

TEST_CASE("distinct seeds give distinct sequences") {
    const auto xs = draw(RngStream(1, "s"), Dist::uniform(0.0, 1.0), 16);
    const auto ys = draw(RngStream(2, "s"), Dist::uniform(0.0, 1.0), 16);
    int same = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) same += xs[i] == ys[i];
    CHECK(same == 0);
}

TEST_CASE("bernoulli(0) gives all zeros, bernoulli(1) all ones") {
    const RngStream s(3, "bern");
    for (double v : draw(s, Dist::bernoulli(0.0), 5)) CHECK(v == 0.0);
    for (double v : draw(s, Dist::bernoulli(1.0), 5)) CHECK(v == 1.0);
}

TEST_CASE("normal with zero sigma is exactly the mean") {
    const RngStream s(3, "norm");
    for (double v : draw(s, Dist::normal(0.0, 0.0), 3)) CHECK(v == 0.0);
    for (double v : draw(s, Dist::normal(2.5, 0.0), 3)) CHECK(v == 2.5);
}

TEST_CASE("uniform(-1,1) empirical mean is near zero") {
    const RngStream s(11, "clt");
    const auto xs = draw(s, Dist::uniform(-1.0, 1.0), 100000);
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    CHECK(std::abs(mean) < 0.01);
    for (double v : xs) {
        REQUIRE(v >= -1.0);
        REQUIRE(v < 1.0);
    }
}

TEST_CASE("normal moments match the requested distribution") {
    const RngStream s(13, "gauss");
    const auto xs = draw(s, Dist::normal(1.0, 2.0), 100000);
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double v : xs) var += (v - mean) * (v - mean);
    var /= xs.size();
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::sqrt(var) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("invalid distribution parameters are rejected") {
    CHECK_THROWS_AS(Dist::uniform(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Dist::uniform(2.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(Dist::normal(0.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(Dist::bernoulli(1.5), std::invalid_argument);
    CHECK_THROWS_AS(Dist::bernoulli(-0.1), std::invalid_argument);
}
