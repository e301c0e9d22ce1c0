#include <doctest.h>

#include <cmath>

#include "moddeepesn/data.hpp"
#include "moddeepesn/errors.hpp"
#include "moddeepesn/ip.hpp"
#include "moddeepesn/reservoir.hpp"

using esn::InitSpec;
using esn::IpConfig;
using esn::Matrix;
using esn::RngStream;
using esn::ScaleParam;
using esn::TopologyKind;

TEST_CASE("ip_update hand-derived cases") {
    IpConfig cfg{0.01, 0.0, 1.0, 1};
    auto d = esn::ip_update(0.0, 1.0, 0.0, cfg);
    CHECK(d.db == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d.dg == doctest::Approx(0.01).epsilon(1e-12));

    cfg.mu = 0.5;
    d = esn::ip_update(0.0, 1.0, 0.0, cfg);
    CHECK(d.db == doctest::Approx(0.005).epsilon(1e-12));
    CHECK(d.dg == doctest::Approx(0.01).epsilon(1e-12));

    cfg = IpConfig{0.0, 0.3, 0.7, 1};
    d = esn::ip_update(0.4, 1.7, -0.2, cfg);
    CHECK(d.db == 0.0);
    CHECK(d.dg == 0.0);
}

TEST_CASE("ip_update matches the update rule on generic inputs") {
    const IpConfig cfg{1e-3, 0.1, 0.4, 1};
    const double x = 0.8, g = 1.3, b = -0.1;
    const double xt = std::tanh(g * x + b);
    const double s2 = cfg.sigma * cfg.sigma;
    const double db =
        -cfg.eta * ((-cfg.mu / s2) + (xt / s2) * (2.0 * s2 + 1.0 - xt * xt + cfg.mu * xt));
    const auto d = esn::ip_update(x, g, b, cfg);
    CHECK(d.db == doctest::Approx(db).epsilon(1e-15));
    CHECK(d.dg == doctest::Approx(cfg.eta / g + db * x).epsilon(1e-15));

    CHECK_THROWS_AS(esn::ip_update(0.0, 0.0, 0.0, cfg), std::invalid_argument);
}

namespace {

esn::EsnModel small_model(std::uint64_t seed) {
    InitSpec spec;
    spec.sigma_in = ScaleParam::value(0.5);
    spec.rho_hat = ScaleParam::value(0.9);
    spec.leak = 0.8;
    return esn::build_model(esn::build_connectivity(TopologyKind::wide(2)), 1, 16, spec,
                            RngStream(seed, "init"));
}

Matrix mg_input(long n) {
    const auto series = esn::gen_mackey_glass(n);
    Matrix m(1, n);
    for (long i = 0; i < n; ++i) m(0, i) = series.values[static_cast<std::size_t>(i)];
    return m;
}

}  // namespace

TEST_CASE("pretrain with zero learning rate is a no-op") {
    const auto model = small_model(1);
    IpConfig cfg{0.0, 0.0, 0.2, 3};
    const auto out = esn::pretrain(model, mg_input(50), cfg);
    for (int l = 0; l < 2; ++l) {
        CHECK((out.gain[l] - model.gain[l]).norm() == 0.0);
        CHECK((out.bias[l] - model.bias[l]).norm() == 0.0);
    }
}

TEST_CASE("constant-zero input with mu = 0 keeps biases at zero") {
    const auto model = small_model(2);
    IpConfig cfg{1e-3, 0.0, 0.3, 4};
    const auto out = esn::pretrain(model, Matrix::Zero(1, 40), cfg);
    for (int l = 0; l < 2; ++l) {
        CHECK(out.bias[l].cwiseAbs().maxCoeff() == 0.0);
        CHECK(out.gain[l].minCoeff() > 1.0);  // dg = eta/g > 0 at the origin
    }
}

TEST_CASE("pretrain is reproducible and leaves weights untouched") {
    const auto model = small_model(3);
    const Matrix input = mg_input(120);
    IpConfig cfg{1e-4, 0.0, 0.2, 2};
    const auto a = esn::pretrain(model, input, cfg);
    const auto b = esn::pretrain(model, input, cfg);
    for (int l = 0; l < 2; ++l) {
        CHECK((a.gain[l] - b.gain[l]).norm() == 0.0);
        CHECK((a.bias[l] - b.bias[l]).norm() == 0.0);
        CHECK((a.w_hat[l] - model.w_hat[l]).norm() == 0.0);
        CHECK((a.gain[l] - model.gain[l]).norm() != 0.0);
    }
}

TEST_CASE("pretrain rejects trained models and diverging rates") {
    auto model = small_model(4);
    model.readout = esn::ReadoutWeights{Matrix::Zero(1, model.state_dim()), 0.0};
    CHECK_THROWS_AS(esn::pretrain(model, mg_input(30), IpConfig{}), std::invalid_argument);

    auto fresh = small_model(5);
    // A huge learning rate drives gains negative quickly.
    CHECK_THROWS_AS(esn::pretrain(fresh, mg_input(200), IpConfig{0.5, 0.0, 0.05, 3}),
                    esn::numeric_error);
}

TEST_CASE("kl_estimate closed forms") {
    // Exact-moment sample: two points at mu +- sigma have mean mu, std sigma.
    const double mu = 0.3, sigma = 0.25;
    const std::vector<double> exact{mu - sigma, mu + sigma};
    CHECK(esn::kl_estimate(exact, mu, sigma) == doctest::Approx(0.0).epsilon(1e-12));

    // Sample std sigma/e at matched mean: KL = 1 + 1/(2 e^2) - 1/2.
    const double shrunk = sigma / std::exp(1.0);
    const std::vector<double> narrow{mu - shrunk, mu + shrunk};
    const double expected = 1.0 + 1.0 / (2.0 * std::exp(2.0)) - 0.5;
    CHECK(esn::kl_estimate(narrow, mu, sigma) == doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(esn::kl_estimate(std::vector<double>{1.0}, 0.0, 1.0), esn::data_error);
    CHECK_THROWS_AS(esn::kl_estimate(std::vector<double>{1.0, 1.0}, 0.0, 1.0), esn::data_error);
}

TEST_CASE("kl_estimate is nonnegative on random samples") {
    for (int trial = 0; trial < 20; ++trial) {
        const auto xs =
            draw(RngStream(trial, "kl"), esn::Dist::normal(0.1 * trial, 0.5 + 0.1 * trial), 200);
        CHECK(esn::kl_estimate(xs, 0.0, 0.3) >= 0.0);
    }
}

TEST_CASE("pretraining lowers the KL estimate on Mackey-Glass input") {
    const Matrix input = mg_input(500);
    const IpConfig cfg{1e-3, 0.0, 0.2, 5};
    const auto model = small_model(6);

    const auto before = esn::activation_samples(model, input);
    const auto trained = esn::pretrain(model, input, cfg);
    const auto after = esn::activation_samples(trained, input);

    const double kl_before = esn::kl_estimate(before, cfg.mu, cfg.sigma);
    const double kl_after = esn::kl_estimate(after, cfg.mu, cfg.sigma);
    CHECK(kl_after < kl_before);
}
