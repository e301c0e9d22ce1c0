#include "moddeepesn/ip.hpp"

#include <cmath>
#include <stdexcept>

#include "moddeepesn/errors.hpp"

namespace esn {

void IpConfig::validate() const {
    // eta == 0 is a permitted no-op (useful as an off switch in sweeps).
    if (!(eta >= 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("ip.eta must be >= 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("ip.sigma must be > 0");
    if (epochs < 1) throw std::invalid_argument("ip.epochs must be >= 1");
    if (!std::isfinite(mu)) throw std::invalid_argument("ip.mu must be finite");
}

IpDelta ip_update(double x, double g, double b, const IpConfig& cfg) {
    if (!(g > 0.0)) throw std::invalid_argument("ip_update: gain must be > 0");
    const double s2 = cfg.sigma * cfg.sigma;
    const double xt = std::tanh(g * x + b);
    const double db =
        -cfg.eta * ((-cfg.mu / s2) + (xt / s2) * (2.0 * s2 + 1.0 - xt * xt + cfg.mu * xt));
    const double dg = cfg.eta / g + db * x;
    return {db, dg};
}

namespace {

// One pass over the input. When cfg is non-null, gains/biases adapt online;
// when samples is non-null, every tanh output is appended.
void sweep(EsnModel& model, const Matrix& input, const IpConfig* cfg,
           std::vector<double>* samples) {
    const int n_l = model.n_l();
    const Eigen::Index n_t = input.cols();
    if (input.rows() != model.n_u) throw std::invalid_argument("ip: input channel mismatch");
    if (n_t == 0) throw data_error("ip: empty input");

    std::vector<std::vector<int>> incoming(n_l);
    for (int l = 1; l <= n_l; ++l) incoming[l - 1] = model.edges_into(l);

    std::vector<Vector> x(n_l, Vector::Zero(model.n_r));
    std::vector<Vector> x_next(n_l);
    Vector drive(model.n_r), net(model.n_r), xt(model.n_r);

    const double s2 = cfg ? cfg->sigma * cfg->sigma : 0.0;

    for (Eigen::Index t = 0; t < n_t; ++t) {
        for (int l = 1; l <= n_l; ++l) {
            drive.setZero();
            if (model.connectivity.edge(ConnectivityMatrix::input_source, l))
                drive.noalias() += model.w_in[l - 1] * input.col(t);
            for (int e : incoming[l - 1])
                drive.noalias() += model.w_edge[e].w * x_next[model.w_edge[e].src - 1];

            auto& g = model.gain[l - 1];
            auto& b = model.bias[l - 1];
            const double a = model.leak[l - 1];

            net.noalias() = drive + model.w_hat[l - 1] * x[l - 1];
            xt = (g.array() * net.array() + b.array()).tanh();
            x_next[l - 1] = (1.0 - a) * x[l - 1].array() + a * xt.array();

            if (samples) samples->insert(samples->end(), xt.data(), xt.data() + xt.size());

            if (cfg) {
                // Vectorized ip_update over the reservoir's neurons.
                auto xta = xt.array();
                Eigen::ArrayXd db =
                    -cfg->eta *
                    ((-cfg->mu / s2) + (xta / s2) * (2.0 * s2 + 1.0 - xta.square() + cfg->mu * xta));
                Eigen::ArrayXd dg = cfg->eta / g.array() + db * net.array();
                g.array() += dg;
                b.array() += db;
                if ((g.array() <= 0.0).any())
                    throw numeric_error("ip: gain driven to <= 0 (learning rate too large)");
            }
        }
        x.swap(x_next);
    }
}

}  // namespace

EsnModel pretrain(EsnModel model, const Matrix& input, const IpConfig& cfg) {
    cfg.validate();
    if (model.trained()) throw std::invalid_argument("pretrain: model already has a readout");
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) sweep(model, input, &cfg, nullptr);
    return model;
}

std::vector<double> activation_samples(const EsnModel& model, const Matrix& input) {
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(input.cols()) * model.n_l() * model.n_r);
    EsnModel scratch = model;
    sweep(scratch, input, nullptr, &samples);
    return samples;
}

double kl_estimate(std::span<const double> activations, double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("kl_estimate: sigma must be > 0");
    const std::size_t n = activations.size();
    if (n < 2) throw data_error("kl_estimate: need at least 2 samples");
    double mean = 0.0;
    for (double v : activations) mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : activations) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    if (!(var > 0.0)) throw data_error("kl_estimate: degenerate sample (zero variance)");
    const double shat = std::sqrt(var);
    return std::log(sigma / shat) + (var + (mean - mu) * (mean - mu)) / (2.0 * sigma * sigma) - 0.5;
}

}  // namespace esn
