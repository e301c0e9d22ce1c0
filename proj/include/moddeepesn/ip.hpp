#pragma once

#include <span>
#include <vector>

#include "moddeepesn/init.hpp"
#include "moddeepesn/linalg.hpp"

namespace esn {

/// Intrinsic-plasticity pre-training parameters: learning rate and the target
/// Gaussian the tanh outputs are driven toward.
struct IpConfig {
    double eta = 1e-4;
    double mu = 0.0;
    double sigma = 0.2;
    int epochs = 10;

    void validate() const;
};

struct IpDelta {
    double db = 0.0;
    double dg = 0.0;
};

/// One online update for a neuron with net input x:
///   xt = tanh(g x + b)
///   db = -eta ( (-mu/sigma^2) + (xt/sigma^2) (2 sigma^2 + 1 - xt^2 + mu xt) )
///   dg = eta / g + db * x
IpDelta ip_update(double x, double g, double b, const IpConfig& cfg);

/// Runs `epochs` passes over the input, applying ip_update at every neuron and
/// time step while the states evolve under the current gains/biases. Weights
/// are untouched. Throws numeric_error if any gain is driven to <= 0.
EsnModel pretrain(EsnModel model, const Matrix& input, const IpConfig& cfg);

/// All tanh activations produced over one pass (diagnostics for the target
/// distribution fit).
std::vector<double> activation_samples(const EsnModel& model, const Matrix& input);

/// KL(empirical || target) with a Gaussian fitted to the sample moments:
/// log(sigma/s) + (s^2 + (m - mu)^2) / (2 sigma^2) - 1/2.
double kl_estimate(std::span<const double> activations, double mu, double sigma);

}  // namespace esn
