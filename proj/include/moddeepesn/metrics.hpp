#pragma once

#include <span>
#include <string>

namespace esn {

/// Root mean squared error.
double rmse(std::span<const double> u, std::span<const double> u_hat);

/// RMSE normalized by the target's deviation from its own mean; scale invariant.
double nrmse(std::span<const double> u, std::span<const double> u_hat);

/// Mean absolute percentage error, in percent. The divisor is u(t) as signed;
/// any zero target is rejected.
double mape(std::span<const double> u, std::span<const double> u_hat);

/// Metric means across an experiment's runs.
struct EvalReport {
    double rmse = 0.0;
    double nrmse = 0.0;
    double mape = 0.0;
    long n_steps = 0;  // evaluated steps per run
    int runs = 0;      // runs averaged over
};

/// One table row: configuration identity plus its averaged metrics.
struct ReportRow {
    std::string topology;
    int n_l = 0;
    int n_r = 0;
    bool ip = false;
    EvalReport report;
};

}  // namespace esn
