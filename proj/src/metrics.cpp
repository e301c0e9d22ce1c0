#include "moddeepesn/metrics.hpp"

#include <cmath>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

void check_pair(std::span<const double> u, std::span<const double> u_hat, const char* who) {
    if (u.size() != u_hat.size())
        throw data_error(std::string(who) + ": series length mismatch");
    if (u.empty()) throw data_error(std::string(who) + ": empty series");
}

}  // namespace

double rmse(std::span<const double> u, std::span<const double> u_hat) {
    check_pair(u, u_hat, "rmse");
    double acc = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) {
        const double e = u[t] - u_hat[t];
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(u.size()));
}

double nrmse(std::span<const double> u, std::span<const double> u_hat) {
    check_pair(u, u_hat, "nrmse");
    if (u.size() < 2) throw data_error("nrmse: need at least 2 samples");
    double mean = 0.0;
    for (double v : u) mean += v;
    mean /= static_cast<double>(u.size());
    double num = 0.0, den = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) {
        const double e = u[t] - u_hat[t];
        num += e * e;
        den += (u[t] - mean) * (u[t] - mean);
    }
    if (den == 0.0) throw data_error("nrmse: constant target series");
    return std::sqrt(num / den);
}

double mape(std::span<const double> u, std::span<const double> u_hat) {
    check_pair(u, u_hat, "mape");
    double acc = 0.0;
    for (std::size_t t = 0; t < u.size(); ++t) {
        if (u[t] == 0.0) throw data_error("mape: zero target value");
        acc += std::abs(u[t] - u_hat[t]) / u[t];
    }
    return acc / static_cast<double>(u.size()) * 100.0;
}

}  // namespace esn
