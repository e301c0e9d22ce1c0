#pragma once

#include <vector>

#include "moddeepesn/init.hpp"
#include "moddeepesn/linalg.hpp"

namespace esn {

/// Concatenated network state, one column per kept time step. Rows [0, N_U)
/// carry the presented input; rows [N_U + (l-1) N_R, N_U + l N_R) carry
/// reservoir l. Reservoir entries stay within [-1, 1].
struct StateMatrix {
    Matrix entries;
    int washout = 0;
    int n_u = 0;
    int n_r = 0;
    int n_l = 0;

    Eigen::Index steps() const { return entries.cols(); }

    auto input_rows() const { return entries.topRows(n_u); }
    auto reservoir_rows(int l) const { return entries.middleRows(n_u + (l - 1) * n_r, n_r); }
};

/// One leaky-integrator update of reservoir l:
/// x = (1-a) x_prev + a tanh(g .* (drive + W_hat x_prev) + b).
Vector step(const EsnModel& model, int l, const Vector& x_prev, const Vector& drive);

/// Runs the network over a multichannel input (n_u x n_t), updating reservoirs
/// in index order within each step so same-step feedforward drive is already
/// available. Starts from the zero state (or the given per-reservoir initial
/// states) and drops the first `washout` columns.
StateMatrix run(const EsnModel& model, const Matrix& input, int washout);
StateMatrix run(const EsnModel& model, const Matrix& input, int washout,
                const std::vector<Vector>& initial_states);

/// Univariate convenience wrapper.
StateMatrix run(const EsnModel& model, const std::vector<double>& input, int washout);

}  // namespace esn
