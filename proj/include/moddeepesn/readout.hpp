#pragma once

#include "moddeepesn/linalg.hpp"

namespace esn {

struct StateMatrix;

/// Trained linear readout: y = w_out * state.
struct ReadoutWeights {
    Matrix w_out;  // N_Y x (N_U + N_L * N_R)
    double beta = 0.0;
};

/// Ridge regression over the harvested states:
/// w_out = targets * states^T * (states * states^T + beta * I)^{-1}.
/// States and targets must cover the same (post-washout) time span.
ReadoutWeights train_readout(const StateMatrix& states, const Matrix& targets, double beta);

Matrix predict(const ReadoutWeights& w, const StateMatrix& states);

}  // namespace esn
