#include "moddeepesn/readout.hpp"

#include <stdexcept>

#include "moddeepesn/errors.hpp"
#include "moddeepesn/reservoir.hpp"

namespace esn {

ReadoutWeights train_readout(const StateMatrix& states, const Matrix& targets, double beta) {
    const Matrix& chi = states.entries;
    if (targets.cols() != chi.cols())
        throw data_error("train_readout: states and targets cover different time spans");
    if (chi.cols() == 0) throw data_error("train_readout: no time steps");

    const Eigen::Index d = chi.rows();
    Matrix gram = Matrix::Zero(d, d);
    gram.selfadjointView<Eigen::Lower>().rankUpdate(chi);
    gram.triangularView<Eigen::Upper>() = gram.transpose();

    Matrix rhs = targets * chi.transpose();
    return {solve_regularized(gram, beta, rhs), beta};
}

Matrix predict(const ReadoutWeights& w, const StateMatrix& states) {
    if (w.w_out.cols() != states.entries.rows())
        throw std::invalid_argument("predict: readout/state dimension mismatch");
    return w.w_out * states.entries;
}

}  // namespace esn
