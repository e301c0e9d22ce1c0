#include "moddeepesn/reservoir.hpp"

#include <stdexcept>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

void check_reservoir_index(const EsnModel& model, int l) {
    if (l < 1 || l > model.n_l()) throw std::out_of_range("reservoir index out of range");
}

}  // namespace

Vector step(const EsnModel& model, int l, const Vector& x_prev, const Vector& drive) {
    check_reservoir_index(model, l);
    if (x_prev.size() != model.n_r || drive.size() != model.n_r)
        throw std::invalid_argument("step: state/drive dimension mismatch");
    const double a = model.leak[l - 1];
    const auto& g = model.gain[l - 1].array();
    const auto& b = model.bias[l - 1].array();
    Vector net = drive + model.w_hat[l - 1] * x_prev;
    return (1.0 - a) * x_prev.array() + a * (g * net.array() + b).tanh();
}

StateMatrix run(const EsnModel& model, const Matrix& input, int washout,
                const std::vector<Vector>& initial_states) {
    const int n_l = model.n_l();
    if (input.rows() != model.n_u) throw std::invalid_argument("run: input channel mismatch");
    const Eigen::Index n_t = input.cols();
    if (n_t == 0) throw data_error("run: empty input");
    if (washout < 0 || washout >= n_t)
        throw data_error("run: washout must leave at least one step");
    if (static_cast<int>(initial_states.size()) != n_l)
        throw std::invalid_argument("run: one initial state per reservoir required");

    std::vector<Vector> x = initial_states;
    for (const auto& xi : x)
        if (xi.size() != model.n_r) throw std::invalid_argument("run: initial state dimension");

    StateMatrix out;
    out.washout = washout;
    out.n_u = model.n_u;
    out.n_r = model.n_r;
    out.n_l = n_l;
    out.entries.resize(model.state_dim(), n_t - washout);

    std::vector<std::vector<int>> incoming(n_l);
    for (int l = 1; l <= n_l; ++l) incoming[l - 1] = model.edges_into(l);

    std::vector<Vector> x_next(n_l);
    Vector drive(model.n_r);
    for (Eigen::Index t = 0; t < n_t; ++t) {
        for (int l = 1; l <= n_l; ++l) {
            drive.setZero();
            if (model.connectivity.edge(ConnectivityMatrix::input_source, l))
                drive.noalias() += model.w_in[l - 1] * input.col(t);
            for (int e : incoming[l - 1])
                drive.noalias() += model.w_edge[e].w * x_next[model.w_edge[e].src - 1];
            x_next[l - 1] = step(model, l, x[l - 1], drive);
        }
        x.swap(x_next);
        if (t >= washout) {
            auto col = out.entries.col(t - washout);
            col.head(model.n_u) = input.col(t);
            for (int l = 1; l <= n_l; ++l)
                col.segment(model.n_u + (l - 1) * model.n_r, model.n_r) = x[l - 1];
        }
    }
    return out;
}

StateMatrix run(const EsnModel& model, const Matrix& input, int washout) {
    return run(model, input, washout,
               std::vector<Vector>(model.n_l(), Vector::Zero(model.n_r)));
}

StateMatrix run(const EsnModel& model, const std::vector<double>& input, int washout) {
    Matrix m(1, static_cast<Eigen::Index>(input.size()));
    for (Eigen::Index i = 0; i < m.cols(); ++i) m(0, i) = input[i];
    return run(model, m, washout);
}

}  // namespace esn
