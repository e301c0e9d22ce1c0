#pragma once

#include <optional>
#include <vector>

#include "moddeepesn/linalg.hpp"
#include "moddeepesn/readout.hpp"
#include "moddeepesn/rng.hpp"
#include "moddeepesn/topology.hpp"

namespace esn {

/// A scale hyperparameter that is either a numeric value or the Xavier flag
/// (the tables' "X"): Xavier-initialized weight classes skip norm/radius
/// scaling entirely.
class ScaleParam {
public:
    static ScaleParam xavier() { return ScaleParam(true, 0.0); }
    static ScaleParam value(double v) { return ScaleParam(false, v); }

    bool is_xavier() const { return xavier_; }
    double numeric() const;

    bool operator==(const ScaleParam&) const = default;

private:
    ScaleParam(bool x, double v) : xavier_(x), value_(v) {}
    bool xavier_;
    double value_;
};

/// Fixed-weight construction parameters (one set shared by all reservoirs).
struct InitSpec {
    ScaleParam rho_hat = ScaleParam::xavier();   // effective spectral radius target for W_hat
    ScaleParam sigma_in = ScaleParam::xavier();  // L2 norm target for input blocks
    ScaleParam sigma_l = ScaleParam::xavier();   // L2 norm target for inter-reservoir blocks
    double s_in = 0.0;                           // nullification probability, W_in
    double s_hat_l = 0.0;                        // nullification probability, W_hat
    double s_l = 0.0;                            // nullification probability, W_res
    double leak = 1.0;                           // a, shared across reservoirs

    void validate() const;
};

/// Feedforward weight block on the edge src -> dst (reservoir indices).
struct EdgeWeight {
    int src = 0;
    int dst = 0;
    Matrix w;
};

/// All fixed weights plus the per-neuron adaptation state. Immutable after
/// training; the readout appears only once trained.
struct EsnModel {
    ConnectivityMatrix connectivity;
    int n_u = 0;
    int n_r = 0;
    std::vector<Matrix> w_in;      // per reservoir; 0x0 when not input-fed
    std::vector<EdgeWeight> w_edge;  // sorted by (dst, src)
    std::vector<Matrix> w_hat;     // recurrent, per reservoir
    std::vector<Vector> gain;      // g, > 0 elementwise
    std::vector<Vector> bias;      // b
    std::vector<double> leak;      // a^(l)
    std::optional<ReadoutWeights> readout;

    int n_l() const { return connectivity.reservoir_count(); }
    int state_dim() const { return n_u + n_l() * n_r; }
    bool trained() const { return readout.has_value(); }

    /// Indices into w_edge of edges arriving at reservoir l (1-based).
    std::vector<int> edges_into(int l) const;
};

/// Zero-mean normal draw with std sqrt(2 / (n_in + n_out)).
Matrix xavier_matrix(int n_in, int n_out, Eigen::Index rows, Eigen::Index cols,
                     const RngStream& stream);

/// Scales m by the c >= 0 with rho((1-a) I + a c m) = rho_hat (within 1e-6),
/// found by bisection of the convex radius curve. Requires 1-a < rho_hat < 1.
Matrix scale_to_effective_radius(const Matrix& m, double a, double rho_hat);

/// (sigma / ||m||_2) * m, with ||.||_2 the largest singular value.
Matrix normalize_l2(const Matrix& m, double sigma);

/// Independently zeroes each entry with probability s.
Matrix apply_sparsity(const Matrix& m, double s, const RngStream& stream);

/// Builds every weight class: sample base (uniform(-1,1) for numeric scale,
/// Xavier otherwise), apply the class sparsity, then scale. Gains start at 1,
/// biases at 0, leak is shared.
EsnModel build_model(const ConnectivityMatrix& c, int n_u, int n_r, const InitSpec& spec,
                     const RngStream& stream);

}  // namespace esn
