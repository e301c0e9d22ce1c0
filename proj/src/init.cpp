#include "moddeepesn/init.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument(std::string(what) + " must be in [0, 1]");
}

// Radius of (1-a) I + a c m through the precomputed spectrum of m.
double combined_radius(const std::vector<std::complex<double>>& evs, double a, double c) {
    double rho = 0.0;
    for (const auto& ev : evs) rho = std::max(rho, std::abs((1.0 - a) + a * c * ev));
    return rho;
}

std::string idx(int i) { return std::to_string(i); }

}  // namespace

double ScaleParam::numeric() const {
    if (xavier_) throw std::logic_error("ScaleParam: Xavier flag has no numeric value");
    return value_;
}

void InitSpec::validate() const {
    check_probability(s_in, "s_in");
    check_probability(s_hat_l, "s_hat_l");
    check_probability(s_l, "s_l");
    if (!(leak > 0.0 && leak <= 1.0))
        throw std::invalid_argument("leak must be in (0, 1]");
    if (!rho_hat.is_xavier() && !(rho_hat.numeric() > 0.0 && rho_hat.numeric() < 1.0))
        throw std::invalid_argument("rho_hat must be in (0, 1)");
    if (!sigma_in.is_xavier() && !(sigma_in.numeric() > 0.0))
        throw std::invalid_argument("sigma_in must be > 0");
    if (!sigma_l.is_xavier() && !(sigma_l.numeric() > 0.0))
        throw std::invalid_argument("sigma_l must be > 0");
}

std::vector<int> EsnModel::edges_into(int l) const {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(w_edge.size()); ++i)
        if (w_edge[i].dst == l) out.push_back(i);
    return out;
}

Matrix xavier_matrix(int n_in, int n_out, Eigen::Index rows, Eigen::Index cols,
                     const RngStream& stream) {
    if (n_in < 0 || n_out < 0 || n_in + n_out <= 0)
        throw std::invalid_argument("xavier_matrix: fan counts must sum to > 0");
    const double sigma = std::sqrt(2.0 / (n_in + n_out));
    return draw_matrix(stream, Dist::normal(0.0, sigma), rows, cols);
}

Matrix scale_to_effective_radius(const Matrix& m, double a, double rho_hat) {
    if (!(a > 0.0 && a <= 1.0)) throw std::invalid_argument("leak must be in (0, 1]");
    if (!(rho_hat < 1.0)) throw std::invalid_argument("rho_hat must be < 1");
    if (rho_hat <= 1.0 - a)
        throw numeric_error("rho_hat <= 1 - leak: identity term alone exceeds the target");
    if (m.size() == 0 || m.isZero(0.0))
        throw numeric_error("cannot reach target radius: zero matrix");

    const auto evs = eigenvalues(m);

    // f(c) is convex with f(0) = 1 - a below the target; find a bracket, then
    // bisect the single crossing.
    double lo = 0.0, hi = 1.0;
    int doublings = 0;
    while (combined_radius(evs, a, hi) <= rho_hat) {
        hi *= 2.0;
        if (++doublings > 200)
            throw numeric_error("cannot reach target radius: spectrum is degenerate");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = combined_radius(evs, a, mid);
        if (std::abs(f - rho_hat) <= 1e-9) {
            lo = hi = mid;
            break;
        }
        (f > rho_hat ? hi : lo) = mid;
        if (hi - lo <= 1e-16 * hi) break;
    }
    const double c = 0.5 * (lo + hi);

    Matrix scaled = c * m;
    // Verify on the actual combined matrix, not just the spectrum of m.
    Matrix combined = a * scaled;
    combined.diagonal().array() += 1.0 - a;
    if (std::abs(spectral_radius(combined) - rho_hat) > 1e-6)
        throw numeric_error("effective-radius scaling did not converge");
    return scaled;
}

Matrix normalize_l2(const Matrix& m, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("normalize_l2: sigma must be > 0");
    if (m.size() == 0 || m.isZero(0.0))
        throw numeric_error("normalize_l2: zero matrix has no direction to scale");
    double norm;
    if (m.cols() == 1 || m.rows() == 1) {
        norm = m.norm();
    } else {
        Eigen::BDCSVD<Matrix> svd(m);
        norm = svd.singularValues()(0);
    }
    return (sigma / norm) * m;
}

Matrix apply_sparsity(const Matrix& m, double s, const RngStream& stream) {
    check_probability(s, "sparsity");
    if (s == 0.0) return m;
    Matrix out = m;
    const Dist mask = Dist::bernoulli(s);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
        for (Eigen::Index c = 0; c < out.cols(); ++c)
            if (sample_at(stream, mask, static_cast<std::uint64_t>(r) * out.cols() + c) > 0.5)
                out(r, c) = 0.0;
    return out;
}

EsnModel build_model(const ConnectivityMatrix& c, int n_u, int n_r, const InitSpec& spec,
                     const RngStream& stream) {
    if (n_u < 1 || n_r < 1) throw std::invalid_argument("build_model: n_u and n_r must be >= 1");
    spec.validate();

    const int n_l = c.reservoir_count();
    EsnModel model{c, n_u, n_r};
    model.w_in.resize(n_l);
    model.w_hat.reserve(n_l);
    model.gain.reserve(n_l);
    model.bias.reserve(n_l);
    model.leak.assign(n_l, spec.leak);

    const Dist base_uniform = Dist::uniform(-1.0, 1.0);

    for (int l = 1; l <= n_l; ++l) {
        if (c.edge(ConnectivityMatrix::input_source, l)) {
            Matrix w = spec.sigma_in.is_xavier()
                           ? xavier_matrix(n_u, n_r, n_r, n_u, stream.child("w_in/" + idx(l)))
                           : draw_matrix(stream.child("w_in/" + idx(l)), base_uniform, n_r, n_u);
            w = apply_sparsity(w, spec.s_in, stream.child("w_in_mask/" + idx(l)));
            if (!spec.sigma_in.is_xavier()) w = normalize_l2(w, spec.sigma_in.numeric());
            model.w_in[l - 1] = std::move(w);
        }

        for (int s : c.predecessors(l)) {
            if (s == ConnectivityMatrix::input_source) continue;
            const std::string tag = idx(s) + "-" + idx(l);
            Matrix w = spec.sigma_l.is_xavier()
                           ? xavier_matrix(n_r, n_r, n_r, n_r, stream.child("w_res/" + tag))
                           : draw_matrix(stream.child("w_res/" + tag), base_uniform, n_r, n_r);
            w = apply_sparsity(w, spec.s_l, stream.child("w_res_mask/" + tag));
            if (!spec.sigma_l.is_xavier()) w = normalize_l2(w, spec.sigma_l.numeric());
            model.w_edge.push_back({s, l, std::move(w)});
        }

        Matrix w = spec.rho_hat.is_xavier()
                       ? xavier_matrix(n_r, n_r, n_r, n_r, stream.child("w_hat/" + idx(l)))
                       : draw_matrix(stream.child("w_hat/" + idx(l)), base_uniform, n_r, n_r);
        w = apply_sparsity(w, spec.s_hat_l, stream.child("w_hat_mask/" + idx(l)));
        if (!spec.rho_hat.is_xavier())
            w = scale_to_effective_radius(w, spec.leak, spec.rho_hat.numeric());
        model.w_hat.push_back(std::move(w));

        model.gain.push_back(Vector::Ones(n_r));
        model.bias.push_back(Vector::Zero(n_r));
    }
    return model;
}

}  // namespace esn
