#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace esn {

/// Counter-based random stream identified by a seed and a derivation label
/// (e.g. "run/3/init/w_hat/1"). Streams are immutable descriptors: the i-th
/// sample of a stream depends only on (seed, label, i), so repeated draws are
/// bitwise identical and draws from distinct streams are order-independent.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string label);

    /// Derives a child stream by appending "/suffix" to the label.
    RngStream child(std::string_view suffix) const;

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

    /// Raw 64-bit word at counter position i.
    std::uint64_t word_at(std::uint64_t i) const;

    /// Uniform double in [0, 1) at counter position i.
    double unit_at(std::uint64_t i) const;

private:
    std::uint64_t seed_;
    std::string label_;
    std::uint64_t key_;
};

/// Sampling distribution for draw().
struct Dist {
    enum class Kind { uniform, normal, bernoulli };
    Kind kind;
    double a;  // lo | mu | p
    double b;  // hi | sigma | unused

    static Dist uniform(double lo, double hi);
    static Dist normal(double mu, double sigma);
    static Dist bernoulli(double p);
};

/// n samples from dist; a pure function of (stream, dist, n). Bernoulli
/// samples are 0.0/1.0. Invalid parameters throw std::invalid_argument.
std::vector<double> draw(const RngStream& stream, const Dist& dist, std::size_t n);

/// Single sample at counter position i (same sequence draw() reads).
double sample_at(const RngStream& stream, const Dist& dist, std::uint64_t i);

}  // namespace esn
