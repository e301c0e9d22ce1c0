#include "moddeepesn/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace esn {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer; counter access through it equals the sequential
// splitmix64 stream started at the key.
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t derive_key(std::uint64_t seed, std::string_view label) {
    return mix64(mix64(seed + kGolden) ^ fnv1a(label));
}

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
    return v;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::string label)
    : seed_(seed), label_(std::move(label)), key_(derive_key(seed_, label_)) {}

RngStream RngStream::child(std::string_view suffix) const {
    std::string l = label_;
    l += '/';
    l += suffix;
    return RngStream(seed_, std::move(l));
}

std::uint64_t RngStream::word_at(std::uint64_t i) const {
    return mix64(key_ + i * kGolden);
}

double RngStream::unit_at(std::uint64_t i) const {
    return static_cast<double>(word_at(i) >> 11) * 0x1.0p-53;
}

Dist Dist::uniform(double lo, double hi) {
    require_finite(lo, "uniform lo");
    require_finite(hi, "uniform hi");
    if (!(lo < hi)) throw std::invalid_argument("uniform requires lo < hi");
    return Dist{Kind::uniform, lo, hi};
}

Dist Dist::normal(double mu, double sigma) {
    require_finite(mu, "normal mu");
    require_finite(sigma, "normal sigma");
    if (sigma < 0) throw std::invalid_argument("normal requires sigma >= 0");
    return Dist{Kind::normal, mu, sigma};
}

Dist Dist::bernoulli(double p) {
    require_finite(p, "bernoulli p");
    if (p < 0 || p > 1) throw std::invalid_argument("bernoulli requires p in [0, 1]");
    return Dist{Kind::bernoulli, p, 0.0};
}

double sample_at(const RngStream& stream, const Dist& dist, std::uint64_t i) {
    switch (dist.kind) {
        case Dist::Kind::uniform:
            return dist.a + stream.unit_at(i) * (dist.b - dist.a);
        case Dist::Kind::normal: {
            if (dist.b == 0.0) return dist.a;
            // Box-Muller on counters (2i, 2i+1); u1 in (0, 1] keeps log finite.
            double u1 = static_cast<double>((stream.word_at(2 * i) >> 11) + 1) * 0x1.0p-53;
            double u2 = stream.unit_at(2 * i + 1);
            double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
            return dist.a + dist.b * z;
        }
        case Dist::Kind::bernoulli:
            return stream.unit_at(i) < dist.a ? 1.0 : 0.0;
    }
    throw std::invalid_argument("unknown distribution");
}

std::vector<double> draw(const RngStream& stream, const Dist& dist, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sample_at(stream, dist, i);
    return out;
}

}  // namespace esn
