#include "moddeepesn/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

constexpr double kWorst = std::numeric_limits<double>::infinity();

double gene_from_unit(const GeneSpec& spec, double u) {
    switch (spec.kind) {
        case GeneSpec::Kind::choice: {
            auto i = static_cast<std::size_t>(u * static_cast<double>(spec.choices.size()));
            return spec.choices[std::min(i, spec.choices.size() - 1)];
        }
        case GeneSpec::Kind::integer: {
            const double span = spec.hi - spec.lo + 1.0;
            return spec.lo + std::min(std::floor(u * span), spec.hi - spec.lo);
        }
        case GeneSpec::Kind::real:
            return spec.lo + u * (spec.hi - spec.lo);
        case GeneSpec::Kind::log_real:
            return std::exp(std::log(spec.lo) + u * (std::log(spec.hi) - std::log(spec.lo)));
    }
    throw std::logic_error("unknown gene kind");
}

double safe_fitness(const std::function<double(const Genome&)>& fitness, const Genome& g) {
    try {
        const double v = fitness(g);
        return std::isfinite(v) ? v : kWorst;
    } catch (...) {
        return kWorst;
    }
}

}  // namespace

void GeneSpec::validate() const {
    if (kind == Kind::choice) {
        if (choices.empty()) throw std::invalid_argument("gene '" + name + "': empty choice set");
        return;
    }
    if (!(lo <= hi)) throw std::invalid_argument("gene '" + name + "': empty range");
    if (kind == Kind::log_real && !(lo > 0.0))
        throw std::invalid_argument("gene '" + name + "': log range needs lo > 0");
}

bool GeneSpec::contains(double v) const {
    if (kind == Kind::choice)
        return std::find(choices.begin(), choices.end(), v) != choices.end();
    return v >= lo && v <= hi;
}

int GeneSpace::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < genes.size(); ++i)
        if (genes[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("no gene named '" + name + "'");
}

void GeneSpace::validate() const {
    if (genes.empty()) throw std::invalid_argument("gene space is empty");
    for (const auto& g : genes) g.validate();
}

void EvolutionConfig::validate() const {
    if (tournament_size < 1) throw std::invalid_argument("tournament_size must be >= 1");
    if (population < tournament_size)
        throw std::invalid_argument("population must be >= tournament_size");
    if (!(crossover_p >= 0.0 && crossover_p <= 1.0))
        throw std::invalid_argument("crossover_p must be in [0, 1]");
    if (!(mutation_p >= 0.0 && mutation_p <= 1.0))
        throw std::invalid_argument("mutation_p must be in [0, 1]");
    if (generations < 1) throw std::invalid_argument("generations must be >= 1");
}

Genome sample_genome(const GeneSpace& space, const RngStream& stream) {
    space.validate();
    Genome g(space.genes.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = gene_from_unit(space.genes[i], stream.unit_at(i));
    return g;
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, const RngStream& stream) {
    if (a.size() != b.size()) throw std::invalid_argument("crossover: gene schema mismatch");
    Genome c1 = a, c2 = b;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (stream.unit_at(i) < 0.5) std::swap(c1[i], c2[i]);
    return {std::move(c1), std::move(c2)};
}

Genome mutate(const Genome& g, const GeneSpace& space, double p, const RngStream& stream) {
    if (g.size() != space.genes.size()) throw std::invalid_argument("mutate: schema mismatch");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mutate: p must be in [0, 1]");
    const std::size_t n = g.size();
    Genome out = g;
    for (std::size_t i = 0; i < n; ++i)
        if (stream.unit_at(i) < p)
            out[i] = gene_from_unit(space.genes[i], stream.unit_at(n + i));
    return out;
}

EvolveResult evolve(const GeneSpace& space, const std::function<double(const Genome&)>& fitness,
                    const EvolutionConfig& cfg) {
    space.validate();
    cfg.validate();
    const int pop_size = cfg.population;
    const RngStream base(cfg.seed, "ga");

    std::vector<Genome> pop(pop_size);
    std::vector<double> fit(pop_size);
    for (int i = 0; i < pop_size; ++i) {
        pop[i] = sample_genome(space, base.child("init/" + std::to_string(i)));
        fit[i] = safe_fitness(fitness, pop[i]);
    }

    EvolveResult result;
    const auto record = [&](int generation) {
        int best = 0;
        double sum = 0.0;
        for (int i = 0; i < pop_size; ++i) {
            if (fit[i] < fit[best]) best = i;
            sum += fit[i];
        }
        result.history.push_back(fit[best]);
        result.log.push_back({generation, fit[best], sum / pop_size, pop[best]});
        result.best = pop[best];
        result.best_fitness = fit[best];
    };
    record(0);

    for (int gen = 1; gen <= cfg.generations; ++gen) {
        const RngStream gstream = base.child("gen/" + std::to_string(gen));

        const auto tournament = [&](const RngStream& s) {
            int winner = -1;
            for (int k = 0; k < cfg.tournament_size; ++k) {
                auto idx = static_cast<int>(s.unit_at(k) * pop_size);
                idx = std::min(idx, pop_size - 1);
                if (winner < 0 || fit[idx] < fit[winner]) winner = idx;
            }
            return winner;
        };

        std::vector<Genome> next;
        next.reserve(pop_size);
        next.push_back(result.best);  // elitism of 1

        for (int pair = 0; next.size() < static_cast<std::size_t>(pop_size); ++pair) {
            const RngStream ps = gstream.child("pair/" + std::to_string(pair));
            const int p1 = tournament(ps.child("t1"));
            const int p2 = tournament(ps.child("t2"));
            Genome c1 = pop[p1], c2 = pop[p2];
            if (ps.unit_at(0) < cfg.crossover_p)
                std::tie(c1, c2) = crossover(c1, c2, ps.child("x"));
            c1 = mutate(c1, space, cfg.mutation_p, ps.child("m1"));
            c2 = mutate(c2, space, cfg.mutation_p, ps.child("m2"));
            next.push_back(std::move(c1));
            if (next.size() < static_cast<std::size_t>(pop_size)) next.push_back(std::move(c2));
        }

        pop = std::move(next);
        for (int i = 0; i < pop_size; ++i) fit[i] = safe_fitness(fitness, pop[i]);
        record(gen);
    }
    return result;
}

GeneSpace hyperparameter_space() {
    using K = GeneSpec::Kind;
    GeneSpace s;
    s.genes = {
        {K::choice, "topology", {0, 1, 2, 3}, 0, 0},  // wide, layered, crisscross, wide+layered
        {K::integer, "width", {}, 1, 4},
        {K::integer, "depth", {}, 1, 4},
        {K::choice, "cc_n", {2}, 0, 0},
        {K::choice, "n_r", {128, 256, 512, 1024}, 0, 0},
        {K::log_real, "beta", {}, 1e-9, 1e-1},
        {K::real, "alpha", {}, 0.1, 1.0},
        {K::choice, "rho_hat_xavier", {0, 1}, 0, 0},
        {K::real, "rho_hat", {}, 0.5, 0.999},
        {K::choice, "sigma_in_xavier", {0, 1}, 0, 0},
        {K::real, "sigma_in", {}, 0.01, 1.0},
        {K::choice, "sigma_l_xavier", {0, 1}, 0, 0},
        {K::real, "sigma_l", {}, 0.01, 1.0},
        {K::real, "s_in", {}, 0.0, 0.9},
        {K::real, "s_hat_l", {}, 0.0, 0.9},
        {K::real, "s_l", {}, 0.0, 0.9},
        {K::choice, "ip", {0, 1}, 0, 0},
    };
    return s;
}

DecodedGenome decode_genome(const GeneSpace& space, const Genome& g) {
    if (g.size() != space.genes.size()) throw std::invalid_argument("decode_genome: schema mismatch");
    const auto at = [&](const char* name) { return g[static_cast<std::size_t>(space.index_of(name))]; };
    const auto scale = [&](const char* flag, const char* value) {
        return at(flag) > 0.5 ? ScaleParam::xavier() : ScaleParam::value(at(value));
    };

    DecodedGenome d;
    const int family = static_cast<int>(at("topology"));
    const int width = static_cast<int>(at("width"));
    const int depth = static_cast<int>(at("depth"));
    switch (family) {
        case 0: d.topology = TopologyKind::wide(width); break;
        case 1: d.topology = TopologyKind::layered(depth); break;
        case 2: d.topology = TopologyKind::criss_cross(static_cast<int>(at("cc_n"))); break;
        case 3: d.topology = TopologyKind::wide_layered(width, depth); break;
        default: throw std::invalid_argument("decode_genome: bad topology gene");
    }
    d.n_r = static_cast<int>(at("n_r"));
    d.beta = at("beta");
    d.init.leak = at("alpha");
    d.init.rho_hat = scale("rho_hat_xavier", "rho_hat");
    d.init.sigma_in = scale("sigma_in_xavier", "sigma_in");
    d.init.sigma_l = scale("sigma_l_xavier", "sigma_l");
    d.init.s_in = at("s_in");
    d.init.s_hat_l = at("s_hat_l");
    d.init.s_l = at("s_l");
    d.ip_enabled = at("ip") > 0.5;
    d.init.validate();
    return d;
}

std::string genome_to_text(const GeneSpace& space, const Genome& g) {
    if (g.size() != space.genes.size()) throw std::invalid_argument("genome_to_text: schema mismatch");
    std::ostringstream out;
    out.precision(12);
    out << "{";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out << ",";
        out << '"' << space.genes[i].name << "\":" << g[i];
    }
    out << "}";
    return out.str();
}

}  // namespace esn
