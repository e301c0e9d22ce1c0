#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moddeepesn/init.hpp"
#include "moddeepesn/ip.hpp"
#include "moddeepesn/rng.hpp"
#include "moddeepesn/topology.hpp"

namespace esn {

/// One gene's legal range or choice set. Values are stored as doubles; choice
/// and integer genes hold exact representable values.
struct GeneSpec {
    enum class Kind { choice, integer, real, log_real };
    Kind kind = Kind::real;
    std::string name;
    std::vector<double> choices;  // Kind::choice
    double lo = 0.0, hi = 0.0;    // numeric kinds

    void validate() const;
    bool contains(double v) const;
};

struct GeneSpace {
    std::vector<GeneSpec> genes;

    int index_of(const std::string& name) const;
    void validate() const;
};

using Genome = std::vector<double>;

struct EvolutionConfig {
    int population = 50;
    int generations = 50;
    int tournament_size = 3;
    double crossover_p = 0.5;
    double mutation_p = 0.1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GenerationStat {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    Genome best;
};

struct EvolveResult {
    Genome best;
    double best_fitness = 0.0;
    std::vector<double> history;  // per-generation best, non-increasing
    std::vector<GenerationStat> log;
};

/// Each gene drawn independently from its range/choice set.
Genome sample_genome(const GeneSpace& space, const RngStream& stream);

/// Uniform per-gene swap at probability 0.5; pair-level mating probability is
/// the driver's job.
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, const RngStream& stream);

/// Each gene independently resampled from its prior with probability p.
Genome mutate(const Genome& g, const GeneSpace& space, double p, const RngStream& stream);

/// Tournament evolution (lower fitness is better) with elitism of 1. A fitness
/// that throws or returns a non-finite value ranks worst and evolution
/// continues. Deterministic given cfg.seed, independent of evaluation order.
EvolveResult evolve(const GeneSpace& space, const std::function<double(const Genome&)>& fitness,
                    const EvolutionConfig& cfg);

/// The Mod-DeepESN hyperparameter search space (topology kind and sizes,
/// reservoir size, regularization, leak, scales or Xavier flags, sparsities,
/// IP switch).
GeneSpace hyperparameter_space();

struct DecodedGenome {
    TopologyKind topology;
    int n_r = 0;
    InitSpec init;
    double beta = 0.0;
    bool ip_enabled = false;
};

/// Decodes a genome from hyperparameter_space() into typed configs.
DecodedGenome decode_genome(const GeneSpace& space, const Genome& g);

/// Compact {"name":value,...} text for logs.
std::string genome_to_text(const GeneSpace& space, const Genome& g);

}  // namespace esn
