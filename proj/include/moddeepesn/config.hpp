#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "moddeepesn/data.hpp"
#include "moddeepesn/evolve.hpp"
#include "moddeepesn/init.hpp"
#include "moddeepesn/ip.hpp"
#include "moddeepesn/topology.hpp"

namespace esn {

enum class DatasetKind { mackey_glass, csv };
enum class ReportFormat { csv, text };

/// Everything one experiment needs: dataset, split, model, training, and
/// reporting. Defaults reproduce the Mackey-Glass 84-step benchmark setup.
struct ExperimentConfig {
    DatasetKind dataset = DatasetKind::mackey_glass;
    std::string csv_path;
    std::string csv_column = "Temp";
    MackeyGlassParams mg;
    long mg_samples = 10084;

    long train_len = 8000;
    long test_len = 2000;
    long horizon = 84;
    long washout = 100;
    bool normalize = true;

    TopologyKind topology = TopologyKind::wide(3);
    int n_r = 256;
    InitSpec init;
    double beta = 2e-8;

    IpConfig ip;
    bool ip_enabled = false;

    EvolutionConfig ga;

    int runs = 10;
    std::uint64_t seed = 42;
    std::string output;
    ReportFormat format = ReportFormat::csv;

    void validate() const;
};

/// Applies one `key = value` assignment; unknown keys are rejected.
void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Parses a flat key/value config file (`key = value`, '#' comments).
ExperimentConfig parse_config_file(const std::filesystem::path& path);

/// Writes a config file that reproduces the given settings.
void write_config_file(const ExperimentConfig& cfg, const std::filesystem::path& path);

/// Config fragment (model keys only) for an evolved genome.
std::string decoded_genome_keys(const DecodedGenome& d);

}  // namespace esn
