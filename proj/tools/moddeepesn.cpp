// Benchmark CLI: dataset generation, single experiments, topology sweeps,
// and genetic hyperparameter search.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "moddeepesn/config.hpp"
#include "moddeepesn/data.hpp"
#include "moddeepesn/errors.hpp"
#include "moddeepesn/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct Overrides {
    std::optional<std::string> config_path;
    std::vector<std::pair<std::string, std::string>> assignments;

    esn::ExperimentConfig resolve() const {
        esn::ExperimentConfig cfg;
        if (config_path) cfg = esn::parse_config_file(*config_path);
        for (const auto& [key, value] : assignments) esn::apply_key(cfg, key, value);
        cfg.validate();
        return cfg;
    }
};

// Registers the common experiment flags; flags override file values.
void add_common_flags(CLI::App& cmd, Overrides& ov) {
    cmd.add_option_function<std::string>(
           "--config", [&](const std::string& v) { ov.config_path = v; },
           "flat key=value config file");
    const auto key_opt = [&](const std::string& flag, const std::string& key,
                             const std::string& help) {
        cmd.add_option_function<std::string>(
            flag, [&ov, key](const std::string& v) { ov.assignments.emplace_back(key, v); }, help);
    };
    key_opt("--seed", "seed", "base seed for all derived streams");
    key_opt("--topology", "topology",
            "wide:N | layered:N | crisscross:N | wide+layered:WxD");
    key_opt("--runs", "runs", "independent runs to average");
    key_opt("--output", "output", "report path (default: stdout)");
    key_opt("--format", "format", "csv | text");
    key_opt("--n-r", "n_r", "neurons per reservoir");
    key_opt("--beta", "beta", "ridge regularization");
    key_opt("--alpha", "alpha", "leak rate");
    key_opt("--rho-hat", "rho_hat", "effective spectral radius target or X");
    key_opt("--sigma-in", "sigma_in", "input weight norm or X");
    key_opt("--sigma-l", "sigma_l", "inter-reservoir weight norm or X");
    key_opt("--s-in", "s_in", "input weight sparsity");
    key_opt("--s-hat-l", "s_hat_l", "recurrent weight sparsity");
    key_opt("--s-l", "s_l", "feedforward weight sparsity");
    key_opt("--dataset", "dataset", "mackey_glass | csv");
    key_opt("--csv-path", "csv_path", "dataset CSV path");
    key_opt("--csv-column", "csv_column", "dataset CSV column name");
    key_opt("--train-len", "train_len", "training samples");
    key_opt("--test-len", "test_len", "testing samples");
    key_opt("--horizon", "horizon", "forecast horizon");
    key_opt("--washout", "washout", "discarded leading steps");
    cmd.add_flag_callback(
        "--ip", [&ov] { ov.assignments.emplace_back("ip.enabled", "true"); },
        "enable intrinsic-plasticity pre-training");
}

void write_results(const std::vector<esn::ExperimentResult>& results,
                   const esn::ExperimentConfig& cfg) {
    if (cfg.output.empty())
        esn::emit_report(results, cfg.format, std::cout);
    else
        esn::emit_report(results, cfg.format, std::filesystem::path(cfg.output));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mod-DeepESN time-series forecasting benchmark"};
    app.require_subcommand(1);

    Overrides ov;

    auto* gen = app.add_subcommand("generate-data", "write a Mackey-Glass series as CSV");
    std::string gen_out = "mackey_glass.csv";
    long gen_n = 10084;
    gen->add_option("--output", gen_out, "output CSV path");
    gen->add_option("--samples", gen_n, "sample count");
    gen->add_option_function<std::string>(
        "--config", [&](const std::string& v) { ov.config_path = v; }, "config file");

    auto* run_cmd = app.add_subcommand("run", "run a single experiment");
    add_common_flags(*run_cmd, ov);

    auto* sweep_cmd =
        app.add_subcommand("sweep", "all four topologies x {IP on, off} under one config");
    add_common_flags(*sweep_cmd, ov);

    auto* evolve_cmd = app.add_subcommand("evolve", "genetic hyperparameter search");
    add_common_flags(*evolve_cmd, ov);
    std::string evolve_log = "evolution_log.csv";
    std::string evolve_best = "best_genome.conf";
    evolve_cmd->add_option("--log", evolve_log, "per-generation CSV log path");
    evolve_cmd->add_option("--best-out", evolve_best, "best-genome config output path");
    evolve_cmd->add_option_function<std::string>(
        "--population", [&](const std::string& v) { ov.assignments.emplace_back("ga.population", v); },
        "population size");
    evolve_cmd->add_option_function<std::string>(
        "--generations",
        [&](const std::string& v) { ov.assignments.emplace_back("ga.generations", v); },
        "generation count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (gen->parsed()) {
            esn::ExperimentConfig cfg;
            if (ov.config_path) cfg = esn::parse_config_file(*ov.config_path);
            cfg.mg_samples = gen_n;
            esn::save_csv_series(esn::gen_mackey_glass(cfg.mg_samples, cfg.mg), gen_out, "value");
            std::cerr << "wrote " << cfg.mg_samples << " samples to " << gen_out << "\n";
        } else if (run_cmd->parsed()) {
            const esn::ExperimentConfig cfg = ov.resolve();
            write_results({esn::run_experiment(cfg)}, cfg);
        } else if (sweep_cmd->parsed()) {
            const esn::ExperimentConfig cfg = ov.resolve();
            write_results(esn::run_sweep(cfg), cfg);
        } else if (evolve_cmd->parsed()) {
            const esn::ExperimentConfig cfg = ov.resolve();
            std::ofstream log(evolve_log);
            if (!log) throw esn::data_error("cannot write " + evolve_log);
            const esn::EvolutionOutcome outcome = esn::run_evolution(cfg, log);
            std::ofstream best(evolve_best);
            if (!best) throw esn::data_error("cannot write " + evolve_best);
            best << esn::decoded_genome_keys(outcome.best);
            std::cerr << "best fitness " << outcome.result.best_fitness << ", config written to "
                      << evolve_best << "\n";
        }
    } catch (const esn::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const esn::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const esn::numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
