#pragma once

#include <filesystem>
#include <ostream>
#include <vector>

#include "moddeepesn/config.hpp"
#include "moddeepesn/metrics.hpp"

namespace esn {

struct RunMetrics {
    int run = 0;
    double rmse = 0.0;
    double nrmse = 0.0;
    double mape = 0.0;
};

struct ExperimentResult {
    ReportRow row;
    std::vector<RunMetrics> per_run;
};

/// Builds, optionally IP-pretrains, trains, and evaluates `cfg.runs` models on
/// derived seed streams (label "run/<i>"); metrics are computed in original
/// data units and averaged.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// All four topologies x {IP off, IP on} under one shared configuration.
std::vector<ExperimentResult> run_sweep(const ExperimentConfig& cfg);

/// Writes rows as CSV (metric columns x1e3, flagged by the _e3 header suffix)
/// or as a structured-text report with per-run detail.
void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 std::ostream& out);
void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 const std::filesystem::path& path);

/// Parses the numeric rows of an emitted CSV report back (round-trip checks).
std::vector<ReportRow> parse_report_csv(std::istream& in);

/// GA fitness for a decoded genome: mean validation-tail RMSE (last 20% of the
/// training region) over three fixed evaluation seeds.
double genome_fitness(const ExperimentConfig& base, const DecodedGenome& d);

struct EvolutionOutcome {
    EvolveResult result;
    DecodedGenome best;
};

/// Runs the hyperparameter GA, streaming one CSV log line per generation.
EvolutionOutcome run_evolution(const ExperimentConfig& base, std::ostream& log);

}  // namespace esn
