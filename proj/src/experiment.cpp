#include "moddeepesn/experiment.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "moddeepesn/errors.hpp"
#include "moddeepesn/readout.hpp"
#include "moddeepesn/reservoir.hpp"

namespace esn {

namespace {

// Wraps a pipeline stage so failures name where they happened.
template <typename F>
auto at_stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const data_error& e) {
        throw data_error(std::string("stage ") + name + ": " + e.what());
    } catch (const numeric_error& e) {
        throw numeric_error(std::string("stage ") + name + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("stage ") + name + ": " + e.what());
    }
}

TimeSeries load_series(const ExperimentConfig& cfg) {
    if (cfg.dataset == DatasetKind::csv)
        return load_csv_series(cfg.csv_path, cfg.csv_column);
    return gen_mackey_glass(cfg.mg_samples, cfg.mg);
}

Matrix to_row(const std::vector<double>& v) {
    Matrix m(1, static_cast<Eigen::Index>(v.size()));
    for (Eigen::Index i = 0; i < m.cols(); ++i) m(0, i) = v[i];
    return m;
}

std::vector<double> tail(const std::vector<double>& v, long skip) {
    return {v.begin() + skip, v.end()};
}

RunMetrics evaluate_one(const ExperimentConfig& cfg, const ForecastSplit& split, int run_index) {
    const RngStream stream(cfg.seed, "run/" + std::to_string(run_index));
    const ConnectivityMatrix connectivity = build_connectivity(cfg.topology);

    EsnModel model = at_stage("build", [&] {
        return build_model(connectivity, 1, cfg.n_r, cfg.init, stream.child("init"));
    });

    const Matrix train_in = to_row(split.train_in.values);
    if (cfg.ip_enabled)
        model = at_stage("ip-pretrain", [&] { return pretrain(std::move(model), train_in, cfg.ip); });

    // One pass over train+test: the state matrix spans the whole series, the
    // washout is discarded once at the start, and test states continue from
    // the trained-network state instead of a cold restart.
    Matrix full_in(1, cfg.train_len + cfg.test_len);
    full_in.leftCols(cfg.train_len) = train_in;
    full_in.rightCols(cfg.test_len) = to_row(split.test_in.values);
    const auto states = at_stage("harvest", [&] {
        return run(model, full_in, static_cast<int>(cfg.washout));
    });

    const Eigen::Index train_cols = cfg.train_len - cfg.washout;
    StateMatrix train_states{states.entries.leftCols(train_cols),
                             static_cast<int>(cfg.washout), states.n_u, states.n_r, states.n_l};
    const Matrix train_targets = to_row(tail(split.train_target.values, cfg.washout));
    const ReadoutWeights readout = at_stage("train-readout", [&] {
        return train_readout(train_states, train_targets, cfg.beta);
    });

    StateMatrix test_states{states.entries.rightCols(cfg.test_len), 0, states.n_u, states.n_r,
                            states.n_l};
    const Matrix predictions = predict(readout, test_states);

    std::vector<double> y_hat(predictions.data(), predictions.data() + predictions.cols());
    std::vector<double> y = split.test_target.values;
    if (split.scaler) {
        y_hat = split.scaler->invert(y_hat);
        y = split.scaler->invert(y);
    }

    return at_stage("metrics", [&] {
        for (double v : y)
            if (v < 0.0) {
                std::cerr << "warning: negative targets make MAPE sign-ambiguous\n";
                break;
            }
        return RunMetrics{run_index, rmse(y, y_hat), nrmse(y, y_hat), mape(y, y_hat)};
    });
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    at_stage("config", [&] { cfg.validate(); return 0; });
    const TimeSeries series = at_stage("data", [&] { return load_series(cfg); });
    const ForecastSplit split = at_stage("split", [&] {
        return make_split(series, cfg.train_len, cfg.test_len, cfg.horizon, cfg.washout,
                          cfg.normalize);
    });

    ExperimentResult result;
    result.row.topology = cfg.topology.str();
    result.row.n_l = cfg.topology.reservoir_count();
    result.row.n_r = cfg.n_r;
    result.row.ip = cfg.ip_enabled;
    result.row.report.runs = cfg.runs;
    result.row.report.n_steps = cfg.test_len;

    double rm = 0, nr = 0, mp = 0;
    for (int i = 0; i < cfg.runs; ++i) {
        const RunMetrics m = evaluate_one(cfg, split, i);
        result.per_run.push_back(m);
        rm += m.rmse;
        nr += m.nrmse;
        mp += m.mape;
    }
    result.row.report.rmse = rm / cfg.runs;
    result.row.report.nrmse = nr / cfg.runs;
    result.row.report.mape = mp / cfg.runs;
    return result;
}

std::vector<ExperimentResult> run_sweep(const ExperimentConfig& cfg) {
    std::vector<TopologyKind> kinds = {
        TopologyKind::wide(cfg.topology.width),
        TopologyKind::layered(std::max(cfg.topology.depth, cfg.topology.width)),
        TopologyKind::criss_cross(2),
        TopologyKind::wide_layered(cfg.topology.width, std::max(cfg.topology.depth, 2)),
    };
    std::vector<ExperimentResult> results;
    for (const auto& kind : kinds) {
        for (bool ip : {false, true}) {
            ExperimentConfig c = cfg;
            c.topology = kind;
            c.ip_enabled = ip;
            results.push_back(run_experiment(c));
        }
    }
    return results;
}

namespace {

void emit_csv(const std::vector<ExperimentResult>& results, std::ostream& out) {
    out << "topology,n_l,n_r,ip,rmse_e3,nrmse_e3,mape_e3\n";
    out.precision(12);
    for (const auto& r : results) {
        out << r.row.topology << ',' << r.row.n_l << ',' << r.row.n_r << ','
            << (r.row.ip ? 'Y' : 'N') << ',' << r.row.report.rmse * 1e3 << ','
            << r.row.report.nrmse * 1e3 << ',' << r.row.report.mape * 1e3 << '\n';
    }
}

void emit_text(const std::vector<ExperimentResult>& results, std::ostream& out) {
    out.precision(12);
    for (const auto& r : results) {
        out << "topology = " << r.row.topology << "\n"
            << "n_l = " << r.row.n_l << "\n"
            << "n_r = " << r.row.n_r << "\n"
            << "ip = " << (r.row.ip ? "Y" : "N") << "\n"
            << "runs = " << r.row.report.runs << "\n"
            << "n_steps = " << r.row.report.n_steps << "\n"
            << "rmse = " << r.row.report.rmse << "\n"
            << "nrmse = " << r.row.report.nrmse << "\n"
            << "mape = " << r.row.report.mape << "\n";
        for (const auto& m : r.per_run)
            out << "run." << m.run << " = rmse " << m.rmse << " nrmse " << m.nrmse << " mape "
                << m.mape << "\n";
        out << "\n";
    }
}

}  // namespace

void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 std::ostream& out) {
    if (format == ReportFormat::csv)
        emit_csv(results, out);
    else
        emit_text(results, out);
    if (!out) throw data_error("emit_report: write failed");
}

void emit_report(const std::vector<ExperimentResult>& results, ReportFormat format,
                 const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("emit_report: cannot write " + path.string());
    emit_report(results, format, out);
}

std::vector<ReportRow> parse_report_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw data_error("parse_report_csv: empty input");
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        ReportRow row;
        std::getline(cells, row.topology, ',');
        std::getline(cells, cell, ',');
        row.n_l = std::stoi(cell);
        std::getline(cells, cell, ',');
        row.n_r = std::stoi(cell);
        std::getline(cells, cell, ',');
        row.ip = (cell == "Y");
        std::getline(cells, cell, ',');
        row.report.rmse = std::stod(cell) / 1e3;
        std::getline(cells, cell, ',');
        row.report.nrmse = std::stod(cell) / 1e3;
        std::getline(cells, cell, ',');
        row.report.mape = std::stod(cell) / 1e3;
        rows.push_back(row);
    }
    return rows;
}

double genome_fitness(const ExperimentConfig& base, const DecodedGenome& d) {
    ExperimentConfig cfg = base;
    cfg.topology = d.topology;
    cfg.n_r = d.n_r;
    cfg.init = d.init;
    cfg.beta = d.beta;
    cfg.ip_enabled = d.ip_enabled;
    cfg.validate();

    const TimeSeries series = load_series(cfg);
    const ForecastSplit split =
        make_split(series, cfg.train_len, cfg.test_len, cfg.horizon, cfg.washout, cfg.normalize);

    // Validation tail: last 20% of the training region, never the test set.
    const long fit_len = cfg.train_len * 8 / 10;
    const long val_len = cfg.train_len - fit_len;
    if (fit_len <= cfg.washout || val_len < 1)
        throw data_error("genome_fitness: training region too short for a validation tail");

    const Matrix train_in = to_row(split.train_in.values);

    double total = 0.0;
    const int eval_seeds = 3;
    for (int k = 0; k < eval_seeds; ++k) {
        const RngStream stream(cfg.seed, "fit/" + std::to_string(k));
        EsnModel model = build_model(build_connectivity(cfg.topology), 1, cfg.n_r, cfg.init,
                                     stream.child("init"));
        if (cfg.ip_enabled) model = pretrain(std::move(model), train_in, cfg.ip);

        const StateMatrix states = run(model, train_in, static_cast<int>(cfg.washout));
        const Matrix chi_fit = states.entries.leftCols(fit_len - cfg.washout);
        StateMatrix fit_states{chi_fit, static_cast<int>(cfg.washout), states.n_u, states.n_r,
                               states.n_l};
        const Matrix targets =
            to_row(tail(split.train_target.values, cfg.washout)).leftCols(fit_len - cfg.washout);
        const ReadoutWeights w = train_readout(fit_states, targets, cfg.beta);

        const Matrix chi_val = states.entries.rightCols(val_len);
        StateMatrix val_states{chi_val, 0, states.n_u, states.n_r, states.n_l};
        const Matrix pred = predict(w, val_states);

        std::vector<double> y_hat(pred.data(), pred.data() + pred.cols());
        std::vector<double> y = {split.train_target.values.end() - val_len,
                                 split.train_target.values.end()};
        if (split.scaler) {
            y_hat = split.scaler->invert(y_hat);
            y = split.scaler->invert(y);
        }
        total += rmse(y, y_hat);
    }
    return total / eval_seeds;
}

EvolutionOutcome run_evolution(const ExperimentConfig& base, std::ostream& log) {
    const GeneSpace space = hyperparameter_space();
    EvolutionConfig ga = base.ga;
    ga.seed = base.seed;

    log << "generation,best_fitness,mean_fitness,best_genome\n";
    log.precision(12);

    const auto fitness = [&](const Genome& g) {
        return genome_fitness(base, decode_genome(space, g));
    };
    EvolveResult result = evolve(space, fitness, ga);
    for (const auto& stat : result.log)
        log << stat.generation << ',' << stat.best_fitness << ',' << stat.mean_fitness << ",\""
            << genome_to_text(space, stat.best) << "\"\n";

    DecodedGenome best = decode_genome(space, result.best);
    return {std::move(result), std::move(best)};
}

}  // namespace esn
