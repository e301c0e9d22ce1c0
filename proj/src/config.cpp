#include "moddeepesn/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "moddeepesn/errors.hpp"

namespace esn {

namespace {

std::string trim(std::string s) {
    auto issp = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    return s;
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': expected a number, got '" + value + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw config_error("key '" + key + "': expected an integer, got '" + value + "'");
    return v;
}

bool parse_flag(const std::string& key, const std::string& value) {
    if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "off" || value == "0" || value == "no") return false;
    throw config_error("key '" + key + "': expected a flag, got '" + value + "'");
}

ScaleParam parse_scale(const std::string& key, const std::string& value) {
    if (value == "X" || value == "x") return ScaleParam::xavier();
    return ScaleParam::value(parse_real(key, value));
}

std::string scale_str(const ScaleParam& p) {
    if (p.is_xavier()) return "X";
    std::ostringstream out;
    out.precision(12);
    out << p.numeric();
    return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
    init.validate();
    ip.validate();
    if (dataset == DatasetKind::csv && csv_path.empty())
        throw config_error("csv dataset requires csv_path");
    if (n_r < 1) throw config_error("n_r must be >= 1");
    if (runs < 1) throw config_error("runs must be >= 1");
    if (!(beta >= 0.0)) throw config_error("beta must be >= 0");
    if (train_len < 1 || test_len < 1) throw config_error("train_len/test_len must be >= 1");
    if (horizon < 0) throw config_error("horizon must be >= 0");
    if (washout < 0) throw config_error("washout must be >= 0");
    if (washout >= train_len)
        throw config_error("washout must be smaller than the training length");
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    const auto probability = [&](const char* what) {
        const double v = parse_real(key, value);
        if (!(v >= 0.0 && v <= 1.0))
            throw config_error(std::string("key '") + what + "': must be in [0, 1]");
        return v;
    };

    if (key == "dataset") {
        if (value == "mackey_glass") cfg.dataset = DatasetKind::mackey_glass;
        else if (value == "csv") cfg.dataset = DatasetKind::csv;
        else throw config_error("dataset must be mackey_glass or csv");
    } else if (key == "csv_path") cfg.csv_path = value;
    else if (key == "csv_column") cfg.csv_column = value;
    else if (key == "mg.a") cfg.mg.a = parse_real(key, value);
    else if (key == "mg.b") cfg.mg.b = parse_real(key, value);
    else if (key == "mg.p") cfg.mg.p = parse_real(key, value);
    else if (key == "mg.tau") cfg.mg.tau = parse_real(key, value);
    else if (key == "mg.dt") cfg.mg.dt = parse_real(key, value);
    else if (key == "mg.x0") cfg.mg.x0 = parse_real(key, value);
    else if (key == "mg.transient") cfg.mg.transient = parse_long(key, value);
    else if (key == "mg.samples") cfg.mg_samples = parse_long(key, value);
    else if (key == "train_len") cfg.train_len = parse_long(key, value);
    else if (key == "test_len") cfg.test_len = parse_long(key, value);
    else if (key == "horizon") cfg.horizon = parse_long(key, value);
    else if (key == "washout") cfg.washout = parse_long(key, value);
    else if (key == "normalize") cfg.normalize = parse_flag(key, value);
    else if (key == "topology") cfg.topology = TopologyKind::parse(value);
    else if (key == "n_r") cfg.n_r = static_cast<int>(parse_long(key, value));
    else if (key == "rho_hat") cfg.init.rho_hat = parse_scale(key, value);
    else if (key == "sigma_in") cfg.init.sigma_in = parse_scale(key, value);
    else if (key == "sigma_l") cfg.init.sigma_l = parse_scale(key, value);
    else if (key == "s_in") cfg.init.s_in = probability("s_in");
    else if (key == "s_hat_l") cfg.init.s_hat_l = probability("s_hat_l");
    else if (key == "s_l") cfg.init.s_l = probability("s_l");
    else if (key == "alpha") cfg.init.leak = parse_real(key, value);
    else if (key == "beta") cfg.beta = parse_real(key, value);
    else if (key == "ip.enabled") cfg.ip_enabled = parse_flag(key, value);
    else if (key == "ip.eta") cfg.ip.eta = parse_real(key, value);
    else if (key == "ip.mu") cfg.ip.mu = parse_real(key, value);
    else if (key == "ip.sigma") cfg.ip.sigma = parse_real(key, value);
    else if (key == "ip.epochs") cfg.ip.epochs = static_cast<int>(parse_long(key, value));
    else if (key == "ga.population") cfg.ga.population = static_cast<int>(parse_long(key, value));
    else if (key == "ga.generations") cfg.ga.generations = static_cast<int>(parse_long(key, value));
    else if (key == "ga.tournament_size")
        cfg.ga.tournament_size = static_cast<int>(parse_long(key, value));
    else if (key == "ga.crossover_p") cfg.ga.crossover_p = probability("ga.crossover_p");
    else if (key == "ga.mutation_p") cfg.ga.mutation_p = probability("ga.mutation_p");
    else if (key == "runs") cfg.runs = static_cast<int>(parse_long(key, value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_long(key, value));
    else if (key == "output") cfg.output = value;
    else if (key == "format") {
        if (value == "csv") cfg.format = ReportFormat::csv;
        else if (value == "text") cfg.format = ReportFormat::text;
        else throw config_error("format must be csv or text");
    } else {
        throw config_error("unknown config key '" + key + "'");
    }

    // Range errors surface immediately, matching flag-level validation.
    try {
        if (key == "alpha" || key == "rho_hat" || key == "sigma_in" || key == "sigma_l")
            cfg.init.validate();
        if (key.rfind("ip.", 0) == 0 && key != "ip.enabled") cfg.ip.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    ExperimentConfig cfg;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected 'key = value'");
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

std::string decoded_genome_keys(const DecodedGenome& d) {
    std::ostringstream out;
    out.precision(12);
    out << "topology = " << d.topology.str() << "\n"
        << "n_r = " << d.n_r << "\n"
        << "beta = " << d.beta << "\n"
        << "alpha = " << d.init.leak << "\n"
        << "rho_hat = " << scale_str(d.init.rho_hat) << "\n"
        << "sigma_in = " << scale_str(d.init.sigma_in) << "\n"
        << "sigma_l = " << scale_str(d.init.sigma_l) << "\n"
        << "s_in = " << d.init.s_in << "\n"
        << "s_hat_l = " << d.init.s_hat_l << "\n"
        << "s_l = " << d.init.s_l << "\n"
        << "ip.enabled = " << (d.ip_enabled ? "true" : "false") << "\n";
    return out.str();
}

void write_config_file(const ExperimentConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write config file: " + path.string());
    out.precision(12);
    out << "dataset = " << (cfg.dataset == DatasetKind::csv ? "csv" : "mackey_glass") << "\n";
    if (!cfg.csv_path.empty()) out << "csv_path = " << cfg.csv_path << "\n";
    out << "csv_column = " << cfg.csv_column << "\n"
        << "mg.samples = " << cfg.mg_samples << "\n"
        << "train_len = " << cfg.train_len << "\n"
        << "test_len = " << cfg.test_len << "\n"
        << "horizon = " << cfg.horizon << "\n"
        << "washout = " << cfg.washout << "\n"
        << "normalize = " << (cfg.normalize ? "true" : "false") << "\n";
    DecodedGenome d{cfg.topology, cfg.n_r, cfg.init, cfg.beta, cfg.ip_enabled};
    out << decoded_genome_keys(d);
    out << "ip.eta = " << cfg.ip.eta << "\n"
        << "ip.mu = " << cfg.ip.mu << "\n"
        << "ip.sigma = " << cfg.ip.sigma << "\n"
        << "ip.epochs = " << cfg.ip.epochs << "\n"
        << "runs = " << cfg.runs << "\n"
        << "seed = " << cfg.seed << "\n";
    if (!out) throw data_error("write failed: " + path.string());
}

}  // namespace esn
