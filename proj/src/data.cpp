#include "moddeepesn/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "moddeepesn/errors.hpp"

namespace esn {

std::vector<double> Scaler::apply(const std::vector<double>& xs) const {
    std::vector<double> out(xs.size());
    std::transform(xs.begin(), xs.end(), out.begin(), [&](double x) { return apply(x); });
    return out;
}

std::vector<double> Scaler::invert(const std::vector<double>& ys) const {
    std::vector<double> out(ys.size());
    std::transform(ys.begin(), ys.end(), out.begin(), [&](double y) { return invert(y); });
    return out;
}

TimeSeries gen_mackey_glass(long n, const MackeyGlassParams& prm) {
    if (n < 1) throw std::invalid_argument("gen_mackey_glass: n must be >= 1");
    if (!(prm.dt > 0.0)) throw std::invalid_argument("gen_mackey_glass: dt must be > 0");
    if (prm.tau < 0.0) throw std::invalid_argument("gen_mackey_glass: tau must be >= 0");
    const double ratio = prm.tau / prm.dt;
    const long tau_steps = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(tau_steps)) > 1e-9)
        throw std::invalid_argument("gen_mackey_glass: tau must be an integer multiple of dt");
    if (prm.transient < tau_steps)
        throw std::invalid_argument("gen_mackey_glass: transient must cover tau/dt steps");

    const long total = prm.transient + n;  // grid points 0..total-1 are emitted from `transient`
    std::vector<double> buf(static_cast<std::size_t>(tau_steps + total), prm.x0);
    // buf[j] holds x at grid index k = j - tau_steps; history (k <= 0) stays x0.

    const auto deriv = [&](double x, double xd) {
        return prm.a * xd / (1.0 + std::pow(xd, prm.p)) - prm.b * x;
    };
    // Delayed value at continuous time s, snapped to the nearest grid point.
    const auto delayed = [&](long k, double offset_steps) {
        const long kd = std::lround(static_cast<double>(k) + offset_steps) - tau_steps;
        return buf[static_cast<std::size_t>(std::max(kd, -tau_steps) + tau_steps)];
    };

    for (long k = 0; k + 1 < total; ++k) {
        const double x = buf[static_cast<std::size_t>(k + tau_steps)];
        double k1, k2, k3, k4;
        if (tau_steps == 0) {
            // Degenerates to an ODE; use the stage values themselves.
            k1 = deriv(x, x);
            const double x2 = x + 0.5 * prm.dt * k1;
            k2 = deriv(x2, x2);
            const double x3 = x + 0.5 * prm.dt * k2;
            k3 = deriv(x3, x3);
            const double x4 = x + prm.dt * k3;
            k4 = deriv(x4, x4);
        } else {
            const double xd0 = delayed(k, 0.0);
            const double xdh = delayed(k, 0.5);
            const double xd1 = delayed(k, 1.0);
            k1 = deriv(x, xd0);
            k2 = deriv(x + 0.5 * prm.dt * k1, xdh);
            k3 = deriv(x + 0.5 * prm.dt * k2, xdh);
            k4 = deriv(x + prm.dt * k3, xd1);
        }
        buf[static_cast<std::size_t>(k + 1 + tau_steps)] =
            x + prm.dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }

    TimeSeries out;
    out.dt = prm.dt;
    out.name = "mackey-glass";
    out.values.assign(buf.begin() + tau_steps + prm.transient, buf.end());
    return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim_cell(std::string s) {
    auto issp = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r'; };
    while (!s.empty() && issp(s.front())) s.erase(s.begin());
    while (!s.empty() && issp(s.back())) s.pop_back();
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

TimeSeries load_csv_series(const std::filesystem::path& path, const std::string& column) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path.string());

    std::string header;
    if (!std::getline(in, header)) throw data_error("empty file: " + path.string());

    const auto names = split_csv_line(header);
    long col = -1;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (trim_cell(names[i]) == column) {
            col = static_cast<long>(i);
            break;
        }
    if (col < 0)
        throw data_error("column '" + column + "' not found in " + path.string());

    TimeSeries out;
    out.name = column;
    std::string line;
    long row = 1;  // header is row 1
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (static_cast<long>(cells.size()) <= col)
            throw data_error("row " + std::to_string(row) + ": missing column '" + column + "'");
        const std::string cell = trim_cell(cells[static_cast<std::size_t>(col)]);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v))
            throw data_error("row " + std::to_string(row) + ": non-numeric cell '" + cell + "'");
        out.values.push_back(v);
    }
    if (out.values.empty()) throw data_error("no data rows in " + path.string());
    return out;
}

void save_csv_series(const TimeSeries& series, const std::filesystem::path& path,
                     const std::string& column) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write file: " + path.string());
    out << column << "\n";
    out.precision(17);
    for (double v : series.values) out << v << "\n";
    if (!out) throw data_error("write failed: " + path.string());
}

ForecastSplit make_split(const TimeSeries& series, long train_len, long test_len, long horizon,
                         long washout, bool normalize) {
    if (train_len < 1 || test_len < 1)
        throw std::invalid_argument("make_split: train/test lengths must be >= 1");
    if (horizon < 0 || washout < 0)
        throw std::invalid_argument("make_split: horizon and washout must be >= 0");
    const long n = static_cast<long>(series.size());
    if (train_len + test_len + horizon > n)
        throw data_error("make_split: series too short for the requested split");

    ForecastSplit split;
    split.horizon = horizon;
    split.washout = washout;

    const auto& v = series.values;
    const auto segment = [&](long begin, long len, const char* tag) {
        TimeSeries s;
        s.dt = series.dt;
        s.name = series.name + "/" + tag;
        s.values.assign(v.begin() + begin, v.begin() + begin + len);
        return s;
    };
    split.train_in = segment(0, train_len, "train_in");
    split.train_target = segment(horizon, train_len, "train_target");
    split.test_in = segment(train_len, test_len, "test_in");
    split.test_target = segment(train_len + horizon, test_len, "test_target");

    if (normalize) {
        const auto [lo, hi] =
            std::minmax_element(v.begin(), v.begin() + train_len);
        if (*hi == *lo) throw data_error("make_split: constant training segment");
        Scaler sc{*lo, 1.0 / (*hi - *lo)};
        for (auto* s : {&split.train_in, &split.train_target, &split.test_in, &split.test_target})
            s->values = sc.apply(s->values);
        split.scaler = sc;
    }
    return split;
}

}  // namespace esn
