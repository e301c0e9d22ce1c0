#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace esn {

struct TimeSeries {
    std::vector<double> values;
    double dt = 1.0;
    std::string name;

    std::size_t size() const { return values.size(); }
};

/// Affine normalization record: normalized = (x - offset) * scale.
struct Scaler {
    double offset = 0.0;
    double scale = 1.0;

    double apply(double x) const { return (x - offset) * scale; }
    double invert(double y) const { return y / scale + offset; }
    std::vector<double> apply(const std::vector<double>& xs) const;
    std::vector<double> invert(const std::vector<double>& ys) const;
};

/// Aligned forecast data: target(t) = source(t + horizon), train before test.
struct ForecastSplit {
    TimeSeries train_in, train_target, test_in, test_target;
    long horizon = 0;
    long washout = 0;
    std::optional<Scaler> scaler;  // fit on the training inputs when normalizing
};

struct MackeyGlassParams {
    double a = 0.2;
    double b = 0.1;
    double p = 10.0;
    double tau = 17.0;
    double dt = 1.0;
    double x0 = 1.2;
    long transient = 1000;
};

/// Integrates dx/dt = a x(t-tau) / (1 + x(t-tau)^p) - b x(t) with classical
/// RK4, constant history x0 on [-tau, 0], delayed values read at the nearest
/// grid point. Returns n samples starting after the transient; sample i sits
/// at t = (transient + i) dt. Fully deterministic.
TimeSeries gen_mackey_glass(long n, const MackeyGlassParams& params = {});

/// Reads one named column from a headered CSV (UTF-8, \n or \r\n). Malformed
/// cells are rejected with their row number.
TimeSeries load_csv_series(const std::filesystem::path& path, const std::string& column);

/// Writes a single-column CSV with a header row.
void save_csv_series(const TimeSeries& series, const std::filesystem::path& path,
                     const std::string& column = "value");

/// Cuts contiguous train/test segments with horizon-shifted targets. When
/// normalize is set, an affine map fit on the training inputs rescales
/// everything to [0, 1] and is recorded for inversion.
ForecastSplit make_split(const TimeSeries& series, long train_len, long test_len, long horizon,
                         long washout, bool normalize);

}  // namespace esn
