#pragma once

#include <stdexcept>
#include <string>

namespace esn {

/// Bad configuration: unknown keys, out-of-range values, malformed grammar.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad or insufficient data: missing files, malformed rows, length mismatches.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: singular systems, diverged adaptation, infeasible scaling.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace esn
