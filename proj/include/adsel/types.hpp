#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace adsel {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Input syntax problems: malformed CSV cells, ragged rows, bad config keys.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset contract violations detected before solving.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Out-of-range or inconsistent parameters.
struct ParameterError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failures inside the optimizer (non-finite updates, singular systems).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Metric undefined on the given inputs (e.g. no eligible samples).
struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace adsel
