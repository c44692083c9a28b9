#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gksvm {

/// n points in R^d, one point per row.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Malformed arguments or data (exit status 1 at the CLI).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not produce a usable number (exit status 2).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too little usable data to fit a dimension or rate estimate.
class EstimationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Feature matrix with one label per row. `y` may be empty for unlabeled point clouds.
struct Dataset {
    PointMatrix x;
    Vector y;

    [[nodiscard]] std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }
    [[nodiscard]] bool labeled() const { return y.size() == x.rows() && x.rows() > 0; }

    /// Rows [first, first + count), order preserved.
    [[nodiscard]] Dataset slice(std::size_t first, std::size_t count) const;
};

void require_finite(const PointMatrix& x, const char* what);
void require_finite(const Vector& v, const char* what);

}  // namespace gksvm
