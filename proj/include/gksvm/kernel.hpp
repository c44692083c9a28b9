#pragma once

#include "gksvm/types.hpp"

#include <span>

namespace gksvm {

/// Width γ of the Gaussian kernel k_γ(x, y) = exp(-‖x - y‖² / γ²). Always positive.
class Bandwidth {
public:
    explicit Bandwidth(double gamma);

    [[nodiscard]] double value() const { return gamma_; }
    [[nodiscard]] double inv_sq() const { return inv_sq_; }

    friend bool operator==(const Bandwidth&, const Bandwidth&) = default;

private:
    double gamma_;
    double inv_sq_;
};

/// Square symmetric Gram matrix with unit diagonal.
struct KernelMatrix {
    PointMatrix entries;
    Bandwidth gamma;
};

double squared_distance(std::span<const double> x, std::span<const double> y);

double gaussian_eval(std::span<const double> x, std::span<const double> y, Bandwidth gamma);

/// Each pair is evaluated once and mirrored, so the result is exactly symmetric.
KernelMatrix kernel_matrix(const PointMatrix& points, Bandwidth gamma);

/// Entry (i, j) is k_γ(test_i, train_j).
PointMatrix cross_kernel(const PointMatrix& test, const PointMatrix& train, Bandwidth gamma);

/// Row view of a point matrix as a span.
inline std::span<const double> row_span(const PointMatrix& m, Eigen::Index i) {
    return {m.data() + i * m.cols(), static_cast<std::size_t>(m.cols())};
}

}  // namespace gksvm
