#include "gksvm/kernel.hpp"

#include <cmath>
#include <string>

namespace gksvm {

Bandwidth::Bandwidth(double gamma) : gamma_(gamma), inv_sq_(0.0) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw InputError("bandwidth must be positive and finite, got " + std::to_string(gamma));
    }
    inv_sq_ = 1.0 / (gamma * gamma);
}

double squared_distance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InputError("dimension mismatch: " + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()));
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double diff = x[k] - y[k];
        acc += diff * diff;
    }
    return acc;
}

double gaussian_eval(std::span<const double> x, std::span<const double> y, Bandwidth gamma) {
    return std::exp(-squared_distance(x, y) * gamma.inv_sq());
}

KernelMatrix kernel_matrix(const PointMatrix& points, Bandwidth gamma) {
    const Eigen::Index n = points.rows();
    if (n == 0) throw InputError("kernel_matrix: empty point set");
    PointMatrix k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k(i, i) = 1.0;
        const auto xi = row_span(points, i);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = gaussian_eval(xi, row_span(points, j), gamma);
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return {std::move(k), gamma};
}

PointMatrix cross_kernel(const PointMatrix& test, const PointMatrix& train, Bandwidth gamma) {
    if (test.rows() > 0 && train.rows() > 0 && test.cols() != train.cols()) {
        throw InputError("cross_kernel: dimension mismatch (" + std::to_string(test.cols()) +
                         " vs " + std::to_string(train.cols()) + ")");
    }
    PointMatrix k(test.rows(), train.rows());
    for (Eigen::Index i = 0; i < test.rows(); ++i) {
        const auto xi = row_span(test, i);
        for (Eigen::Index j = 0; j < train.rows(); ++j) {
            k(i, j) = gaussian_eval(xi, row_span(train, j), gamma);
        }
    }
    return k;
}

}  // namespace gksvm
