#pragma once

// Independent reference implementations used by the unit and acceptance suites.

#include "gksvm/kernel.hpp"
#include "gksvm/rng.hpp"
#include "gksvm/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

using gksvm::PointMatrix;
using gksvm::Vector;

/// Gram matrix straight from the formula, no symmetry shortcut.
inline Eigen::MatrixXd gram(const PointMatrix& x, double gamma) {
    const auto n = x.rows();
    Eigen::MatrixXd k(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            k(i, j) = std::exp(-(x.row(i) - x.row(j)).squaredNorm() / (gamma * gamma));
        }
    }
    return k;
}

/// λ αᵀKα + mean hinge of f = Kα.
inline double hinge_primal(const Eigen::MatrixXd& k, const Vector& y, const Vector& alpha, double lambda) {
    const Vector f = k * alpha;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) loss += std::max(0.0, 1.0 - y[i] * f[i]);
    return lambda * alpha.dot(k * alpha) + loss / static_cast<double>(y.size());
}

/// Maximizes Σβ - ½βᵀQβ over [0, C]^n, Q = diag(y) K diag(y), by enumerating every
/// (lower, upper, free) assignment and solving the free block exactly. Only for n <= 8.
inline Vector hinge_dual_bruteforce(const Eigen::MatrixXd& k, const Vector& y, double c) {
    const auto n = static_cast<int>(y.size());
    const Eigen::MatrixXd q = y.asDiagonal() * k * y.asDiagonal();
    auto dual_value = [&](const Vector& b) { return b.sum() - 0.5 * b.dot(q * b); };

    Vector best = Vector::Zero(n);
    double best_value = dual_value(best);
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= 3;
    std::vector<int> state(static_cast<std::size_t>(n));
    for (int code = 0; code < combos; ++code) {
        int rest = code;
        std::vector<int> free_idx;
        Vector beta = Vector::Zero(n);
        for (int i = 0; i < n; ++i) {
            state[static_cast<std::size_t>(i)] = rest % 3;
            rest /= 3;
            if (state[static_cast<std::size_t>(i)] == 1) beta[i] = c;
            if (state[static_cast<std::size_t>(i)] == 2) free_idx.push_back(i);
        }
        if (!free_idx.empty()) {
            const auto m = static_cast<Eigen::Index>(free_idx.size());
            Eigen::MatrixXd qff(m, m);
            Vector rhs(m);
            for (Eigen::Index a = 0; a < m; ++a) {
                double r = 1.0;
                for (int j = 0; j < n; ++j) {
                    if (state[static_cast<std::size_t>(j)] == 1) r -= q(free_idx[a], j) * c;
                }
                rhs[a] = r;
                for (Eigen::Index b = 0; b < m; ++b) qff(a, b) = q(free_idx[a], free_idx[b]);
            }
            const Eigen::FullPivLU<Eigen::MatrixXd> lu(qff);
            if (!lu.isInvertible()) continue;
            const Vector sol = lu.solve(rhs);
            bool feasible = true;
            for (Eigen::Index a = 0; a < m; ++a) {
                if (sol[a] < 0.0 || sol[a] > c) feasible = false;
                beta[free_idx[a]] = sol[a];
            }
            if (!feasible) continue;
        }
        const double v = dual_value(beta);
        if (v > best_value) {
            best_value = v;
            best = beta;
        }
    }
    return best;
}

/// Greedy ε-net in ℓ∞: every point within ε of a center, centers pairwise more than ε apart.
inline std::size_t greedy_net_size(const PointMatrix& x, double eps) {
    std::vector<Eigen::Index> centers;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        bool covered = false;
        for (const auto c : centers) {
            if ((x.row(i) - x.row(c)).cwiseAbs().maxCoeff() <= eps) {
                covered = true;
                break;
            }
        }
        if (!covered) centers.push_back(i);
    }
    return centers.size();
}

/// Uniform points in [0,1]^d.
inline PointMatrix uniform_points(std::size_t n, std::size_t d, gksvm::Rng& rng) {
    PointMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < x.cols(); ++k) x(i, k) = rng.uniform();
    }
    return x;
}

/// Random ±1 labels with both classes present when n >= 2.
inline Vector random_labels(std::size_t n, gksvm::Rng& rng) {
    Vector y(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.coin() ? 1.0 : -1.0;
    if (n >= 2 && std::abs(y.sum()) == static_cast<double>(n)) y[0] = -y[0];
    return y;
}

}  // namespace oracle
