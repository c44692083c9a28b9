#pragma once

#include "gksvm/solvers.hpp"
#include "gksvm/types.hpp"

#include <cstddef>
#include <vector>

namespace gksvm {

/// Finite ε-net of an interval (lo, hi] or [lo, hi] that always contains hi.
struct ExponentNet {
    std::vector<double> points;  ///< ascending
    double radius = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool half_open = false;

    /// Distance from u to the nearest net point.
    [[nodiscard]] double distance_to(double u) const;
};

/// Greedy downward construction: hi, hi - 2ε, hi - 4ε, ..., with the last point clamped to
/// lo + ε (half-open) or lo (closed). Cardinality ⌈max(0, hi - lo - ε) / (2ε)⌉ + 1.
ExponentNet exponent_net(double lo, double hi, double epsilon, bool half_open);

enum class TaskMode { regression, classification };

TaskMode parse_task_mode(std::string_view name);
std::string_view task_mode_name(TaskMode mode);

/// Candidate sets Γ_n = {n^-a : a ∈ A_n} and Λ_n = {n^-b : b ∈ B_n}.
struct HyperGrid {
    std::vector<double> gammas;   ///< ascending
    std::vector<double> lambdas;  ///< ascending
    ExponentNet gamma_exponents;
    ExponentNet lambda_exponents;
    std::size_t n = 0;
    std::size_t d = 0;
    TaskMode mode = TaskMode::regression;
    bool singleton_lambda = false;

    [[nodiscard]] std::size_t size() const { return gammas.size() * lambdas.size(); }
};

/// A_n is a 1/log n-net of (0, 1] containing 1; B_n is a 1/log n-net of [1, d] (regression)
/// or (0, d] (classification) containing d. With `singleton_lambda`, Λ_n = {n^-d}.
HyperGrid build_grids(std::size_t n, std::size_t d, TaskMode mode, bool singleton_lambda = false);

/// Grid holding exactly one (λ, γ) pair.
HyperGrid singleton_grid(double lambda, double gamma);

struct CandidateResult {
    double lambda = 0.0;
    double gamma = 0.0;
    double validation_risk = 0.0;  ///< mean loss over the validation half, clipped predictions
    bool converged = true;
};

struct TvOptions {
    HingeOptions hinge;  ///< solver settings for hinge-loss candidates
    double krr_tol = kDefaultKrrTol;
};

struct TvSelection {
    double lambda = 0.0;
    double gamma = 0.0;
    double validation_risk = 0.0;
    FittedModel model;  ///< trained on the first ⌊n/2⌋ + 1 points only
    std::vector<CandidateResult> candidates;  ///< in grid order: λ outer, γ inner
    std::size_t train_size = 0;
};

/// Size of the training half, ⌊n/2⌋ + 1.
constexpr std::size_t tv_train_size(std::size_t n) { return n / 2 + 1; }

/// Trains on D₁ = first ⌊n/2⌋ + 1 points for every grid pair and keeps the pair whose clipped
/// predictions have the smallest validation loss on the rest. Ties prefer larger λ, then larger γ.
/// `loss` is least_squares or hinge; the validation loss is the same loss.
TvSelection tv_select(const Dataset& data, const HyperGrid& grid, Loss loss, double clip_m,
                      const TvOptions& options = {});

}  // namespace gksvm
