#pragma once

#include "gksvm/kernel.hpp"
#include "gksvm/types.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace gksvm {

enum class Loss {
    least_squares,   ///< (y - t)²
    hinge,           ///< max{0, 1 - y t}
    classification,  ///< 1{y sign(t) <= 0}, sign(0) = +1
};

std::string_view loss_name(Loss loss);
/// Accepts "ls", "least-squares", "hinge", "class", "classification".
Loss parse_loss(std::string_view name);

/// Pointwise loss value L(y, t).
double loss_value(Loss loss, double y, double t);

/// Clipped value of t at level M > 0.
constexpr double clip(double t, double m) { return std::clamp(t, -m, m); }

struct FitDiagnostics {
    bool converged = true;
    std::size_t iterations = 0;     ///< full coordinate sweeps (hinge); 1 for a direct solve
    double duality_gap = 0.0;       ///< hinge, in units of the regularized risk
    double residual = 0.0;          ///< least squares, ‖(K + nλI)α - y‖∞
    bool factorization_fallback = false;  ///< K + nλI was not numerically positive definite
};

/// Representer expansion f(x) = Σ_i α_i k_γ(x, x_i). Immutable after fitting.
struct FittedModel {
    PointMatrix support_points;
    Vector coefficients;
    Bandwidth gamma{1.0};
    double lambda = 1.0;
    Loss loss = Loss::least_squares;
    double clip_m = 1.0;
    FitDiagnostics diagnostics;
};

struct SvmConfig {
    double lambda = 1.0;
    Bandwidth gamma{1.0};
    Loss loss = Loss::least_squares;
    double clip_m = 1.0;
    double tol = 0.0;  ///< 0 selects the loss default (1e-10 least squares, 1e-6 hinge)
    std::size_t max_iter = 100000;

    /// Throws InputError on λ <= 0, M <= 0, or a hinge config with M != 1.
    void validate() const;
};

inline constexpr double kDefaultKrrTol = 1e-10;
inline constexpr double kDefaultHingeTol = 1e-6;
inline constexpr std::size_t kDefaultMaxSweeps = 100000;

/// Least-squares SVM (kernel ridge regression): solves (K + nλI)α = y by Cholesky.
FittedModel fit_krr(const Dataset& data, double lambda, Bandwidth gamma, double clip_m,
                    double tol = kDefaultKrrTol);
/// Same, with the Gram matrix of data.x precomputed.
FittedModel fit_krr(const Dataset& data, const KernelMatrix& gram, double lambda, double clip_m,
                    double tol = kDefaultKrrTol);

struct HingeOptions {
    double tol = kDefaultHingeTol;
    std::size_t max_iter = kDefaultMaxSweeps;
    std::optional<Vector> initial_dual;  ///< clamped into [0, C]
};

/// Box-constrained dual of the bias-free C-SVM:
///   max Σβ_i - ½ Σ β_i β_j y_i y_j K_ij  s.t. 0 <= β_i <= C.
struct HingeDualResult {
    Vector dual;       ///< β
    Vector decision;   ///< f(x_i) = Σ_j β_j y_j K_ij on the training points
    double duality_gap = 0.0;
    std::size_t sweeps = 0;
    bool converged = false;
};

/// Cyclic dual coordinate descent. The reported gap is (P - D) / (C n), i.e. measured on the
/// scale of λ‖f‖² + mean hinge loss when C = 1 / (2λn).
HingeDualResult solve_hinge_dual(const KernelMatrix& gram, const Vector& labels, double c,
                                 const HingeOptions& options);

/// Hinge-loss SVM with C = 1/(2λn); coefficients are α_i = β_i y_i and the clip level is 1.
FittedModel fit_hinge(const Dataset& data, double lambda, Bandwidth gamma,
                      const HingeOptions& options = {});
FittedModel fit_hinge(const Dataset& data, const KernelMatrix& gram, double lambda,
                      const HingeOptions& options = {});

/// Dispatches on config.loss (least_squares or hinge).
FittedModel fit(const Dataset& data, const SvmConfig& config);

/// Σ_i α_i k_γ(x, x_i) for each row of x, optionally clipped at the model's M.
Vector predict(const FittedModel& model, const PointMatrix& x, bool clipped);

/// Mean loss over paired predictions and labels.
double empirical_risk(const Vector& predictions, const Vector& labels, Loss loss);

/// λ αᵀKα + (1/n) Σ L(y_i, f(x_i)) on the model's own training data, unclipped.
double primal_objective(const FittedModel& model, const Vector& labels);

/// Labels must be exactly ±1.
void require_binary_labels(const Vector& y);

}  // namespace gksvm
