#pragma once

#include "gksvm/rng.hpp"
#include "gksvm/smoothness.hpp"
#include "gksvm/solvers.hpp"
#include "gksvm/types.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>

namespace gksvm {

// --- support samplers -------------------------------------------------------------------------

/// Uniform on [0,1]^d' x {0}^(d-d'); intrinsic dimension d'.
PointMatrix sample_embedded_cube(std::size_t n, std::size_t d_prime, std::size_t d, Rng& rng);

enum class ManifoldKind { circle, swiss_roll };

/// Circle of radius 1/2 centered at (1/2, 1/2, 0, ...) (ρ = 1, d >= 2), or the swiss roll
/// (t cos t, h, t sin t), t ∈ [1.5π, 4.5π], h ∈ [0, 21], scaled uniformly into [0,1]^3 (ρ = 2, d >= 3).
PointMatrix sample_manifold(std::size_t n, ManifoldKind kind, std::size_t d, Rng& rng);

/// Intrinsic dimension of a manifold kind.
double manifold_dimension(ManifoldKind kind);

/// Each coordinate independently from the level-`levels` middle-thirds construction: one of the
/// 2^levels retained intervals uniformly, then uniform inside it.
PointMatrix sample_cantor_dust(std::size_t n, int levels, std::size_t d, Rng& rng);

/// log 2 / log 3 per coordinate.
double cantor_dimension(std::size_t d);

struct LorenzParams {
    double sigma = 10.0;
    double r = 28.0;
    double b = 8.0 / 3.0;
    double dt = 0.01;
    std::size_t burn_in = 10000;
    std::size_t stride = 10;
};

/// RK4 trajectory of x' = σ(y - x), y' = x(r - z) - y, z' = xy - bz from a random initial state;
/// after burn-in every stride-th state is kept, then the cloud is scaled uniformly into [0,1]^3.
/// Throws NumericalError if the state stops being finite.
PointMatrix sample_lorenz(std::size_t n, const LorenzParams& params, Rng& rng);

/// One RK4 step of the Lorenz system.
void lorenz_step(std::span<double, 3> state, const LorenzParams& params);

// --- regression -----------------------------------------------------------------------------

using PointSampler = std::function<PointMatrix(std::size_t, Rng&)>;

/// X from `sampler`, Y = f*(X) + U[-noise, noise]; labels lie in [-M, M] with M = sup|f*| + noise.
struct RegressionDistribution {
    std::string kind;
    PointSampler sampler;
    HolderTarget target;
    double noise = 0.1;
    double rho_true = 0.0;
    std::size_t d = 0;

    [[nodiscard]] double clip_m() const { return target.sup_bound() + noise; }
    [[nodiscard]] Dataset sample(std::size_t n, Rng& rng) const;
};

// --- classification -------------------------------------------------------------------------

enum class ClassificationKind { sawtooth, cusp };

/// Sawtooth profile on [-1, 1]: 2(1 - t) on (1/2, 1], 2t on [-1/2, 1/2], 2(-1 - t) on [-1, -1/2).
double sawtooth(double t);

/// Binary task on [-1,1]^2 with known posterior η(x) = P(Y = 1 | x).
///   sawtooth(σ): P_X has density ∝ |x₁|^σ on [-1/2,1/2]x[-1,1] and the constant (1/2)^σ
///                outside; 2η - 1 = sawtooth(x₁); declared (q, β) = (1, σ + 2).
///   cusp(ζ):     P_X uniform on {|x₂| <= |x₁|^ζ}; 2η - 1 = x₁; declared (q, β) = (ζ + 1, ζ + 2).
struct ClassificationDistribution {
    ClassificationKind kind = ClassificationKind::cusp;
    double shape = 1.0;  ///< σ for sawtooth, ζ for cusp
    double q_true = 0.0;
    double c_star = 1.0;
    double beta_true = 0.0;
    double rho_true = 2.0;
    std::size_t d = 2;

    [[nodiscard]] double eta(std::span<const double> x) const;
    [[nodiscard]] PointMatrix sample_x(std::size_t n, Rng& rng) const;
    /// Labels are +1 with probability η(x), else -1.
    [[nodiscard]] Dataset sample(std::size_t n, Rng& rng) const;
};

ClassificationDistribution make_classification(ClassificationKind kind, double shape);

std::string_view classification_kind_name(ClassificationKind kind);

// --- excess risk ----------------------------------------------------------------------------

/// Maps a point matrix to one prediction per row.
using Predictor = std::function<Vector(const PointMatrix&)>;

/// Mean over n_test fresh points of (clip(f(x), M) - f*(x))².
double excess_risk_mc(const Predictor& f, const RegressionDistribution& dist, std::size_t n_test,
                      Rng& rng);
double excess_risk_mc(const FittedModel& model, const RegressionDistribution& dist,
                      std::size_t n_test, Rng& rng);

struct ClassificationExcess {
    double classification = 0.0;  ///< E |2η-1| 1{sign f ≠ sign(2η-1)}, sign(0) = +1
    double hinge = 0.0;           ///< E[hinge risk at x of clip(f, 1)] - E[1 - |2η-1|]
};

/// Conditional expectations over Y are taken exactly from η, so only X is Monte-Carlo sampled.
ClassificationExcess excess_risk_mc(const Predictor& f, const ClassificationDistribution& dist,
                                    std::size_t n_test, Rng& rng);
ClassificationExcess excess_risk_mc(const FittedModel& model, const ClassificationDistribution& dist,
                                    std::size_t n_test, Rng& rng);

}  // namespace gksvm
