#pragma once

#include "gksvm/rng.hpp"
#include "gksvm/types.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gksvm {

using ScalarField = std::function<double(std::span<const double>)>;

/// c · |⟨x - anchor, direction⟩|^α
struct RidgeTerm {
    double weight = 0.0;
    Vector anchor;
    Vector direction;  ///< unit length
};

/// c · sin(⟨ω, x⟩ + φ)
struct WaveTerm {
    double weight = 0.0;
    Vector frequency;
    double phase = 0.0;
};

/// Target function with a declared Hölder exponent, defined on all of R^d.
///
/// For α ∈ (0, 1] it is a sum of ridge terms with Σ|c_j| <= 1, hence α-Hölder with constant
/// Σ|c_j| in the Euclidean norm. For α > 1 it is a sum of sine waves with ‖ω_j‖ <= 1, so every
/// derivative of every order is bounded by Σ|c_j|.
class HolderTarget {
public:
    HolderTarget() = default;

    static HolderTarget ridge(double alpha, std::size_t d, std::vector<RidgeTerm> terms);
    static HolderTarget waves(double alpha, std::size_t d, std::vector<WaveTerm> terms);

    double operator()(std::span<const double> x) const;
    Vector operator()(const PointMatrix& x) const;

    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] std::size_t dim() const { return d_; }
    [[nodiscard]] std::size_t terms() const { return ridges_.size() + waves_.size(); }
    /// Σ|c_j|: Hölder constant (α <= 1) or derivative bound (α > 1).
    [[nodiscard]] double holder_constant() const { return weight_sum_; }
    /// Bound on |f| over [0,1]^d.
    [[nodiscard]] double sup_bound() const;

    [[nodiscard]] ScalarField as_field() const;

private:
    double alpha_ = 1.0;
    std::size_t d_ = 0;
    double weight_sum_ = 0.0;
    std::vector<RidgeTerm> ridges_;
    std::vector<WaveTerm> waves_;
};

/// Random target: anchors uniform in [0,1]^d, directions uniform on the sphere, weights
/// normalized to Σ|c_j| = 1. `terms` = 0 gives the zero function.
HolderTarget holder_target(double alpha, std::size_t d, std::uint64_t seed, std::size_t terms = 4);

/// Δ_h^s f(x) = Σ_{j=0}^s C(s,j) (-1)^(s-j) f(x + j h).
double difference_op(const ScalarField& f, std::span<const double> x, std::span<const double> h,
                     int s);

/// Empirical L2(μ̂) norm of Δ_h^s f over the rows of `samples`.
double difference_norm(const ScalarField& f, const PointMatrix& samples, std::span<const double> h,
                       int s);

/// Monte-Carlo lower bound of sup_{‖h‖<=t} ‖Δ_h^s f‖_{L2(μ)}: maximum over `n_directions`
/// random unit directions at lengths t, t/2, t/4.
double modulus_of_smoothness(const ScalarField& f, const PointMatrix& samples, int s, double t,
                             std::size_t n_directions, Rng& rng);

/// Modulus at every t of an ascending grid with one shared direction set, as running maxima
/// over t so the profile is non-decreasing.
std::vector<double> modulus_profile(const ScalarField& f, const PointMatrix& samples, int s,
                                    const std::vector<double>& t_grid, std::size_t n_directions,
                                    Rng& rng);

/// `count` log-spaced values from 1e-3 to the diagonal of the samples' bounding box.
std::vector<double> default_t_grid(const PointMatrix& samples, std::size_t count = 16);

inline constexpr std::size_t kDefaultDirections = 64;

/// max over t of t^-α ω_s(f, t) with s = ⌊α⌋ + 1.
double besov_seminorm_estimate(const ScalarField& f, const PointMatrix& samples, double alpha,
                               const std::vector<double>& t_grid, Rng& rng,
                               std::size_t n_directions = kDefaultDirections);

/// s = ⌊α⌋ + 1
int smoothness_order(double alpha);

}  // namespace gksvm
