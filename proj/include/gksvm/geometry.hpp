#pragma once

#include "gksvm/types.hpp"

#include <cstddef>
#include <vector>

namespace gksvm {

/// Number of occupied cells of the origin-anchored grid with side 2ε. Each cell is the ℓ∞ ball
/// of radius ε about its center, so the count upper-bounds the minimal ℓ∞ covering number of
/// the point set and is within a factor 2^d of it.
std::size_t covering_count(const PointMatrix& points, double epsilon);

struct CoveringProfile {
    std::vector<double> scales;       ///< strictly decreasing ε_k
    std::vector<std::size_t> counts;  ///< N_k, non-decreasing
    std::size_t n_points = 0;
};

/// ε_k = base^-k for k = k_min..k_max (base 2 gives the dyadic sweep).
CoveringProfile covering_profile(const PointMatrix& points, int k_min, int k_max, double base = 2.0);

struct DimensionEstimate {
    double rho_hat = 0.0;     ///< slope of log N against log(1/ε)
    double c_dim_hat = 1.0;   ///< exp(intercept); approximate up to the 2^d cell/ball gap
    double r_squared = 1.0;
    std::vector<double> scales_used;
    std::vector<std::size_t> counts_used;
};

/// Share of the sample size at which a count is treated as saturated.
inline constexpr double kSaturationFraction = 0.9;

/// OLS fit of log N_k on log(1/ε_k). Scales with N_k >= 0.9 n and the leading plateau
/// (N_k == N_{k-1} at the coarse end) are dropped first; a constant profile gives ρ̂ = 0.
/// Throws EstimationError when fewer than two scales remain.
DimensionEstimate boxdim_estimate(const CoveringProfile& profile);

/// Ordinary least squares y ≈ intercept + slope·x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 1.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gksvm
