#include "gksvm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

namespace gksvm {

std::size_t covering_count(const PointMatrix& points, double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InputError("covering_count: epsilon must be positive");
    }
    const auto n = points.rows();
    const auto d = points.cols();
    if (n == 0) return 0;
    require_finite(points, "point cloud");

    const double inv_side = 1.0 / (2.0 * epsilon);
    std::vector<std::int64_t> cells(static_cast<std::size_t>(n * d));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < d; ++k) {
            cells[static_cast<std::size_t>(i * d + k)] =
                static_cast<std::int64_t>(std::floor(points(i, k) * inv_side));
        }
    }
    std::vector<std::size_t> order(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto du = static_cast<std::size_t>(d);
    const auto cell_less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(cells.begin() + a * du, cells.begin() + (a + 1) * du,
                                            cells.begin() + b * du, cells.begin() + (b + 1) * du);
    };
    std::sort(order.begin(), order.end(), cell_less);
    std::size_t distinct = 1;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (cell_less(order[i - 1], order[i])) ++distinct;
    }
    return distinct;
}

CoveringProfile covering_profile(const PointMatrix& points, int k_min, int k_max, double base) {
    if (k_min >= k_max) throw InputError("covering_profile: need k_min < k_max");
    if (!(base > 1.0)) throw InputError("covering_profile: scale base must exceed 1");
    if (points.rows() == 0) throw InputError("covering_profile: empty point cloud");
    CoveringProfile profile;
    profile.n_points = static_cast<std::size_t>(points.rows());
    for (int k = k_min; k <= k_max; ++k) {
        const double eps = std::pow(base, -k);
        profile.scales.push_back(eps);
        profile.counts.push_back(covering_count(points, eps));
    }
    return profile;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw EstimationError("line fit needs >= 2 points");
    const auto m = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw EstimationError("line fit needs at least two distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return fit;
}

DimensionEstimate boxdim_estimate(const CoveringProfile& profile) {
    if (profile.scales.size() != profile.counts.size()) {
        throw InputError("boxdim_estimate: scales and counts differ in length");
    }
    DimensionEstimate est;
    const auto& counts = profile.counts;
    if (counts.size() >= 2 &&
        std::all_of(counts.begin(), counts.end(), [&](std::size_t c) { return c == counts.front(); })) {
        est.rho_hat = 0.0;
        est.c_dim_hat = static_cast<double>(counts.front());
        est.r_squared = 1.0;
        est.scales_used = profile.scales;
        est.counts_used = counts;
        return est;
    }

    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (profile.n_points > 0 &&
            static_cast<double>(counts[k]) >= kSaturationFraction * static_cast<double>(profile.n_points)) {
            continue;
        }
        keep.push_back(k);
    }
    // Coarse-end plateau: drop the finer member of each leading equal pair.
    std::size_t first = 0;
    while (first + 1 < keep.size() && counts[keep[first + 1]] == counts[keep[first]]) {
        keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(first) + 1);
    }
    if (keep.size() < 2) {
        throw EstimationError("boxdim_estimate: " + std::to_string(keep.size()) +
                              " usable scale(s) after saturation filtering (n = " +
                              std::to_string(profile.n_points) + ", " +
                              std::to_string(counts.size()) + " scales)");
    }

    std::vector<double> lx;
    std::vector<double> ly;
    for (const std::size_t k : keep) {
        lx.push_back(std::log(1.0 / profile.scales[k]));
        ly.push_back(std::log(static_cast<double>(counts[k])));
        est.scales_used.push_back(profile.scales[k]);
        est.counts_used.push_back(counts[k]);
    }
    const LineFit fit = fit_line(lx, ly);
    est.rho_hat = std::max(0.0, fit.slope);
    est.c_dim_hat = std::exp(fit.intercept);
    est.r_squared = fit.r_squared;
    return est;
}

}  // namespace gksvm
