#include "gksvm/smoothness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace gksvm {

namespace {

double binomial(int s, int j) {
    double c = 1.0;
    for (int i = 1; i <= j; ++i) c = c * static_cast<double>(s - j + i) / static_cast<double>(i);
    return c;
}

Vector random_unit(std::size_t d, Rng& rng) {
    Vector u(static_cast<Eigen::Index>(d));
    double norm = 0.0;
    while (norm == 0.0) {
        for (Eigen::Index k = 0; k < u.size(); ++k) u[k] = rng.normal();
        norm = u.norm();
    }
    return u / norm;
}

}  // namespace

HolderTarget HolderTarget::ridge(double alpha, std::size_t d, std::vector<RidgeTerm> terms) {
    if (!(alpha > 0.0) || alpha > 1.0) throw InputError("ridge targets need alpha in (0, 1]");
    HolderTarget f;
    f.alpha_ = alpha;
    f.d_ = d;
    for (const auto& t : terms) {
        if (static_cast<std::size_t>(t.anchor.size()) != d || static_cast<std::size_t>(t.direction.size()) != d) {
            throw InputError("ridge term dimension mismatch");
        }
        f.weight_sum_ += std::abs(t.weight);
    }
    f.ridges_ = std::move(terms);
    return f;
}

HolderTarget HolderTarget::waves(double alpha, std::size_t d, std::vector<WaveTerm> terms) {
    if (!(alpha > 0.0)) throw InputError("alpha must be positive");
    HolderTarget f;
    f.alpha_ = alpha;
    f.d_ = d;
    for (const auto& t : terms) {
        if (static_cast<std::size_t>(t.frequency.size()) != d) throw InputError("wave term dimension mismatch");
        f.weight_sum_ += std::abs(t.weight);
    }
    f.waves_ = std::move(terms);
    return f;
}

double HolderTarget::operator()(std::span<const double> x) const {
    if (x.size() != d_) {
        throw InputError("target expects dimension " + std::to_string(d_) + ", got " +
                         std::to_string(x.size()));
    }
    const Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
    double acc = 0.0;
    for (const auto& t : ridges_) {
        acc += t.weight * std::pow(std::abs((xv - t.anchor).dot(t.direction)), alpha_);
    }
    for (const auto& t : waves_) acc += t.weight * std::sin(xv.dot(t.frequency) + t.phase);
    return acc;
}

Vector HolderTarget::operator()(const PointMatrix& x) const {
    Vector out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        out[i] = (*this)(std::span<const double>(x.data() + i * x.cols(), static_cast<std::size_t>(x.cols())));
    }
    return out;
}

double HolderTarget::sup_bound() const {
    double bound = 0.0;
    for (const auto& t : ridges_) {
        // max over the unit cube of |⟨x - a, u⟩| is attained at a vertex.
        const double shift = t.anchor.dot(t.direction);
        const double top = t.direction.cwiseMax(0.0).sum() - shift;
        const double bottom = shift - t.direction.cwiseMin(0.0).sum();
        bound += std::abs(t.weight) * std::pow(std::max(top, bottom), alpha_);
    }
    for (const auto& t : waves_) bound += std::abs(t.weight);
    return bound;
}

ScalarField HolderTarget::as_field() const {
    return [f = *this](std::span<const double> x) { return f(x); };
}

HolderTarget holder_target(double alpha, std::size_t d, std::uint64_t seed, std::size_t terms) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("holder_target: alpha must be positive");
    if (d == 0) throw InputError("holder_target: dimension must be positive");
    Rng rng(seed);
    std::vector<double> weights(terms);
    double total = 0.0;
    for (auto& w : weights) {
        w = rng.uniform(-1.0, 1.0);
        total += std::abs(w);
    }
    for (auto& w : weights) w /= total;

    const auto dd = static_cast<Eigen::Index>(d);
    if (alpha <= 1.0) {
        std::vector<RidgeTerm> ridge_terms;
        for (const double w : weights) {
            Vector anchor(dd);
            for (Eigen::Index k = 0; k < dd; ++k) anchor[k] = rng.uniform();
            ridge_terms.push_back({w, std::move(anchor), random_unit(d, rng)});
        }
        return HolderTarget::ridge(alpha, d, std::move(ridge_terms));
    }
    std::vector<WaveTerm> wave_terms;
    for (const double w : weights) {
        Vector freq = random_unit(d, rng) * rng.uniform(0.5, 1.0);
        wave_terms.push_back({w, std::move(freq), rng.uniform(0.0, 2.0 * std::numbers::pi)});
    }
    return HolderTarget::waves(alpha, d, std::move(wave_terms));
}

int smoothness_order(double alpha) { return static_cast<int>(std::floor(alpha)) + 1; }

double difference_op(const ScalarField& f, std::span<const double> x, std::span<const double> h, int s) {
    if (s < 1) throw InputError("difference order must be >= 1");
    if (x.size() != h.size()) throw InputError("difference_op: shift has the wrong dimension");
    std::vector<double> point(x.size());
    double acc = 0.0;
    for (int j = 0; j <= s; ++j) {
        for (std::size_t k = 0; k < x.size(); ++k) point[k] = x[k] + static_cast<double>(j) * h[k];
        const double sign = ((s - j) % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binomial(s, j) * f(point);
    }
    return acc;
}

double difference_norm(const ScalarField& f, const PointMatrix& samples, std::span<const double> h, int s) {
    if (samples.rows() == 0) throw InputError("difference_norm: empty sample");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
        const std::span<const double> x(samples.data() + i * samples.cols(),
                                        static_cast<std::size_t>(samples.cols()));
        const double v = difference_op(f, x, h, s);
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(samples.rows()));
}

namespace {

std::vector<Vector> draw_directions(std::size_t count, std::size_t d, Rng& rng) {
    if (count == 0) throw InputError("need at least one direction");
    std::vector<Vector> dirs;
    dirs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) dirs.push_back(random_unit(d, rng));
    return dirs;
}

double shell_max(const ScalarField& f, const PointMatrix& samples, int s, double t,
                 const std::vector<Vector>& dirs) {
    double best = 0.0;
    for (const double length : {t, t / 2.0, t / 4.0}) {
        for (const auto& u : dirs) {
            const Vector h = length * u;
            best = std::max(best, difference_norm(f, samples, {h.data(), static_cast<std::size_t>(h.size())}, s));
        }
    }
    return best;
}

}  // namespace

double modulus_of_smoothness(const ScalarField& f, const PointMatrix& samples, int s, double t,
                             std::size_t n_directions, Rng& rng) {
    if (!(t > 0.0)) throw InputError("modulus_of_smoothness: t must be positive");
    if (samples.rows() == 0) throw InputError("modulus_of_smoothness: empty sample");
    const auto dirs = draw_directions(n_directions, static_cast<std::size_t>(samples.cols()), rng);
    return shell_max(f, samples, s, t, dirs);
}

std::vector<double> modulus_profile(const ScalarField& f, const PointMatrix& samples, int s,
                                    const std::vector<double>& t_grid, std::size_t n_directions,
                                    Rng& rng) {
    if (samples.rows() == 0) throw InputError("modulus_profile: empty sample");
    if (!std::is_sorted(t_grid.begin(), t_grid.end())) throw InputError("t-grid must ascend");
    for (const double t : t_grid) {
        if (!(t > 0.0)) throw InputError("t-grid values must be positive");
    }
    const auto dirs = draw_directions(n_directions, static_cast<std::size_t>(samples.cols()), rng);
    std::vector<double> out;
    out.reserve(t_grid.size());
    double running = 0.0;
    for (const double t : t_grid) {
        running = std::max(running, shell_max(f, samples, s, t, dirs));
        out.push_back(running);
    }
    return out;
}

std::vector<double> default_t_grid(const PointMatrix& samples, std::size_t count) {
    if (samples.rows() == 0) throw InputError("default_t_grid: empty sample");
    if (count < 2) throw InputError("default_t_grid: need at least two values");
    const double diameter = (samples.colwise().maxCoeff() - samples.colwise().minCoeff()).norm();
    const double lo = 1e-3;
    const double hi = std::max(diameter, 2.0 * lo);
    std::vector<double> grid(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(count - 1);
        grid[i] = lo * std::pow(hi / lo, frac);
    }
    return grid;
}

double besov_seminorm_estimate(const ScalarField& f, const PointMatrix& samples, double alpha,
                               const std::vector<double>& t_grid, Rng& rng,
                               std::size_t n_directions) {
    if (!(alpha > 0.0)) throw InputError("besov_seminorm_estimate: alpha must be positive");
    const auto profile = modulus_profile(f, samples, smoothness_order(alpha), t_grid, n_directions, rng);
    double best = 0.0;
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        best = std::max(best, std::pow(t_grid[i], -alpha) * profile[i]);
    }
    return best;
}

}  // namespace gksvm
