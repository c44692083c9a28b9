#include "gksvm/datagen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace gksvm {

PointMatrix sample_embedded_cube(std::size_t n, std::size_t d_prime, std::size_t d, Rng& rng) {
    if (d_prime < 1 || d_prime > d) {
        throw InputError("embedded cube needs 1 <= d' <= d (d' = " + std::to_string(d_prime) +
                         ", d = " + std::to_string(d) + ")");
    }
    PointMatrix x = PointMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(d_prime); ++k) x(i, k) = rng.uniform();
    }
    return x;
}

double manifold_dimension(ManifoldKind kind) { return kind == ManifoldKind::circle ? 1.0 : 2.0; }

PointMatrix sample_manifold(std::size_t n, ManifoldKind kind, std::size_t d, Rng& rng) {
    const std::size_t needed = kind == ManifoldKind::circle ? 2 : 3;
    if (d < needed) {
        throw InputError("manifold needs ambient dimension >= " + std::to_string(needed));
    }
    PointMatrix x = PointMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    constexpr double pi = std::numbers::pi;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        if (kind == ManifoldKind::circle) {
            const double theta = rng.uniform(0.0, 2.0 * pi);
            x(i, 0) = 0.5 + 0.5 * std::cos(theta);
            x(i, 1) = 0.5 + 0.5 * std::sin(theta);
        } else {
            const double t = 1.5 * pi * (1.0 + 2.0 * rng.uniform());
            const double h = 21.0 * rng.uniform();
            // |t cos t|, |t sin t| <= 4.5π, so one factor 1/(9π) maps the roll into [0,1]^3.
            const double scale = 1.0 / (9.0 * pi);
            x(i, 0) = 0.5 + scale * t * std::cos(t);
            x(i, 1) = scale * h;
            x(i, 2) = 0.5 + scale * t * std::sin(t);
        }
    }
    return x;
}

double cantor_dimension(std::size_t d) {
    return static_cast<double>(d) * std::log(2.0) / std::log(3.0);
}

PointMatrix sample_cantor_dust(std::size_t n, int levels, std::size_t d, Rng& rng) {
    if (levels < 1) throw InputError("cantor dust needs levels >= 1");
    if (d < 1) throw InputError("cantor dust needs d >= 1");
    PointMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < x.cols(); ++k) {
            double value = 0.0;
            double width = 1.0;
            for (int level = 0; level < levels; ++level) {
                width /= 3.0;
                if (rng.coin()) value += 2.0 * width;
            }
            x(i, k) = value + width * rng.uniform();
        }
    }
    return x;
}

void lorenz_step(std::span<double, 3> s, const LorenzParams& p) {
    const auto deriv = [&](const std::array<double, 3>& v) {
        return std::array<double, 3>{p.sigma * (v[1] - v[0]), v[0] * (p.r - v[2]) - v[1],
                                     v[0] * v[1] - p.b * v[2]};
    };
    const std::array<double, 3> y0{s[0], s[1], s[2]};
    const double h = p.dt;
    const auto k1 = deriv(y0);
    std::array<double, 3> tmp{};
    for (int i = 0; i < 3; ++i) tmp[i] = y0[i] + 0.5 * h * k1[i];
    const auto k2 = deriv(tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = y0[i] + 0.5 * h * k2[i];
    const auto k3 = deriv(tmp);
    for (int i = 0; i < 3; ++i) tmp[i] = y0[i] + h * k3[i];
    const auto k4 = deriv(tmp);
    for (int i = 0; i < 3; ++i) s[i] = y0[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

PointMatrix sample_lorenz(std::size_t n, const LorenzParams& params, Rng& rng) {
    if (!(params.dt > 0.0)) throw InputError("lorenz: dt must be positive");
    if (params.stride == 0) throw InputError("lorenz: stride must be positive");
    std::array<double, 3> state{rng.uniform(-15.0, 15.0), rng.uniform(-20.0, 20.0),
                                rng.uniform(5.0, 45.0)};
    const auto step = [&] {
        lorenz_step(state, params);
        if (!std::isfinite(state[0]) || !std::isfinite(state[1]) || !std::isfinite(state[2])) {
            throw NumericalError("lorenz trajectory diverged; reduce dt");
        }
    };
    for (std::size_t i = 0; i < params.burn_in; ++i) step();

    PointMatrix x(static_cast<Eigen::Index>(n), 3);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < params.stride; ++j) step();
        for (int k = 0; k < 3; ++k) x(i, k) = state[static_cast<std::size_t>(k)];
    }
    if (n == 0) return x;

    const Eigen::RowVectorXd lo = x.colwise().minCoeff();
    const Eigen::RowVectorXd hi = x.colwise().maxCoeff();
    const Eigen::RowVectorXd extent = hi - lo;
    const double scale = extent.maxCoeff();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index k = 0; k < 3; ++k) {
            x(i, k) = scale > 0.0 ? (x(i, k) - lo[k]) / scale + 0.5 * (1.0 - extent[k] / scale) : 0.5;
        }
    }
    return x;
}

Dataset RegressionDistribution::sample(std::size_t n, Rng& rng) const {
    Dataset data;
    data.x = sampler(n, rng);
    data.y = target(data.x);
    for (Eigen::Index i = 0; i < data.y.size(); ++i) data.y[i] += rng.uniform(-noise, noise);
    return data;
}

double sawtooth(double t) {
    if (t > 0.5) return 2.0 * (1.0 - t);
    if (t < -0.5) return 2.0 * (-1.0 - t);
    return 2.0 * t;
}

std::string_view classification_kind_name(ClassificationKind kind) {
    return kind == ClassificationKind::sawtooth ? "sawtooth" : "cusp";
}

ClassificationDistribution make_classification(ClassificationKind kind, double shape) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw InputError(std::string(classification_kind_name(kind)) + " parameter must be positive");
    }
    ClassificationDistribution dist;
    dist.kind = kind;
    dist.shape = shape;
    dist.rho_true = 2.0;
    dist.d = 2;
    // P_X(|2η - 1| < t) <= t for t <= 1 in both families.
    dist.c_star = 1.0;
    if (kind == ClassificationKind::sawtooth) {
        dist.q_true = 1.0;
        dist.beta_true = shape + 2.0;
    } else {
        dist.q_true = shape + 1.0;
        dist.beta_true = shape + 2.0;
    }
    return dist;
}

double ClassificationDistribution::eta(std::span<const double> x) const {
    if (x.size() != d) throw InputError("eta: expected a point in R^2");
    const double margin = kind == ClassificationKind::sawtooth ? sawtooth(x[0]) : x[0];
    return std::clamp(0.5 * (1.0 + margin), 0.0, 1.0);
}

PointMatrix ClassificationDistribution::sample_x(std::size_t n, Rng& rng) const {
    PointMatrix x(static_cast<Eigen::Index>(n), 2);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double sign = rng.coin() ? 1.0 : -1.0;
        double a = 0.0;
        if (kind == ClassificationKind::sawtooth) {
            // Density (1/2)^σ outside the band matches |x₁|^σ at |x₁| = 1/2; the band then
            // carries mass 1/(σ + 2).
            if (rng.uniform() < 1.0 / (shape + 2.0)) {
                a = 0.5 * std::pow(rng.uniform(), 1.0 / (shape + 1.0));
            } else {
                a = 0.5 + 0.5 * rng.uniform();
            }
            x(i, 0) = sign * a;
            x(i, 1) = rng.uniform(-1.0, 1.0);
        } else {
            a = std::pow(rng.uniform(), 1.0 / (shape + 1.0));
            const double half_width = std::pow(a, shape);
            x(i, 0) = sign * a;
            x(i, 1) = rng.uniform(-half_width, half_width);
        }
    }
    return x;
}

Dataset ClassificationDistribution::sample(std::size_t n, Rng& rng) const {
    Dataset data;
    data.x = sample_x(n, rng);
    data.y.resize(data.x.rows());
    for (Eigen::Index i = 0; i < data.x.rows(); ++i) {
        const double p = eta({data.x.data() + i * 2, 2});
        data.y[i] = rng.uniform() < p ? 1.0 : -1.0;
    }
    return data;
}

double excess_risk_mc(const Predictor& f, const RegressionDistribution& dist, std::size_t n_test,
                      Rng& rng) {
    if (n_test == 0) throw InputError("excess_risk_mc: n_test must be positive");
    const PointMatrix x = dist.sampler(n_test, rng);
    const Vector pred = f(x);
    const Vector truth = dist.target(x);
    if (pred.size() != truth.size()) throw InputError("predictor returned the wrong number of values");
    const double m = dist.clip_m();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < pred.size(); ++i) {
        const double r = clip(pred[i], m) - truth[i];
        acc += r * r;
    }
    return acc / static_cast<double>(n_test);
}

double excess_risk_mc(const FittedModel& model, const RegressionDistribution& dist,
                      std::size_t n_test, Rng& rng) {
    return excess_risk_mc([&](const PointMatrix& x) { return predict(model, x, true); }, dist,
                          n_test, rng);
}

ClassificationExcess excess_risk_mc(const Predictor& f, const ClassificationDistribution& dist,
                                    std::size_t n_test, Rng& rng) {
    if (n_test == 0) throw InputError("excess_risk_mc: n_test must be positive");
    const PointMatrix x = dist.sample_x(n_test, rng);
    const Vector pred = f(x);
    if (pred.size() != x.rows()) throw InputError("predictor returned the wrong number of values");
    ClassificationExcess out;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double margin = 2.0 * dist.eta({x.data() + i * 2, 2}) - 1.0;
        const double t = clip(pred[i], 1.0);
        const double sign_t = t >= 0.0 ? 1.0 : -1.0;
        const double sign_m = margin >= 0.0 ? 1.0 : -1.0;
        if (sign_t != sign_m) out.classification += std::abs(margin);
        // For t ∈ [-1, 1]: E_Y hinge = 1 - t(2η - 1); Bayes hinge risk = 1 - |2η - 1|.
        out.hinge += std::abs(margin) - t * margin;
    }
    out.classification /= static_cast<double>(n_test);
    out.hinge /= static_cast<double>(n_test);
    return out;
}

ClassificationExcess excess_risk_mc(const FittedModel& model, const ClassificationDistribution& dist,
                                    std::size_t n_test, Rng& rng) {
    return excess_risk_mc([&](const PointMatrix& x) { return predict(model, x, true); }, dist,
                          n_test, rng);
}

}  // namespace gksvm
