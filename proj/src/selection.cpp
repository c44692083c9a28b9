#include "gksvm/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace gksvm {

double ExponentNet::distance_to(double u) const {
    double best = std::numeric_limits<double>::infinity();
    for (const double p : points) best = std::min(best, std::abs(u - p));
    return best;
}

ExponentNet exponent_net(double lo, double hi, double epsilon, bool half_open) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputError("net radius must be positive");
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError("net interval must be finite");
    if (hi < lo || (half_open && hi == lo)) throw InputError("net interval is empty");

    ExponentNet net{.points = {}, .radius = epsilon, .lo = lo, .hi = hi, .half_open = half_open};
    const double length = hi - lo;
    const auto steps = static_cast<std::size_t>(std::ceil(std::max(0.0, length - epsilon) / (2.0 * epsilon)));
    net.points.reserve(steps + 1);
    net.points.push_back(hi);
    const double floor_point = half_open ? lo + epsilon : lo;
    for (std::size_t k = 1; k <= steps; ++k) {
        double p = hi - 2.0 * static_cast<double>(k) * epsilon;
        if (k == steps) p = std::max(p, floor_point);
        net.points.push_back(p);
    }
    std::reverse(net.points.begin(), net.points.end());
    return net;
}

TaskMode parse_task_mode(std::string_view name) {
    if (name == "regression") return TaskMode::regression;
    if (name == "classification") return TaskMode::classification;
    throw InputError("unknown mode '" + std::string(name) + "'");
}

std::string_view task_mode_name(TaskMode mode) {
    return mode == TaskMode::regression ? "regression" : "classification";
}

HyperGrid build_grids(std::size_t n, std::size_t d, TaskMode mode, bool singleton_lambda) {
    if (n < 3) throw InputError("build_grids needs n >= 3, got " + std::to_string(n));
    if (d < 1) throw InputError("build_grids needs d >= 1");
    const double log_n = std::log(static_cast<double>(n));
    const double eps = 1.0 / log_n;
    const auto dd = static_cast<double>(d);

    HyperGrid grid;
    grid.n = n;
    grid.d = d;
    grid.mode = mode;
    grid.singleton_lambda = singleton_lambda;
    grid.gamma_exponents = exponent_net(0.0, 1.0, eps, true);
    if (singleton_lambda) {
        grid.lambda_exponents = exponent_net(dd, dd, eps, false);
    } else if (mode == TaskMode::regression) {
        grid.lambda_exponents = exponent_net(1.0, dd, eps, false);
    } else {
        grid.lambda_exponents = exponent_net(0.0, dd, eps, true);
    }

    const auto to_values = [&](const ExponentNet& net) {
        std::vector<double> values;
        values.reserve(net.points.size());
        // Exponents ascend, so n^-a descends; emit ascending values.
        for (auto it = net.points.rbegin(); it != net.points.rend(); ++it) {
            values.push_back(std::pow(static_cast<double>(n), -*it));
        }
        return values;
    };
    grid.gammas = to_values(grid.gamma_exponents);
    grid.lambdas = to_values(grid.lambda_exponents);
    return grid;
}

HyperGrid singleton_grid(double lambda, double gamma) {
    if (!(lambda > 0.0) || !(gamma > 0.0)) throw InputError("grid values must be positive");
    HyperGrid grid;
    grid.gammas = {gamma};
    grid.lambdas = {lambda};
    return grid;
}

namespace {

bool better(const CandidateResult& a, const CandidateResult& b) {
    if (a.validation_risk != b.validation_risk) return a.validation_risk < b.validation_risk;
    if (a.lambda != b.lambda) return a.lambda > b.lambda;
    return a.gamma > b.gamma;
}

}  // namespace

TvSelection tv_select(const Dataset& data, const HyperGrid& grid, Loss loss, double clip_m,
                      const TvOptions& options) {
    const std::size_t n = data.size();
    if (n < 4) throw InputError("tv_select needs at least 4 samples, got " + std::to_string(n));
    if (grid.size() == 0) throw InputError("tv_select: empty hyperparameter grid");
    if (!data.labeled()) throw InputError("tv_select: dataset has no labels");
    if (loss != Loss::least_squares && loss != Loss::hinge) {
        throw InputError("tv_select trains with the least-squares or hinge loss");
    }
    if (loss == Loss::hinge) require_binary_labels(data.y);
    if (!(clip_m > 0.0)) throw InputError("clip level M must be positive");

    const std::size_t m = tv_train_size(n);
    const Dataset train = data.slice(0, m);
    const Dataset valid = data.slice(m, n - m);

    TvSelection out;
    out.train_size = m;
    out.candidates.resize(grid.size());
    bool have_best = false;
    CandidateResult best;

    for (std::size_t gi = 0; gi < grid.gammas.size(); ++gi) {
        const Bandwidth gamma(grid.gammas[gi]);
        const KernelMatrix gram = kernel_matrix(train.x, gamma);
        const PointMatrix cross = cross_kernel(valid.x, train.x, gamma);
        // Hinge fits run from the largest λ down, each warm-started from the previous dual,
        // which stays feasible because the box [0, C] grows as λ shrinks.
        std::optional<Vector> warm;
        for (std::size_t step = 0; step < grid.lambdas.size(); ++step) {
            const std::size_t li = grid.lambdas.size() - 1 - step;
            const double lambda = grid.lambdas[li];
            CandidateResult cand{.lambda = lambda, .gamma = gamma.value(),
                                 .validation_risk = std::numeric_limits<double>::infinity(),
                                 .converged = false};
            FittedModel model;
            try {
                if (loss == Loss::least_squares) {
                    model = fit_krr(train, gram, lambda, clip_m, options.krr_tol);
                } else {
                    HingeOptions hinge = options.hinge;
                    if (!hinge.initial_dual) hinge.initial_dual = warm;
                    model = fit_hinge(train, gram, lambda, hinge);
                    warm = model.coefficients.cwiseProduct(train.y);
                }
                Vector pred = cross * model.coefficients;
                for (Eigen::Index i = 0; i < pred.size(); ++i) pred[i] = clip(pred[i], model.clip_m);
                const double risk = empirical_risk(pred, valid.y, loss);
                if (std::isfinite(risk)) cand.validation_risk = risk;
                cand.converged = model.diagnostics.converged;
            } catch (const NumericalError&) {
                // Candidate stays at infinite risk.
            }
            out.candidates[li * grid.gammas.size() + gi] = cand;
            if (!have_best || better(cand, best)) {
                best = cand;
                have_best = true;
                out.model = std::move(model);
            }
        }
    }
    if (!std::isfinite(best.validation_risk)) {
        throw NumericalError("tv_select: no grid candidate produced a finite validation risk");
    }
    out.lambda = best.lambda;
    out.gamma = best.gamma;
    out.validation_risk = best.validation_risk;
    return out;
}

}  // namespace gksvm
