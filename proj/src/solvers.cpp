#include "gksvm/solvers.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace gksvm {

std::string_view loss_name(Loss loss) {
    switch (loss) {
        case Loss::least_squares: return "ls";
        case Loss::hinge: return "hinge";
        case Loss::classification: return "class";
    }
    return "unknown";
}

Loss parse_loss(std::string_view name) {
    if (name == "ls" || name == "least-squares" || name == "least_squares") return Loss::least_squares;
    if (name == "hinge") return Loss::hinge;
    if (name == "class" || name == "classification") return Loss::classification;
    throw InputError("unknown loss '" + std::string(name) + "'");
}

double loss_value(Loss loss, double y, double t) {
    switch (loss) {
        case Loss::least_squares: {
            const double r = y - t;
            return r * r;
        }
        case Loss::hinge: return std::max(0.0, 1.0 - y * t);
        case Loss::classification: {
            const double sign_t = t >= 0.0 ? 1.0 : -1.0;
            return y * sign_t <= 0.0 ? 1.0 : 0.0;
        }
    }
    return 0.0;
}

void SvmConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
    if (!(clip_m > 0.0) || !std::isfinite(clip_m)) throw InputError("clip level M must be positive");
    if (loss == Loss::hinge && clip_m != 1.0) throw InputError("hinge loss is clipped at M = 1");
    if (loss == Loss::classification) throw InputError("classification loss cannot be trained");
    if (tol < 0.0) throw InputError("tolerance must be nonnegative");
    if (max_iter == 0) throw InputError("max_iter must be positive");
}

void require_binary_labels(const Vector& y) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y[i] != 1.0 && y[i] != -1.0) {
            throw InputError("labels must be in {-1, +1}, got " + std::to_string(y[i]) +
                             " at row " + std::to_string(i));
        }
    }
}

namespace {

void check_training_data(const Dataset& data, double lambda) {
    if (data.size() == 0) throw InputError("empty training set");
    if (data.y.size() != data.x.rows()) throw InputError("label count does not match point count");
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InputError("lambda must be positive");
    require_finite(data.x, "features");
    require_finite(data.y, "labels");
}

void check_gram(const Dataset& data, const KernelMatrix& gram) {
    if (gram.entries.rows() != data.x.rows() || gram.entries.cols() != data.x.rows()) {
        throw InputError("Gram matrix size does not match the training set");
    }
}

constexpr Eigen::Index kPolishMaxFree = 400;
constexpr int kPolishRounds = 25;

// One Newton step on the free coordinates with the bounded ones held fixed, projected into the
// box. Returns false when no dual increase was found.
bool newton_step(const PointMatrix& k, const Vector& labels, double c, Vector& dual, Vector& decision) {
    std::vector<Eigen::Index> work;
    for (Eigen::Index i = 0; i < dual.size(); ++i) {
        if (dual[i] > 0.0 && dual[i] < c) work.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(work.size());
    if (m == 0 || m > kPolishMaxFree) return false;

    Eigen::MatrixXd q(m, m);
    Vector grad(m);
    Vector beta(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        const auto i = work[static_cast<std::size_t>(a)];
        grad[a] = 1.0 - labels[i] * decision[i];
        beta[a] = dual[i];
        for (Eigen::Index b = 0; b < m; ++b) {
            const auto j = work[static_cast<std::size_t>(b)];
            q(a, b) = labels[i] * labels[j] * k(i, j);
        }
    }
    // The block is only semidefinite; a small shift keeps the factorization stable and the
    // step an ascent direction.
    Vector step;
    double shift = 1e-10 * q.diagonal().mean();
    for (int attempt = 0; attempt < 4 && step.size() == 0; ++attempt, shift *= 100.0) {
        Eigen::MatrixXd shifted = q;
        shifted.diagonal().array() += shift;
        const Eigen::LLT<Eigen::MatrixXd> llt(shifted);
        if (llt.info() == Eigen::Success) step = llt.solve(grad);
    }
    if (step.size() == 0 || !step.allFinite()) return false;

    auto gain_of = [&](const Vector& delta) { return grad.dot(delta) - 0.5 * delta.dot(q * delta); };
    // Projected full step first; if it does not increase the dual, the step shortened to the box.
    Vector delta = (beta + step).cwiseMax(0.0).cwiseMin(c) - beta;
    if (!(gain_of(delta) > 0.0)) {
        double t = 1.0;
        for (Eigen::Index a = 0; a < m; ++a) {
            if (step[a] > 0.0) t = std::min(t, (c - beta[a]) / step[a]);
            if (step[a] < 0.0) t = std::min(t, -beta[a] / step[a]);
        }
        delta = ((beta + t * step).cwiseMax(0.0).cwiseMin(c) - beta).eval();
        if (!(t > 0.0) || !(gain_of(delta) > 0.0)) return false;
    }

    for (Eigen::Index a = 0; a < m; ++a) {
        if (delta[a] == 0.0) continue;
        const auto i = work[static_cast<std::size_t>(a)];
        dual[i] = beta[a] + delta[a];
        decision.noalias() += (delta[a] * labels[i]) * k.row(i).transpose();
    }
    return true;
}

// Cyclic updates crawl when the free block of K is ill-conditioned; a few Newton steps on that
// block do not. Not a cure for large C with a wide bandwidth, where the free set itself keeps
// changing.
void polish(const PointMatrix& k, const Vector& labels, double c, Vector& dual, Vector& decision) {
    for (int round = 0; round < kPolishRounds; ++round) {
        if (!newton_step(k, labels, c, dual, decision)) return;
    }
}

}  // namespace

FittedModel fit_krr(const Dataset& data, double lambda, Bandwidth gamma, double clip_m, double tol) {
    check_training_data(data, lambda);
    return fit_krr(data, kernel_matrix(data.x, gamma), lambda, clip_m, tol);
}

FittedModel fit_krr(const Dataset& data, const KernelMatrix& gram, double lambda, double clip_m,
                    double tol) {
    check_training_data(data, lambda);
    check_gram(data, gram);
    if (!(clip_m > 0.0)) throw InputError("clip level M must be positive");

    const auto n = data.x.rows();
    const double shift = static_cast<double>(n) * lambda;

    FittedModel model;
    model.support_points = data.x;
    model.gamma = gram.gamma;
    model.lambda = lambda;
    model.loss = Loss::least_squares;
    model.clip_m = clip_m;

    // Column-major copy so Eigen's blocked factorization runs on its native layout.
    Eigen::MatrixXd system = gram.entries;
    system.diagonal().array() += shift;
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(system);
    if (llt.info() == Eigen::Success) {
        model.coefficients = llt.solve(data.y);
    } else {
        // Rounding can make K + nλI indefinite when nλ is below machine precision.
        system = gram.entries;
        system.diagonal().array() += shift;
        Eigen::LDLT<Eigen::Ref<Eigen::MatrixXd>> ldlt(system);
        model.coefficients = ldlt.solve(data.y);
        model.diagnostics.factorization_fallback = true;
        if (!model.coefficients.allFinite()) {
            throw NumericalError("least-squares system is singular at lambda = " +
                                 std::to_string(lambda));
        }
    }

    const Vector residual =
        gram.entries * model.coefficients + shift * model.coefficients - data.y;
    model.diagnostics.iterations = 1;
    model.diagnostics.residual = residual.lpNorm<Eigen::Infinity>();
    model.diagnostics.converged =
        model.diagnostics.residual <= tol * std::max(1.0, data.y.lpNorm<Eigen::Infinity>());
    return model;
}

HingeDualResult solve_hinge_dual(const KernelMatrix& gram, const Vector& labels, double c,
                                 const HingeOptions& options) {
    const auto n = labels.size();
    if (gram.entries.rows() != n || gram.entries.cols() != n) {
        throw InputError("Gram matrix size does not match the label count");
    }
    if (!(c > 0.0) || !std::isfinite(c)) throw InputError("box bound C must be positive");
    if (options.tol < 0.0) throw InputError("tolerance must be nonnegative");
    const PointMatrix& k = gram.entries;

    HingeDualResult out;
    out.dual = Vector::Zero(n);
    if (options.initial_dual) {
        if (options.initial_dual->size() != n) throw InputError("initial dual has wrong length");
        out.dual = options.initial_dual->cwiseMax(0.0).cwiseMin(c);
    }

    const double scale = 1.0 / (c * static_cast<double>(n));
    const auto recompute_decision = [&] {
        const Vector alpha = out.dual.cwiseProduct(labels);
        out.decision = k * alpha;
    };
    // (P - D) with P = ½‖f‖² + C Σ ξ_i and D = Σ β_i - ½‖f‖².
    const auto gap = [&] {
        double norm_sq = 0.0;
        double slack = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            norm_sq += out.dual[i] * labels[i] * out.decision[i];
            slack += std::max(0.0, 1.0 - labels[i] * out.decision[i]);
        }
        return std::max(0.0, norm_sq + c * slack - out.dual.sum()) * scale;
    };

    recompute_decision();
    out.duality_gap = gap();
    out.converged = out.duality_gap <= options.tol;

    constexpr std::size_t kRefreshEvery = 16;
    while (!out.converged && out.sweeps < options.max_iter) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double grad = labels[i] * out.decision[i] - 1.0;
            const double beta = out.dual[i];
            if ((beta <= 0.0 && grad >= 0.0) || (beta >= c && grad <= 0.0)) continue;
            // Unit diagonal: the exact coordinate maximizer is β_i - grad before projection.
            const double updated = std::clamp(beta - grad / k(i, i), 0.0, c);
            const double delta = updated - beta;
            if (delta == 0.0) continue;
            out.dual[i] = updated;
            out.decision.noalias() += (delta * labels[i]) * k.row(i).transpose();
        }
        ++out.sweeps;
        if (out.sweeps % kRefreshEvery == 0) {
            recompute_decision();
            polish(k, labels, c, out.dual, out.decision);
        }
        out.duality_gap = gap();
        if (out.duality_gap <= options.tol) {
            // Confirm on an exactly recomputed decision vector before declaring convergence.
            recompute_decision();
            out.duality_gap = gap();
            out.converged = out.duality_gap <= options.tol;
        }
    }
    if (!out.converged) {
        recompute_decision();
        out.duality_gap = gap();
    }
    return out;
}

FittedModel fit_hinge(const Dataset& data, double lambda, Bandwidth gamma,
                      const HingeOptions& options) {
    check_training_data(data, lambda);
    require_binary_labels(data.y);
    return fit_hinge(data, kernel_matrix(data.x, gamma), lambda, options);
}

FittedModel fit_hinge(const Dataset& data, const KernelMatrix& gram, double lambda,
                      const HingeOptions& options) {
    check_training_data(data, lambda);
    check_gram(data, gram);
    require_binary_labels(data.y);

    const double c = 1.0 / (2.0 * lambda * static_cast<double>(data.size()));
    const HingeDualResult dual = solve_hinge_dual(gram, data.y, c, options);

    FittedModel model;
    model.support_points = data.x;
    model.coefficients = dual.dual.cwiseProduct(data.y);
    model.gamma = gram.gamma;
    model.lambda = lambda;
    model.loss = Loss::hinge;
    model.clip_m = 1.0;
    model.diagnostics.converged = dual.converged;
    model.diagnostics.iterations = dual.sweeps;
    model.diagnostics.duality_gap = dual.duality_gap;
    return model;
}

FittedModel fit(const Dataset& data, const SvmConfig& config) {
    config.validate();
    switch (config.loss) {
        case Loss::least_squares:
            return fit_krr(data, config.lambda, config.gamma, config.clip_m,
                           config.tol > 0.0 ? config.tol : kDefaultKrrTol);
        case Loss::hinge: {
            HingeOptions options;
            options.tol = config.tol > 0.0 ? config.tol : kDefaultHingeTol;
            options.max_iter = config.max_iter;
            return fit_hinge(data, config.lambda, config.gamma, options);
        }
        case Loss::classification: break;
    }
    throw InputError("unsupported training loss");
}

Vector predict(const FittedModel& model, const PointMatrix& x, bool clipped) {
    if (x.rows() > 0 && x.cols() != model.support_points.cols()) {
        throw InputError("predict: dimension mismatch (" + std::to_string(x.cols()) + " vs " +
                         std::to_string(model.support_points.cols()) + ")");
    }
    const double inv_sq = model.gamma.inv_sq();
    const auto n = model.support_points.rows();
    const auto d = x.cols();
    Vector out(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double a = model.coefficients[j];
            if (a == 0.0) continue;
            double dist = 0.0;
            for (Eigen::Index k = 0; k < d; ++k) {
                const double diff = x(i, k) - model.support_points(j, k);
                dist += diff * diff;
            }
            acc += a * std::exp(-dist * inv_sq);
        }
        out[i] = clipped ? clip(acc, model.clip_m) : acc;
    }
    return out;
}

double empirical_risk(const Vector& predictions, const Vector& labels, Loss loss) {
    if (predictions.size() != labels.size()) {
        throw InputError("empirical_risk: prediction and label counts differ");
    }
    if (labels.size() == 0) throw InputError("empirical_risk: empty input");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < labels.size(); ++i) acc += loss_value(loss, labels[i], predictions[i]);
    return acc / static_cast<double>(labels.size());
}

double primal_objective(const FittedModel& model, const Vector& labels) {
    if (labels.size() != model.support_points.rows()) {
        throw InputError("primal_objective: labels do not match the training set");
    }
    const KernelMatrix gram = kernel_matrix(model.support_points, model.gamma);
    const Vector f = gram.entries * model.coefficients;
    const double norm_sq = model.coefficients.dot(f);
    return model.lambda * norm_sq + empirical_risk(f, labels, model.loss);
}

}  // namespace gksvm
