#include "gksvm/harness.hpp"

#include "gksvm/geometry.hpp"
#include "gksvm/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace gksvm {

double theoretical_exponent_regression(double alpha, double rho) {
    if (!(rho > 0.0)) throw InputError("rho must be positive");
    if (!(alpha > 0.0)) throw InputError("alpha must be positive");
    return 2.0 * alpha / (2.0 * alpha + rho);
}

double theoretical_exponent_classification(double beta, double q, double rho) {
    if (!(rho > 0.0)) throw InputError("rho must be positive");
    if (!(beta > 0.0)) throw InputError("beta must be positive");
    if (!(q >= 0.0)) throw InputError("q must be nonnegative");
    if (std::isinf(q)) return beta / (beta + rho);
    return beta * (q + 1.0) / (beta * (q + 2.0) + rho * (q + 1.0));
}

// --- distributions ----------------------------------------------------------------------------

TaskMode DistributionSpec::mode() const {
    return kind == "sawtooth" || kind == "cusp" ? TaskMode::classification : TaskMode::regression;
}

std::size_t DistributionSpec::ambient_dim() const {
    if (kind == "lorenz") return 3;
    if (mode() == TaskMode::classification) return 2;
    return d;
}

void DistributionSpec::validate() const {
    static const std::vector<std::string> kinds = {"cube", "circle", "swissroll", "cantor",
                                                   "lorenz", "sawtooth", "cusp"};
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
        throw InputError("unknown distribution kind '" + kind + "'");
    }
    if (d < 1) throw InputError("d must be >= 1");
    if (kind == "cube" && (d_prime < 1 || d_prime > d)) throw InputError("cube needs 1 <= d_prime <= d");
    if (kind == "circle" && d < 2) throw InputError("circle needs d >= 2");
    if (kind == "swissroll" && d < 3) throw InputError("swissroll needs d >= 3");
    if (kind == "cantor" && levels < 1) throw InputError("cantor needs levels >= 1");
    if (kind == "sawtooth" && !(sigma > 0.0)) throw InputError("sawtooth needs sigma > 0");
    if (kind == "cusp" && !(zeta > 0.0)) throw InputError("cusp needs zeta > 0");
    if (mode() == TaskMode::regression) {
        if (!(alpha > 0.0)) throw InputError("alpha must be positive");
        if (!(noise >= 0.0)) throw InputError("noise must be nonnegative");
    }
    if (kind == "lorenz" && (!(lorenz.dt > 0.0) || lorenz.stride == 0)) {
        throw InputError("lorenz needs dt > 0 and stride >= 1");
    }
}

Distribution make_distribution(const DistributionSpec& spec) {
    spec.validate();
    if (spec.kind == "sawtooth") return make_classification(ClassificationKind::sawtooth, spec.sigma);
    if (spec.kind == "cusp") return make_classification(ClassificationKind::cusp, spec.zeta);

    RegressionDistribution dist;
    dist.kind = spec.kind;
    dist.d = spec.ambient_dim();
    dist.noise = spec.noise;
    dist.target = holder_target(spec.alpha, dist.d, spec.target_seed, spec.target_terms);
    const std::size_t d = dist.d;
    if (spec.kind == "cube") {
        const std::size_t dp = spec.d_prime;
        dist.sampler = [dp, d](std::size_t n, Rng& rng) { return sample_embedded_cube(n, dp, d, rng); };
        dist.rho_true = static_cast<double>(dp);
    } else if (spec.kind == "circle" || spec.kind == "swissroll") {
        const auto kind = spec.kind == "circle" ? ManifoldKind::circle : ManifoldKind::swiss_roll;
        dist.sampler = [kind, d](std::size_t n, Rng& rng) { return sample_manifold(n, kind, d, rng); };
        dist.rho_true = manifold_dimension(kind);
    } else if (spec.kind == "cantor") {
        const int levels = spec.levels;
        dist.sampler = [levels, d](std::size_t n, Rng& rng) { return sample_cantor_dust(n, levels, d, rng); };
        dist.rho_true = cantor_dimension(d);
    } else {
        const LorenzParams params = spec.lorenz;
        dist.sampler = [params](std::size_t n, Rng& rng) { return sample_lorenz(n, params, rng); };
        dist.rho_true = 1.98;  // literature estimate for the classical parameters
    }
    return dist;
}

double declared_rho(const Distribution& dist) {
    return std::visit([](const auto& d) { return d.rho_true; }, dist);
}

nlohmann::json distribution_metadata(const DistributionSpec& spec, std::uint64_t seed, std::size_t n) {
    const Distribution dist = make_distribution(spec);
    nlohmann::json meta = {
        {"kind", spec.kind},
        {"seed", seed},
        {"n", n},
        {"d", spec.ambient_dim()},
        {"rho_true", declared_rho(dist)},
        {"mode", std::string(task_mode_name(spec.mode()))},
        {"version", std::string(kVersion)},
    };
    nlohmann::json params;
    if (const auto* reg = std::get_if<RegressionDistribution>(&dist)) {
        meta["alpha"] = spec.alpha;
        meta["M"] = reg->clip_m();
        params["noise"] = spec.noise;
        params["target_seed"] = spec.target_seed;
        params["target_terms"] = spec.target_terms;
        if (spec.kind == "cube") params["d_prime"] = spec.d_prime;
        if (spec.kind == "cantor") params["levels"] = spec.levels;
        if (spec.kind == "lorenz") {
            params["sigma"] = spec.lorenz.sigma;
            params["r"] = spec.lorenz.r;
            params["b"] = spec.lorenz.b;
            params["dt"] = spec.lorenz.dt;
            params["burn_in"] = spec.lorenz.burn_in;
            params["stride"] = spec.lorenz.stride;
        }
    } else {
        const auto& cls = std::get<ClassificationDistribution>(dist);
        meta["q"] = cls.q_true;
        meta["beta"] = cls.beta_true;
        meta["M"] = 1.0;
        if (spec.kind == "sawtooth") params["sigma"] = spec.sigma;
        if (spec.kind == "cusp") params["zeta"] = spec.zeta;
    }
    meta["params"] = params;
    return meta;
}

Dataset generate(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
    const Distribution dist = make_distribution(spec);
    Rng rng(seed);
    return std::visit([&](const auto& d) { return d.sample(n, rng); }, dist);
}

// --- plans ------------------------------------------------------------------------------------

std::string_view grid_mode_name(GridMode mode) {
    switch (mode) {
        case GridMode::tvsvm: return "tvsvm";
        case GridMode::fixed: return "fixed";
        case GridMode::singleton_lambda: return "singleton-lambda";
    }
    return "tvsvm";
}

GridMode parse_grid_mode(std::string_view name) {
    if (name == "tvsvm") return GridMode::tvsvm;
    if (name == "fixed") return GridMode::fixed;
    if (name == "singleton-lambda" || name == "singleton_lambda") return GridMode::singleton_lambda;
    throw InputError("unknown grid mode '" + std::string(name) + "'");
}

void ExperimentPlan::validate() const {
    distribution.validate();
    if (n_grid.empty()) throw InputError("plan: n_grid is empty");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        if (n_grid[i] < 4) throw InputError("plan: every n must be >= 4");
        if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw InputError("plan: n_grid must increase strictly");
    }
    if (replications < 1) throw InputError("plan: replications must be >= 1");
    if (n_test < 1) throw InputError("plan: n_test must be >= 1");
    if (hinge_max_iter < 1) throw InputError("plan: hinge_max_iter must be >= 1");
    if (!(hinge_tol > 0.0)) throw InputError("plan: hinge_tol must be positive");
}

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
        throw InputError("plan: " + key + " expects a nonnegative integer, got '" + value + "'");
    }
    try {
        return std::stoull(value);
    } catch (const std::exception&) {
        throw InputError("plan: " + key + " is out of range");
    }
}

double parse_real(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw InputError("plan: " + key + " expects a number, got '" + value + "'");
    }
}

}  // namespace

ExperimentPlan parse_plan(std::string_view text) {
    ExperimentPlan plan;
    auto& dist = plan.distribution;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    std::map<std::string, std::size_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InputError("plan line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(std::string_view(stripped).substr(0, eq));
        const std::string value = trim(std::string_view(stripped).substr(eq + 1));
        if (seen.count(key)) throw InputError("plan: duplicate key '" + key + "'");
        seen[key] = line_no;

        const auto as_size = [&] { return static_cast<std::size_t>(parse_unsigned(key, value)); };
        const auto as_real = [&] { return parse_real(key, value); };
        if (key == "kind") dist.kind = value;
        else if (key == "d") dist.d = as_size();
        else if (key == "d_prime") dist.d_prime = as_size();
        else if (key == "levels") dist.levels = static_cast<int>(as_size());
        else if (key == "sigma") dist.sigma = as_real();
        else if (key == "zeta") dist.zeta = as_real();
        else if (key == "alpha") dist.alpha = as_real();
        else if (key == "target_seed") dist.target_seed = parse_unsigned(key, value);
        else if (key == "target_terms") dist.target_terms = as_size();
        else if (key == "noise") dist.noise = as_real();
        else if (key == "lorenz_sigma") dist.lorenz.sigma = as_real();
        else if (key == "lorenz_r") dist.lorenz.r = as_real();
        else if (key == "lorenz_b") dist.lorenz.b = as_real();
        else if (key == "lorenz_dt") dist.lorenz.dt = as_real();
        else if (key == "lorenz_burn_in") dist.lorenz.burn_in = as_size();
        else if (key == "lorenz_stride") dist.lorenz.stride = as_size();
        else if (key == "n_grid") {
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ',')) plan.n_grid.push_back(
                static_cast<std::size_t>(parse_unsigned(key, trim(item))));
        } else if (key == "replications") plan.replications = as_size();
        else if (key == "seed") plan.seed = parse_unsigned(key, value);
        else if (key == "n_test") plan.n_test = as_size();
        else if (key == "grid_mode") plan.grid_mode = parse_grid_mode(value);
        else if (key == "gamma_exponent") plan.gamma_exponent = as_real();
        else if (key == "lambda_exponent") plan.lambda_exponent = as_real();
        else if (key == "hinge_tol") plan.hinge_tol = as_real();
        else if (key == "hinge_max_iter") plan.hinge_max_iter = as_size();
        else throw InputError("plan: unknown key '" + key + "'");
    }
    plan.validate();
    return plan;
}

ExperimentPlan load_plan(const std::string& path) { return parse_plan(read_text(path)); }

std::string plan_to_text(const ExperimentPlan& plan) {
    const auto& d = plan.distribution;
    std::ostringstream out;
    out << "kind = " << d.kind << '\n'
        << "d = " << d.d << '\n'
        << "d_prime = " << d.d_prime << '\n'
        << "levels = " << d.levels << '\n'
        << "sigma = " << format_double(d.sigma) << '\n'
        << "zeta = " << format_double(d.zeta) << '\n'
        << "alpha = " << format_double(d.alpha) << '\n'
        << "target_seed = " << d.target_seed << '\n'
        << "target_terms = " << d.target_terms << '\n'
        << "noise = " << format_double(d.noise) << '\n'
        << "lorenz_sigma = " << format_double(d.lorenz.sigma) << '\n'
        << "lorenz_r = " << format_double(d.lorenz.r) << '\n'
        << "lorenz_b = " << format_double(d.lorenz.b) << '\n'
        << "lorenz_dt = " << format_double(d.lorenz.dt) << '\n'
        << "lorenz_burn_in = " << d.lorenz.burn_in << '\n'
        << "lorenz_stride = " << d.lorenz.stride << '\n';
    out << "n_grid = ";
    for (std::size_t i = 0; i < plan.n_grid.size(); ++i) out << (i ? "," : "") << plan.n_grid[i];
    out << '\n'
        << "replications = " << plan.replications << '\n'
        << "seed = " << plan.seed << '\n'
        << "n_test = " << plan.n_test << '\n'
        << "grid_mode = " << grid_mode_name(plan.grid_mode) << '\n';
    if (plan.gamma_exponent) out << "gamma_exponent = " << format_double(*plan.gamma_exponent) << '\n';
    if (plan.lambda_exponent) out << "lambda_exponent = " << format_double(*plan.lambda_exponent) << '\n';
    out << "hinge_tol = " << format_double(plan.hinge_tol) << '\n'
        << "hinge_max_iter = " << plan.hinge_max_iter << '\n';
    return out.str();
}

nlohmann::json plan_to_json(const ExperimentPlan& plan) {
    const auto& d = plan.distribution;
    nlohmann::json j = {
        {"kind", d.kind},
        {"d", d.d},
        {"ambient_dim", d.ambient_dim()},
        {"mode", std::string(task_mode_name(d.mode()))},
        {"n_grid", plan.n_grid},
        {"replications", plan.replications},
        {"seed", plan.seed},
        {"n_test", plan.n_test},
        {"grid_mode", std::string(grid_mode_name(plan.grid_mode))},
        {"hinge_tol", plan.hinge_tol},
        {"hinge_max_iter", plan.hinge_max_iter},
        {"plan_text", plan_to_text(plan)},
    };
    if (d.mode() == TaskMode::regression) {
        j["alpha"] = d.alpha;
        j["noise"] = d.noise;
        j["target_seed"] = d.target_seed;
        j["target_terms"] = d.target_terms;
    }
    if (plan.grid_mode == GridMode::fixed) {
        const auto [a, b] = fixed_schedule_exponents(plan);
        j["gamma_exponent"] = a;
        j["lambda_exponent"] = b;
    }
    return j;
}

double plan_theoretical_exponent(const ExperimentPlan& plan) {
    const Distribution dist = make_distribution(plan.distribution);
    if (const auto* cls = std::get_if<ClassificationDistribution>(&dist)) {
        return theoretical_exponent_classification(cls->beta_true, cls->q_true, cls->rho_true);
    }
    return theoretical_exponent_regression(plan.distribution.alpha, declared_rho(dist));
}

std::pair<double, double> fixed_schedule_exponents(const ExperimentPlan& plan) {
    const Distribution dist = make_distribution(plan.distribution);
    const double rho = declared_rho(dist);
    const auto d = static_cast<double>(plan.distribution.ambient_dim());
    double a = 0.0;
    double b = 0.0;
    if (const auto* cls = std::get_if<ClassificationDistribution>(&dist)) {
        const double q = cls->q_true;
        const double beta = cls->beta_true;
        const double denom = beta * (q + 2.0) + rho * (q + 1.0);
        a = (q + 1.0) / denom;
        b = (d + beta) * (q + 1.0) / denom;
    } else {
        const double alpha = plan.distribution.alpha;
        a = 1.0 / (2.0 * alpha + rho);
        b = (2.0 * alpha + d) / (2.0 * alpha + rho);
    }
    return {plan.gamma_exponent.value_or(a), plan.lambda_exponent.value_or(b)};
}

// --- learning curves --------------------------------------------------------------------------

std::uint64_t replication_seed(std::uint64_t master, std::size_t n, std::size_t rep) {
    return master ^ mix64(mix64(static_cast<std::uint64_t>(n)) + static_cast<std::uint64_t>(rep));
}

ReplicationResult run_replication(const ExperimentPlan& plan, const Distribution& dist, std::size_t n,
                                  std::size_t rep) {
    ReplicationResult out;
    out.n = n;
    out.replication = rep;
    out.seed = replication_seed(plan.seed, n, rep);

    Rng data_rng(out.seed);
    const Dataset data = std::visit([&](const auto& dd) { return dd.sample(n, data_rng); }, dist);
    const bool regression = std::holds_alternative<RegressionDistribution>(dist);
    const Loss loss = regression ? Loss::least_squares : Loss::hinge;
    const double clip_m = regression ? std::get<RegressionDistribution>(dist).clip_m() : 1.0;

    TvOptions options;
    options.hinge.tol = plan.hinge_tol;
    options.hinge.max_iter = plan.hinge_max_iter;

    FittedModel model;
    if (plan.grid_mode == GridMode::fixed) {
        const auto [a, b] = fixed_schedule_exponents(plan);
        const auto nn = static_cast<double>(n);
        const Bandwidth gamma(std::pow(nn, -a));
        const double lambda = std::pow(nn, -b);
        model = regression ? fit_krr(data, lambda, gamma, clip_m, options.krr_tol)
                           : fit_hinge(data, lambda, gamma, options.hinge);
        out.non_converged_candidates = model.diagnostics.converged ? 0 : 1;
    } else {
        const HyperGrid grid = build_grids(n, plan.distribution.ambient_dim(), plan.mode(),
                                           plan.grid_mode == GridMode::singleton_lambda);
        TvSelection sel = tv_select(data, grid, loss, clip_m, options);
        for (const auto& c : sel.candidates) out.non_converged_candidates += c.converged ? 0 : 1;
        model = std::move(sel.model);
    }
    out.lambda = model.lambda;
    out.gamma = model.gamma.value();
    out.converged = model.diagnostics.converged;

    Rng test_rng(stream_seed(out.seed, 0x7e57));
    double excess = 0.0;
    if (regression) {
        excess = excess_risk_mc(model, std::get<RegressionDistribution>(dist), plan.n_test, test_rng);
    } else {
        const auto ex = excess_risk_mc(model, std::get<ClassificationDistribution>(dist), plan.n_test, test_rng);
        excess = ex.classification;
        out.hinge_excess = ex.hinge;
    }
    if (excess < 0.0) {
        out.clamped = true;
        excess = 0.0;
    }
    out.excess = excess;
    return out;
}

CurveRow summarize(std::size_t n, std::vector<double> values) {
    CurveRow row;
    row.n = n;
    row.values = values;
    if (values.empty()) return row;
    const auto m = static_cast<double>(values.size());
    double sum = 0.0;
    for (const double v : values) sum += v;
    row.mean = sum / m;
    double sq = 0.0;
    for (const double v : values) sq += (v - row.mean) * (v - row.mean);
    row.stddev = values.size() > 1 ? std::sqrt(sq / (m - 1.0)) : 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    row.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    return row;
}

LearningCurve run_learning_curve(const ExperimentPlan& plan) {
    plan.validate();
    const Distribution dist = make_distribution(plan.distribution);
    LearningCurve curve;
    for (const std::size_t n : plan.n_grid) {
        std::vector<double> values;
        for (std::size_t rep = 0; rep < plan.replications; ++rep) {
            curve.runs.push_back(run_replication(plan, dist, n, rep));
            values.push_back(curve.runs.back().excess);
        }
        curve.rows.push_back(summarize(n, std::move(values)));
    }
    return curve;
}

// --- rate fitting -----------------------------------------------------------------------------

RateFit fit_rate_exponent(const std::vector<std::size_t>& n, const std::vector<double>& mean_excess) {
    if (n.size() != mean_excess.size()) throw InputError("rate fit: n and excess lengths differ");
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (mean_excess[i] > 0.0 && std::isfinite(mean_excess[i]) && n[i] > 1) {
            lx.push_back(std::log(static_cast<double>(n[i])));
            ly.push_back(std::log(mean_excess[i]));
        }
    }
    if (lx.size() < 3) {
        throw EstimationError("rate fit needs >= 3 rows with positive excess, got " +
                              std::to_string(lx.size()));
    }
    const LineFit line = fit_line(lx, ly);
    RateFit fit;
    fit.empirical_exponent = -line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
    fit.rows_used = lx.size();
    if (lx.size() >= 4) {
        Eigen::MatrixXd design(static_cast<Eigen::Index>(lx.size()), 3);
        Eigen::VectorXd rhs(static_cast<Eigen::Index>(lx.size()));
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const auto r = static_cast<Eigen::Index>(i);
            design(r, 0) = 1.0;
            design(r, 1) = lx[i];
            design(r, 2) = std::log(lx[i]);
            rhs[r] = ly[i];
        }
        const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
        if (coef.allFinite()) {
            fit.log_corrected_exponent = -coef[1];
            fit.log_log_coefficient = coef[2];
        }
    }
    return fit;
}

RateFit fit_rate_exponent(const LearningCurve& curve) {
    std::vector<std::size_t> n;
    std::vector<double> mean;
    for (const auto& row : curve.rows) {
        n.push_back(row.n);
        mean.push_back(row.mean);
    }
    return fit_rate_exponent(n, mean);
}

nlohmann::json curve_to_json(const LearningCurve& curve) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : curve.rows) {
        rows.push_back({{"n", r.n}, {"mean", r.mean}, {"median", r.median}, {"std", r.stddev},
                        {"values", r.values}});
    }
    nlohmann::json runs = nlohmann::json::array();
    for (const auto& r : curve.runs) {
        nlohmann::json run = {{"n", r.n},
                              {"replication", r.replication},
                              {"seed", r.seed},
                              {"excess", r.excess},
                              {"lambda", r.lambda},
                              {"gamma", r.gamma},
                              {"converged", r.converged},
                              {"non_converged_candidates", r.non_converged_candidates},
                              {"clamped", r.clamped}};
        run["hinge_excess"] = r.hinge_excess ? nlohmann::json(*r.hinge_excess) : nlohmann::json(nullptr);
        runs.push_back(std::move(run));
    }
    return {{"rows", std::move(rows)}, {"runs", std::move(runs)}};
}

std::string curve_to_csv(const LearningCurve& curve) {
    std::ostringstream out;
    std::size_t reps = 0;
    for (const auto& r : curve.rows) reps = std::max(reps, r.values.size());
    out << "n,mean,median,std";
    for (std::size_t i = 0; i < reps; ++i) out << ",rep_" << (i + 1);
    out << '\n';
    for (const auto& r : curve.rows) {
        out << r.n << ',' << format_double(r.mean) << ',' << format_double(r.median) << ','
            << format_double(r.stddev);
        for (const double v : r.values) out << ',' << format_double(v);
        out << '\n';
    }
    return out.str();
}

std::pair<std::vector<std::size_t>, std::vector<double>> read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw InputError(path + ": empty curve file");
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string f;
        while (std::getline(hs, f, ',')) header.push_back(trim(f));
    }
    const auto col = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw InputError(path + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t n_col = col("n");
    const std::size_t mean_col = col("mean");
    std::vector<std::size_t> n;
    std::vector<double> mean;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) fields.push_back(trim(f));
        if (fields.size() <= std::max(n_col, mean_col)) {
            throw InputError(path + ":" + std::to_string(line_no) + ": too few fields");
        }
        const std::string where = path + ":" + std::to_string(line_no);
        const double nv = parse_real(where + " n", fields[n_col]);
        if (nv < 1.0 || nv != std::floor(nv)) throw InputError(where + ": n must be a positive integer");
        n.push_back(static_cast<std::size_t>(nv));
        mean.push_back(parse_real(where + " mean", fields[mean_col]));
    }
    return {n, mean};
}

nlohmann::json rate_report(const ExperimentPlan& plan, const LearningCurve& curve) {
    nlohmann::json report = {
        {"version", std::string(kVersion)},
        {"plan", plan_to_json(plan)},
        {"theoretical_exponent", plan_theoretical_exponent(plan)},
        {"curve", curve_to_json(curve)},
    };
    try {
        const RateFit fit = fit_rate_exponent(curve);
        report["empirical_exponent"] = fit.empirical_exponent;
        report["r_squared"] = fit.r_squared;
        report["intercept"] = fit.intercept;
        report["rows_used"] = fit.rows_used;
        report["log_corrected_exponent"] =
            fit.log_corrected_exponent ? nlohmann::json(*fit.log_corrected_exponent) : nlohmann::json(nullptr);
        report["log_log_coefficient"] =
            fit.log_log_coefficient ? nlohmann::json(*fit.log_log_coefficient) : nlohmann::json(nullptr);
    } catch (const EstimationError& e) {
        report["empirical_exponent"] = nullptr;
        report["fit_error"] = e.what();
    }
    return report;
}

}  // namespace gksvm
