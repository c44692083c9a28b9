#include "gksvm/geometry.hpp"
#include "gksvm/harness.hpp"
#include "gksvm/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

namespace gksvm {

namespace {

void add_distribution_options(CLI::App* cmd, DistributionSpec& spec) {
    cmd->add_option("--kind", spec.kind, "cube|circle|swissroll|cantor|lorenz|sawtooth|cusp")->required();
    cmd->add_option("--d", spec.d, "ambient dimension");
    cmd->add_option("--d-prime", spec.d_prime, "cube: intrinsic dimension");
    cmd->add_option("--levels", spec.levels, "cantor: construction depth");
    cmd->add_option("--sigma", spec.sigma, "sawtooth: density exponent");
    cmd->add_option("--zeta", spec.zeta, "cusp: cusp exponent");
    cmd->add_option("--alpha", spec.alpha, "regression target Hölder exponent");
    cmd->add_option("--target-seed", spec.target_seed, "seed of the random target function");
    cmd->add_option("--terms", spec.target_terms, "number of target terms");
    cmd->add_option("--noise", spec.noise, "uniform label noise half-width");
    cmd->add_option("--dt", spec.lorenz.dt, "lorenz: RK4 step");
    cmd->add_option("--burn-in", spec.lorenz.burn_in, "lorenz: discarded steps");
    cmd->add_option("--stride", spec.lorenz.stride, "lorenz: steps between samples");
}

nlohmann::json dimension_json(const CoveringProfile& profile, const DimensionEstimate& est) {
    return {
        {"rho_hat", est.rho_hat},
        {"c_dim_hat", est.c_dim_hat},
        {"r_squared", est.r_squared},
        {"n_points", profile.n_points},
        {"profile", {{"scales", profile.scales}, {"counts", profile.counts}}},
        {"scales_used", est.scales_used},
        {"counts_used", est.counts_used},
    };
}

nlohmann::json grid_json(const HyperGrid& grid) {
    return {
        {"n", grid.n},
        {"d", grid.d},
        {"mode", std::string(task_mode_name(grid.mode))},
        {"singleton_lambda", grid.singleton_lambda},
        {"gammas", grid.gammas},
        {"lambdas", grid.lambdas},
        {"gamma_exponents", grid.gamma_exponents.points},
        {"lambda_exponents", grid.lambda_exponents.points},
    };
}

double parse_q(const std::string& text) {
    if (text == "inf" || text == "infinity") return kInfiniteQ;
    try {
        std::size_t used = 0;
        const double q = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return q;
    } catch (const std::exception&) {
        throw InputError("--q expects a number or 'inf', got '" + text + "'");
    }
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv) {
    CLI::App app{"Gaussian-kernel SVMs with training-validation hyperparameter selection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    // generate
    DistributionSpec gen_spec;
    std::size_t gen_n = 0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto* generate_cmd = app.add_subcommand("generate", "sample a synthetic dataset to CSV");
    add_distribution_options(generate_cmd, gen_spec);
    generate_cmd->add_option("--n", gen_n, "sample size")->required();
    generate_cmd->add_option("--seed", gen_seed, "RNG seed")->required();
    generate_cmd->add_option("--out", gen_out, "output CSV; metadata goes to <out>.meta.json")->required();

    // fit
    std::string fit_in;
    std::string fit_loss;
    double fit_lambda = 0.0;
    double fit_gamma = 0.0;
    std::optional<double> fit_clip;
    std::string fit_out;
    double fit_tol = 0.0;
    std::size_t fit_max_iter = kDefaultMaxSweeps;
    auto* fit_cmd = app.add_subcommand("fit", "train one SVM");
    fit_cmd->add_option("--in", fit_in, "dataset CSV")->required();
    fit_cmd->add_option("--loss", fit_loss, "ls|hinge")->required();
    fit_cmd->add_option("--lambda", fit_lambda, "regularization")->required();
    fit_cmd->add_option("--gamma", fit_gamma, "kernel width")->required();
    fit_cmd->add_option("--clip", fit_clip, "clip level M (default max|y| for ls, 1 for hinge)");
    fit_cmd->add_option("--tol", fit_tol, "solver tolerance (0 = default)");
    fit_cmd->add_option("--max-iter", fit_max_iter, "hinge: maximum sweeps");
    fit_cmd->add_option("--model-out", fit_out, "model JSON")->required();

    // tvsvm
    std::string tv_in;
    std::string tv_loss;
    std::optional<std::string> tv_mode;
    bool tv_singleton = false;
    std::optional<double> tv_clip;
    std::string tv_report;
    std::size_t tv_max_iter = kDefaultMaxSweeps;
    auto* tv_cmd = app.add_subcommand("tvsvm", "training-validation hyperparameter selection");
    tv_cmd->add_option("--in", tv_in, "dataset CSV")->required();
    tv_cmd->add_option("--loss", tv_loss, "ls|hinge")->required();
    tv_cmd->add_option("--mode", tv_mode, "regression|classification (default from the loss)");
    tv_cmd->add_flag("--singleton-lambda", tv_singleton, "use Λ_n = {n^-d}");
    tv_cmd->add_option("--clip", tv_clip, "clip level M (default max|y| for ls, 1 for hinge)");
    tv_cmd->add_option("--max-iter", tv_max_iter, "hinge: maximum sweeps per candidate");
    tv_cmd->add_option("--report", tv_report, "report JSON")->required();

    // boxdim
    std::string bd_in;
    int bd_kmin = 2;
    int bd_kmax = 7;
    double bd_base = 2.0;
    std::string bd_out;
    auto* bd_cmd = app.add_subcommand("boxdim", "box-counting dimension of a point cloud");
    bd_cmd->add_option("--in", bd_in, "point-cloud CSV (a trailing y column is ignored)")->required();
    bd_cmd->add_option("--kmin", bd_kmin, "coarsest scale exponent");
    bd_cmd->add_option("--kmax", bd_kmax, "finest scale exponent");
    bd_cmd->add_option("--base", bd_base, "scales are base^-k");
    bd_cmd->add_option("--out", bd_out, "output JSON (stdout if omitted)");

    // learning-curve
    std::string lc_plan;
    std::string lc_out;
    std::string lc_report;
    auto* lc_cmd = app.add_subcommand("learning-curve", "run a learning-curve experiment");
    lc_cmd->add_option("--plan", lc_plan, "plan file")->required();
    lc_cmd->add_option("--out", lc_out, "curve CSV")->required();
    lc_cmd->add_option("--report", lc_report, "full report JSON");

    // rate-fit
    std::string rf_in;
    std::optional<double> rf_alpha;
    std::optional<double> rf_beta;
    std::optional<std::string> rf_q;
    double rf_rho = 0.0;
    std::string rf_out;
    auto* rf_cmd = app.add_subcommand("rate-fit", "fit the empirical rate exponent of a curve");
    rf_cmd->add_option("--in", rf_in, "curve CSV with n and mean columns")->required();
    auto* alpha_opt = rf_cmd->add_option("--alpha", rf_alpha, "regression smoothness");
    auto* beta_opt = rf_cmd->add_option("--beta", rf_beta, "classification margin exponent");
    auto* q_opt = rf_cmd->add_option("--q", rf_q, "classification noise exponent (or inf)");
    alpha_opt->excludes(beta_opt)->excludes(q_opt);
    beta_opt->needs(q_opt);
    q_opt->needs(beta_opt);
    rf_cmd->add_option("--rho", rf_rho, "intrinsic dimension")->required();
    rf_cmd->add_option("--out", rf_out, "report JSON (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*generate_cmd) {
            const Dataset data = generate(gen_spec, gen_n, gen_seed);
            write_csv(gen_out, data);
            write_json(gen_out + ".meta.json", distribution_metadata(gen_spec, gen_seed, gen_n));
        } else if (*fit_cmd) {
            const Dataset data = read_csv(fit_in);
            if (!data.labeled()) throw InputError(fit_in + ": dataset has no y column");
            SvmConfig config;
            config.loss = parse_loss(fit_loss);
            config.lambda = fit_lambda;
            config.gamma = Bandwidth(fit_gamma);
            config.clip_m = fit_clip.value_or(config.loss == Loss::hinge ? 1.0
                                                                          : data.y.lpNorm<Eigen::Infinity>());
            if (!(config.clip_m > 0.0)) config.clip_m = 1.0;
            config.tol = fit_tol;
            config.max_iter = fit_max_iter;
            const FittedModel model = fit(data, config);
            write_json(fit_out, model_to_json(model));
        } else if (*tv_cmd) {
            const Dataset data = read_csv(tv_in);
            if (!data.labeled()) throw InputError(tv_in + ": dataset has no y column");
            const Loss loss = parse_loss(tv_loss);
            const TaskMode mode = tv_mode ? parse_task_mode(*tv_mode)
                                          : (loss == Loss::hinge ? TaskMode::classification : TaskMode::regression);
            double clip_m = tv_clip.value_or(loss == Loss::hinge ? 1.0 : data.y.lpNorm<Eigen::Infinity>());
            if (!(clip_m > 0.0)) clip_m = 1.0;
            const HyperGrid grid = build_grids(data.size(), data.dim(), mode, tv_singleton);
            TvOptions options;
            options.hinge.max_iter = tv_max_iter;
            const TvSelection sel = tv_select(data, grid, loss, clip_m, options);
            nlohmann::json candidates = nlohmann::json::array();
            for (const auto& c : sel.candidates) {
                candidates.push_back({{"lambda", c.lambda}, {"gamma", c.gamma},
                                      {"validation_risk", c.validation_risk}, {"converged", c.converged}});
            }
            write_json(tv_report, {
                {"version", std::string(kVersion)},
                {"input", tv_in},
                {"n", data.size()},
                {"d", data.dim()},
                {"loss", std::string(loss_name(loss))},
                {"clip", clip_m},
                {"train_size", sel.train_size},
                {"grid", grid_json(grid)},
                {"lambda", sel.lambda},
                {"gamma", sel.gamma},
                {"validation_risk", sel.validation_risk},
                {"candidates", std::move(candidates)},
                {"model", model_to_json(sel.model)},
            });
        } else if (*bd_cmd) {
            const Dataset data = read_csv(bd_in);
            const CoveringProfile profile = covering_profile(data.x, bd_kmin, bd_kmax, bd_base);
            const DimensionEstimate est = boxdim_estimate(profile);
            const nlohmann::json out = dimension_json(profile, est);
            if (bd_out.empty()) {
                std::cout << out.dump(2) << '\n';
            } else {
                write_json(bd_out, out);
            }
        } else if (*lc_cmd) {
            const ExperimentPlan plan = load_plan(lc_plan);
            const LearningCurve curve = run_learning_curve(plan);
            write_text(lc_out, curve_to_csv(curve));
            if (!lc_report.empty()) write_json(lc_report, rate_report(plan, curve));
        } else if (*rf_cmd) {
            const auto [n, mean] = read_curve_csv(rf_in);
            const RateFit fit = fit_rate_exponent(n, mean);
            nlohmann::json out = {
                {"version", std::string(kVersion)},
                {"input", rf_in},
                {"n", n},
                {"mean_excess", mean},
                {"rho", rf_rho},
                {"empirical_exponent", fit.empirical_exponent},
                {"r_squared", fit.r_squared},
                {"intercept", fit.intercept},
                {"rows_used", fit.rows_used},
            };
            out["log_corrected_exponent"] =
                fit.log_corrected_exponent ? nlohmann::json(*fit.log_corrected_exponent) : nlohmann::json(nullptr);
            if (rf_alpha) {
                out["mode"] = "regression";
                out["alpha"] = *rf_alpha;
                out["theoretical_exponent"] = theoretical_exponent_regression(*rf_alpha, rf_rho);
            } else if (rf_beta) {
                const double q = parse_q(*rf_q);
                out["mode"] = "classification";
                out["beta"] = *rf_beta;
                out["q"] = std::isinf(q) ? nlohmann::json("inf") : nlohmann::json(q);
                out["theoretical_exponent"] = theoretical_exponent_classification(*rf_beta, q, rf_rho);
            } else {
                out["theoretical_exponent"] = nullptr;
            }
            if (rf_out.empty()) {
                std::cout << out.dump(2) << '\n';
            } else {
                write_json(rf_out, out);
            }
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace gksvm
