#include "gksvm/harness.hpp"
#include "gksvm/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gksvm;

namespace {

ExperimentPlan small_plan() {
    return parse_plan(R"(# small regression run
kind = cube
d = 2
d_prime = 1
alpha = 1
n_grid = 40, 80
replications = 2
seed = 5
n_test = 500
)");
}

}  // namespace

TEST_CASE("theoretical exponents") {
    CHECK(theoretical_exponent_regression(1.0, 1.0) == doctest::Approx(2.0 / 3.0));
    CHECK(theoretical_exponent_classification(2.0, 1.0, 2.0) == doctest::Approx(0.4));
    CHECK(theoretical_exponent_classification(3.0, kInfiniteQ, 3.0) == doctest::Approx(0.5));
    CHECK(theoretical_exponent_classification(3.0, 2.0, 2.0) == doctest::Approx(0.5));
    CHECK_THROWS_AS(theoretical_exponent_regression(1.0, 0.0), InputError);
    CHECK_THROWS_AS(theoretical_exponent_classification(1.0, 1.0, -1.0), InputError);
}

TEST_CASE("plan parsing") {
    const auto plan = small_plan();
    CHECK(plan.distribution.kind == "cube");
    CHECK(plan.n_grid == std::vector<std::size_t>{40, 80});
    CHECK(plan.replications == 2);
    CHECK(plan.n_test == 500);
    CHECK(plan.grid_mode == GridMode::tvsvm);

    const auto again = parse_plan(plan_to_text(plan));
    CHECK(plan_to_text(again) == plan_to_text(plan));

    CHECK_THROWS_AS(parse_plan("kind = cube\nbogus = 1\nn_grid = 10\n"), InputError);
    CHECK_THROWS_AS(parse_plan("kind = cube\nkind = cube\nn_grid = 10\n"), InputError);
    CHECK_THROWS_AS(parse_plan("kind = cube\nn_grid = 10, x\n"), InputError);
    CHECK_THROWS_AS(parse_plan("kind = cube\n"), InputError);
    CHECK_THROWS_AS(parse_plan("kind = torus\nn_grid = 10\n"), InputError);
    CHECK_THROWS_AS(parse_plan("kind = cube\nn_grid = 10\nreplications = 0\n"), InputError);
}

TEST_CASE("declared intrinsic dimensions") {
    DistributionSpec spec;
    spec.d = 5;
    spec.kind = "cube";
    spec.d_prime = 2;
    CHECK(declared_rho(make_distribution(spec)) == 2.0);
    spec.kind = "circle";
    CHECK(declared_rho(make_distribution(spec)) == 1.0);
    spec.kind = "cantor";
    spec.d = 1;
    CHECK(declared_rho(make_distribution(spec)) == doctest::Approx(std::log(2.0) / std::log(3.0)));
    spec.kind = "lorenz";
    CHECK(declared_rho(make_distribution(spec)) == doctest::Approx(1.98));
    spec.kind = "cusp";
    CHECK(declared_rho(make_distribution(spec)) == 2.0);
}

TEST_CASE("fixed schedule exponents") {
    ExperimentPlan plan = small_plan();
    plan.distribution.d = 5;
    const auto [a, b] = fixed_schedule_exponents(plan);
    CHECK(a == doctest::Approx(1.0 / 3.0));
    CHECK(b == doctest::Approx(7.0 / 3.0));

    ExperimentPlan cls = parse_plan("kind = cusp\nzeta = 1\nn_grid = 50\n");
    const auto [ac, bc] = fixed_schedule_exponents(cls);
    // q = 2, β = 3, ρ = 2, d = 2: denominator β(q+2) + ρ(q+1) = 18.
    CHECK(ac == doctest::Approx(3.0 / 18.0));
    CHECK(bc == doctest::Approx(5.0 * 3.0 / 18.0));
}

TEST_CASE("a one-row singleton-grid curve") {
    ExperimentPlan plan = small_plan();
    plan.n_grid = {30};
    plan.replications = 1;
    plan.grid_mode = GridMode::singleton_lambda;
    const auto curve = run_learning_curve(plan);
    REQUIRE(curve.rows.size() == 1);
    CHECK(curve.rows[0].mean >= 0.0);
    CHECK(curve.runs.size() == 1);
}

TEST_CASE("learning curves are deterministic") {
    const auto plan = small_plan();
    const auto a = run_learning_curve(plan);
    const auto b = run_learning_curve(plan);
    CHECK(curve_to_csv(a) == curve_to_csv(b));
    CHECK(rate_report(plan, a).dump() == rate_report(plan, b).dump());
    REQUIRE(a.runs.size() == 4);
    CHECK(a.runs[0].seed != a.runs[1].seed);
    CHECK(a.runs[0].seed == replication_seed(plan.seed, 40, 0));
}

TEST_CASE("singleton grid on D1 equals the fixed schedule trained on D1") {
    DistributionSpec spec;
    spec.kind = "cube";
    spec.d = 2;
    spec.d_prime = 2;
    const Dataset data = generate(spec, 60, 3);
    const auto dist = std::get<RegressionDistribution>(make_distribution(spec));
    const auto sel = tv_select(data, singleton_grid(1e-3, 0.4), Loss::least_squares, dist.clip_m());
    const auto direct = fit_krr(data.slice(0, tv_train_size(60)), 1e-3, Bandwidth(0.4), dist.clip_m());
    CHECK(sel.model.coefficients == direct.coefficients);
    CHECK(sel.model.support_points == direct.support_points);
}

TEST_CASE("fixed and classification curves run") {
    ExperimentPlan plan = small_plan();
    plan.grid_mode = GridMode::fixed;
    CHECK(run_learning_curve(plan).rows.size() == 2);

    ExperimentPlan cls = parse_plan("kind = sawtooth\nsigma = 0.5\nn_grid = 40, 60\nreplications = 2\nn_test = 400\n");
    const auto curve = run_learning_curve(cls);
    for (const auto& run : curve.runs) {
        REQUIRE(run.hinge_excess.has_value());
        CHECK(run.excess <= *run.hinge_excess + 1e-12);
    }
}

TEST_CASE("rate fits") {
    const std::vector<std::size_t> n{100, 1000, 10000};
    std::vector<double> e;
    for (const auto v : n) e.push_back(std::pow(static_cast<double>(v), -0.5));
    const auto fit = fit_rate_exponent(n, e);
    CHECK(fit.empirical_exponent == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(fit.log_corrected_exponent.has_value());

    CHECK(fit_rate_exponent(n, {0.3, 0.3, 0.3}).empirical_exponent == doctest::Approx(0.0).scale(1.0));
    CHECK_THROWS_AS(fit_rate_exponent({100, 1000}, {0.1, 0.01}), EstimationError);
    CHECK_THROWS_AS(fit_rate_exponent(n, {0.1, 0.0, 0.01}), EstimationError);
}

TEST_CASE("log factors bias the pure-power fit downward") {
    auto biased = [](std::size_t lo_exp, std::size_t hi_exp) {
        std::vector<std::size_t> n;
        std::vector<double> e;
        for (std::size_t k = lo_exp; k <= hi_exp; ++k) {
            const double v = std::pow(2.0, static_cast<double>(k));
            n.push_back(static_cast<std::size_t>(v));
            e.push_back(std::pow(v, -2.0 / 3.0) * std::pow(std::log(v), 2.0));
        }
        return fit_rate_exponent(n, e);
    };
    const auto narrow = biased(8, 12);
    const auto wide = biased(8, 30);
    CHECK(narrow.empirical_exponent < 2.0 / 3.0);
    CHECK(wide.empirical_exponent < 2.0 / 3.0);
    CHECK(2.0 / 3.0 - wide.empirical_exponent < 2.0 / 3.0 - narrow.empirical_exponent);
    REQUIRE(narrow.log_corrected_exponent.has_value());
    CHECK(*narrow.log_corrected_exponent == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("curve CSV round trip") {
    const auto curve = run_learning_curve(small_plan());
    const auto path = std::filesystem::temp_directory_path() / "gksvm_curve_roundtrip.csv";
    write_text(path, curve_to_csv(curve));
    const auto [n, mean] = read_curve_csv(path.string());
    REQUIRE(n.size() == curve.rows.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        CHECK(n[i] == curve.rows[i].n);
        CHECK(mean[i] == curve.rows[i].mean);
    }
    std::filesystem::remove(path);
}

TEST_CASE("rate report echoes plan, seeds and version") {
    const auto plan = small_plan();
    const auto report = rate_report(plan, run_learning_curve(plan));
    CHECK(report.at("version") == std::string(kVersion));
    CHECK(report.at("plan").at("plan_text") == plan_to_text(plan));
    CHECK(report.at("plan").at("seed") == plan.seed);
    CHECK(report.at("theoretical_exponent").get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(report.at("curve").at("runs").size() == 4);
}

TEST_CASE("dataset CSV round trip is exact") {
    DistributionSpec spec;
    spec.kind = "swissroll";
    spec.d = 4;
    const Dataset data = generate(spec, 50, 8);
    const auto path = std::filesystem::temp_directory_path() / "gksvm_data_roundtrip.csv";
    write_csv(path, data);
    const Dataset back = read_csv(path);
    CHECK(back.x == data.x);
    CHECK(back.y == data.y);
    std::filesystem::remove(path);

    std::istringstream bad("x1,y\n0.1,0.2\n0.3\n");
    CHECK_THROWS_AS(parse_csv(bad, "bad"), InputError);
    std::istringstream nan_field("x1,y\nabc,1\n");
    CHECK_THROWS_AS(parse_csv(nan_field, "bad"), InputError);
    std::istringstream unlabeled("x1,x2\n0.1,0.2\n");
    CHECK_FALSE(parse_csv(unlabeled, "u").labeled());
}

TEST_CASE("model JSON round trip") {
    DistributionSpec spec;
    spec.kind = "cube";
    spec.d = 2;
    spec.d_prime = 2;
    const Dataset data = generate(spec, 20, 1);
    const auto model = fit_krr(data, 1e-2, Bandwidth(0.5), 1.2);
    const auto back = model_from_json(nlohmann::json::parse(model_to_json(model).dump()));
    CHECK(back.coefficients == model.coefficients);
    CHECK(back.support_points == model.support_points);
    CHECK(back.lambda == model.lambda);
    CHECK(back.gamma == model.gamma);
    CHECK(back.clip_m == model.clip_m);
    CHECK_THROWS_AS(model_from_json(nlohmann::json::parse(R"({"loss": "ls"})")), InputError);
}
