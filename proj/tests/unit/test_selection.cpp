#include "gksvm/selection.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace gksvm;

namespace {

bool covers(const ExponentNet& net, double lo, double hi, double eps, Rng& rng) {
    for (int i = 0; i < 10000; ++i) {
        const double u = lo + (hi - lo) * rng.uniform();
        if (net.distance_to(u) > eps + 1e-12) return false;
    }
    return net.distance_to(hi) <= eps + 1e-12;
}

Dataset regression_data(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    d.x = oracle::uniform_points(n, 1, rng);
    d.y.resize(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < d.y.size(); ++i) d.y[i] = std::sin(4.0 * d.x(i, 0)) + rng.uniform(-0.3, 0.3);
    return d;
}

}  // namespace

TEST_CASE("exponent_net examples") {
    CHECK(exponent_net(0.0, 1.0, 1.0, true).points == std::vector<double>{1.0});
    const auto quarter = exponent_net(0.0, 1.0, 0.25, true).points;
    REQUIRE(quarter.size() == 3);
    CHECK(quarter[0] == doctest::Approx(0.25));
    CHECK(quarter[1] == doctest::Approx(0.5));
    CHECK(quarter[2] == 1.0);
    CHECK(exponent_net(1.0, 1.0, 0.3, false).points == std::vector<double>{1.0});
    CHECK_THROWS_AS(exponent_net(0.0, 1.0, 0.0, true), InputError);
    CHECK_THROWS_AS(exponent_net(0.0, 1.0, -1.0, true), InputError);
}

TEST_CASE("exponent_net coverage and cardinality") {
    Rng rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const double lo = rng.uniform(0.0, 2.0);
        const double hi = lo + rng.uniform(0.0, 5.0);
        const double eps = rng.uniform(0.02, 1.5);
        const bool half_open = rng.coin();
        const auto net = exponent_net(lo, hi, eps, half_open);
        CHECK(covers(net, lo, hi, eps, rng));
        CHECK(net.points.back() == hi);
        CHECK(std::is_sorted(net.points.begin(), net.points.end()));
        for (const double p : net.points) CHECK(p >= lo);
        const auto expected = static_cast<std::size_t>(std::ceil(std::max(0.0, hi - lo - eps) / (2.0 * eps))) + 1;
        CHECK(net.points.size() == expected);
    }
}

TEST_CASE("build_grids examples") {
    SUBCASE("d = 1 regression gives the degenerate lambda grid") {
        const auto g = build_grids(100, 1, TaskMode::regression);
        CHECK(g.lambda_exponents.points == std::vector<double>{1.0});
        REQUIRE(g.lambdas.size() == 1);
        CHECK(g.lambdas[0] == doctest::Approx(0.01));
    }
    SUBCASE("n = e^10 has six gamma exponents") {
        const auto g = build_grids(22026, 1, TaskMode::regression);
        CHECK(g.gamma_exponents.points.size() == 6);
    }
    SUBCASE("n = 3 keeps 1 in A_n and covers (0, 1]") {
        const auto g = build_grids(3, 5, TaskMode::regression);
        CHECK(g.gamma_exponents.points.back() == 1.0);
        CHECK(g.gammas.front() == doctest::Approx(1.0 / 3.0));
        Rng rng(3);
        CHECK(covers(g.gamma_exponents, 0.0, 1.0, 1.0 / std::log(3.0), rng));
    }
    CHECK_THROWS_AS(build_grids(2, 1, TaskMode::regression), InputError);
}

TEST_CASE("grid invariants across sample sizes") {
    Rng rng(77);
    for (const std::size_t n : {10UL, 100UL, 1000UL, 10000UL, 1000000UL}) {
        for (const auto mode : {TaskMode::regression, TaskMode::classification}) {
            const std::size_t d = 3;
            const auto g = build_grids(n, d, mode);
            const double eps = 1.0 / std::log(static_cast<double>(n));
            CHECK(covers(g.gamma_exponents, 0.0, 1.0, eps, rng));
            const double b_lo = mode == TaskMode::regression ? 1.0 : 0.0;
            CHECK(covers(g.lambda_exponents, b_lo, static_cast<double>(d), eps, rng));
            CHECK(g.gamma_exponents.points.back() == 1.0);
            CHECK(g.lambda_exponents.points.back() == static_cast<double>(d));
            CHECK(g.gamma_exponents.points.size() <=
                  static_cast<std::size_t>(std::ceil(std::log(static_cast<double>(n)) / 2.0)) + 1);
            for (std::size_t i = 0; i < g.gammas.size(); ++i) {
                CHECK(g.gammas[i] == doctest::Approx(std::pow(static_cast<double>(n), -g.gamma_exponents.points[g.gammas.size() - 1 - i])));
            }
        }
    }
}

TEST_CASE("singleton lambda mode") {
    const auto g = build_grids(1000, 2, TaskMode::regression, true);
    REQUIRE(g.lambdas.size() == 1);
    CHECK(g.lambdas[0] == doctest::Approx(1e-6));
}

TEST_CASE("tv_select on a singleton grid returns its pair") {
    const Dataset data = regression_data(40, 1);
    const auto sel = tv_select(data, singleton_grid(1e-3, 0.3), Loss::least_squares, 1.5);
    CHECK(sel.lambda == 1e-3);
    CHECK(sel.gamma == 0.3);
    CHECK(sel.candidates.size() == 1);
}

TEST_CASE("tv_select splits in order without shuffling") {
    for (const std::size_t n : {4UL, 5UL, 31UL, 64UL}) {
        const Dataset data = regression_data(n, n);
        const auto sel = tv_select(data, singleton_grid(1e-2, 0.5), Loss::least_squares, 1.5);
        CHECK(sel.train_size == n / 2 + 1);
        REQUIRE(sel.model.support_points.rows() == static_cast<Eigen::Index>(n / 2 + 1));
        CHECK(sel.model.support_points == data.x.topRows(static_cast<Eigen::Index>(n / 2 + 1)));
        const auto direct = fit_krr(data.slice(0, n / 2 + 1), 1e-2, Bandwidth(0.5), 1.5);
        CHECK(sel.model.coefficients == direct.coefficients);
    }
    CHECK_THROWS_AS(tv_select(regression_data(3, 1), singleton_grid(1e-2, 0.5), Loss::least_squares, 1.0),
                    InputError);
}

TEST_CASE("tv_select prefers a zero-loss pair") {
    // Validation points repeat training points, so a strong fit has zero hinge loss.
    PointMatrix x(9, 1);
    x << 0.0, 1.0, 0.05, 0.95, 0.1, 0.0, 1.0, 0.05, 0.95;
    Vector y(9);
    y << -1, 1, -1, 1, -1, -1, 1, -1, 1;
    Dataset data;
    data.x = x;
    data.y = y;
    HyperGrid grid = singleton_grid(1e-6, 0.3);
    grid.lambdas = {1e-6, 10.0};
    TvOptions tight;
    tight.hinge.tol = 1e-13;
    const auto sel = tv_select(data, grid, Loss::hinge, 1.0, tight);
    CHECK(sel.lambda == 1e-6);
    CHECK(sel.validation_risk <= 1e-12);
    CHECK(sel.candidates[1].validation_risk > 0.1);
}

TEST_CASE("tv_select rejects an interpolating tiny bandwidth") {
    const Dataset data = regression_data(200, 5);
    HyperGrid grid = singleton_grid(1e-9, 1e-3);
    grid.gammas = {1e-3, 0.3};
    const auto sel = tv_select(data, grid, Loss::least_squares, 1.5);
    CHECK(sel.gamma == 0.3);

    const std::size_t m = tv_train_size(200);
    const Dataset train = data.slice(0, m);
    const Dataset valid = data.slice(m, 200 - m);
    for (const double g : {1e-3, 0.3}) {
        const auto model = fit_krr(train, 1e-9, Bandwidth(g), 1.5);
        const double risk = empirical_risk(predict(model, valid.x, true), valid.y, Loss::least_squares);
        const auto& cand = g == 1e-3 ? sel.candidates[0] : sel.candidates[1];
        CHECK(cand.validation_risk == doctest::Approx(risk).epsilon(1e-9));
    }
    CHECK(sel.candidates[0].validation_risk > 2.0 * sel.candidates[1].validation_risk);
}

TEST_CASE("tv_select returns the grid minimum of validation risk") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Dataset data = regression_data(80, 100 + seed);
        const auto grid = build_grids(80, 1, TaskMode::regression);
        const auto sel = tv_select(data, grid, Loss::least_squares, 1.5);
        double best = INFINITY;
        for (const auto& c : sel.candidates) best = std::min(best, c.validation_risk);
        CHECK(sel.validation_risk == best);
        CHECK(sel.candidates.size() == grid.size());

        const std::size_t m = tv_train_size(80);
        const auto refit = fit_krr(data.slice(0, m), sel.lambda, Bandwidth(sel.gamma), 1.5);
        const auto valid = data.slice(m, 80 - m);
        CHECK(empirical_risk(predict(refit, valid.x, true), valid.y, Loss::least_squares) ==
              doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("tv_select breaks ties toward larger lambda then larger gamma") {
    Dataset data = regression_data(30, 9);
    data.y.setZero();
    const auto grid = build_grids(30, 2, TaskMode::regression);
    const auto sel = tv_select(data, grid, Loss::least_squares, 1.0);
    CHECK(sel.validation_risk == 0.0);
    CHECK(sel.lambda == grid.lambdas.back());
    CHECK(sel.gamma == grid.gammas.back());
}

TEST_CASE("tv_select with hinge loss") {
    Rng rng(21);
    Dataset data;
    data.x = oracle::uniform_points(60, 2, rng);
    data.y.resize(60);
    for (Eigen::Index i = 0; i < 60; ++i) data.y[i] = data.x(i, 0) > 0.5 ? 1.0 : -1.0;
    const auto grid = build_grids(60, 2, TaskMode::classification);
    const auto sel = tv_select(data, grid, Loss::hinge, 1.0);
    CHECK(sel.validation_risk < 0.5);
    CHECK(sel.model.loss == Loss::hinge);
}
