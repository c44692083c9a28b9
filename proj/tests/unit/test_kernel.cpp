#include "gksvm/kernel.hpp"
#include "gksvm/rng.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <vector>

using namespace gksvm;

namespace {

PointMatrix rows(std::initializer_list<std::vector<double>> values) {
    const auto n = static_cast<Eigen::Index>(values.size());
    const auto d = static_cast<Eigen::Index>(values.begin()->size());
    PointMatrix m(n, d);
    Eigen::Index i = 0;
    for (const auto& r : values) {
        for (Eigen::Index k = 0; k < d; ++k) m(i, k) = r[static_cast<std::size_t>(k)];
        ++i;
    }
    return m;
}

}  // namespace

TEST_CASE("bandwidth rejects nonpositive and non-finite values") {
    CHECK_THROWS_AS(Bandwidth(0.0), InputError);
    CHECK_THROWS_AS(Bandwidth(-1.0), InputError);
    CHECK_THROWS_AS(Bandwidth(std::nan("")), InputError);
    CHECK_THROWS_AS(Bandwidth(std::numeric_limits<double>::infinity()), InputError);
    CHECK(Bandwidth(0.5).value() == 0.5);
}

TEST_CASE("gaussian_eval examples") {
    const std::vector<double> a{0.3, -1.2};
    CHECK(gaussian_eval(a, a, Bandwidth(0.7)) == 1.0);

    const std::vector<double> x{0.0, 0.0};
    const std::vector<double> y{3.0, 4.0};
    CHECK(gaussian_eval(x, y, Bandwidth(5.0)) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(gaussian_eval(x, y, Bandwidth(1.0)) == doctest::Approx(std::exp(-25.0)).epsilon(1e-15));

    const std::vector<double> short_vec{1.0};
    CHECK_THROWS_AS(gaussian_eval(x, short_vec, Bandwidth(1.0)), InputError);
}

TEST_CASE("gaussian_eval scaling and monotonicity") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(3), y(3), sx(3), sy(3);
        const double s = rng.uniform(0.1, 10.0);
        for (int k = 0; k < 3; ++k) {
            x[k] = rng.uniform(-1, 1);
            y[k] = rng.uniform(-1, 1);
            sx[k] = s * x[k];
            sy[k] = s * y[k];
        }
        const double g = rng.uniform(0.2, 2.0);
        CHECK(gaussian_eval(sx, sy, Bandwidth(s * g)) == doctest::Approx(gaussian_eval(x, y, Bandwidth(g))).epsilon(1e-12));
        CHECK(gaussian_eval(x, y, Bandwidth(g * 1.1)) > gaussian_eval(x, y, Bandwidth(g)));
    }
}

TEST_CASE("kernel_matrix examples") {
    CHECK(kernel_matrix(rows({{0.4, 0.2}}), Bandwidth(1.0)).entries(0, 0) == 1.0);

    const auto same = kernel_matrix(rows({{1.0, 2.0}, {1.0, 2.0}}), Bandwidth(0.3)).entries;
    CHECK(same(0, 0) == 1.0);
    CHECK(same(0, 1) == 1.0);
    CHECK(same(1, 0) == 1.0);
    CHECK(same(1, 1) == 1.0);

    const auto apart = kernel_matrix(rows({{0.0}, {0.5}}), Bandwidth(0.5)).entries;
    CHECK(apart(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(kernel_matrix(PointMatrix(0, 2), Bandwidth(1.0)), InputError);
}

TEST_CASE("kernel_matrix is bit-symmetric, matches the formula and is PSD") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng.below(30);
        const std::size_t d = 1 + rng.below(4);
        const PointMatrix x = oracle::uniform_points(n, d, rng);
        const double g = rng.uniform(0.1, 2.0);
        const auto k = kernel_matrix(x, Bandwidth(g)).entries;
        const Eigen::MatrixXd ref = oracle::gram(x, g);
        for (Eigen::Index i = 0; i < k.rows(); ++i) {
            CHECK(k(i, i) == 1.0);
            for (Eigen::Index j = 0; j < k.cols(); ++j) {
                CHECK(k(i, j) == k(j, i));
                CHECK(k(i, j) == doctest::Approx(ref(i, j)).epsilon(1e-13));
            }
        }
        const double c = 1e-3;
        const Eigen::MatrixXd shifted = Eigen::MatrixXd(k) + c * Eigen::MatrixXd::Identity(k.rows(), k.cols());
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(shifted);
        CHECK(eig.eigenvalues().minCoeff() >= c - 1e-10);
    }
}

TEST_CASE("cross_kernel examples") {
    const PointMatrix train = rows({{0.0, 0.0}, {1.0, 0.5}, {0.2, 0.9}});
    const Bandwidth g(0.6);
    const auto self = cross_kernel(train, train, g);
    const auto gram = kernel_matrix(train, g).entries;
    CHECK((self - gram).cwiseAbs().maxCoeff() == 0.0);

    const auto hit = cross_kernel(rows({{1.0, 0.5}}), train, g);
    CHECK(hit(0, 1) == 1.0);

    const auto far = cross_kernel(rows({{40.0, -40.0}}), train, g);
    CHECK(far.cwiseAbs().maxCoeff() < 1e-10);

    CHECK_THROWS_AS(cross_kernel(rows({{1.0}}), train, g), InputError);
}
