#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "proflik/closed_forms.hpp"
#include "proflik/equivalence.hpp"
#include "proflik/errors.hpp"
#include "proflik/math.hpp"
#include "proflik/rng.hpp"
#include "proflik/samples.hpp"

using namespace proflik;

namespace {

ScalarSample random_scalar(Rng& rng, int n) {
    std::vector<double> y(static_cast<std::size_t>(n));
    for (double& v : y) v = rng.normal(0.4, 1.1);
    return ScalarSample(std::move(y));
}

}  // namespace

TEST_CASE("identical curves compare with zero discrepancy") {
    const LogCurve c = LogCurve::scalar({0.0, 1.0, 2.0}, {-3.0, -1.0, -2.0});
    const EquivalenceReport r = compare_curves(c, c, 1, 1e-12);
    CHECK(r.sup_abs_discrepancy == 0.0);
    CHECK(r.pass);
    CHECK(r.offset_estimate == 0.0);
    CHECK(r.argmax_profile == r.argmax_marginal);
    CHECK(r.excluded_indices.empty());
}

TEST_CASE("constant offset curves match exactly after anchoring") {
    const std::vector<double> grid{-2.0, 0.0, 1.0, 4.0};
    const std::vector<double> base{-1.0, -0.5, -0.8, -3.0};
    std::vector<double> shifted = base;
    for (double& v : shifted) v += 7.0;
    const LogCurve p = LogCurve::scalar(grid, base);
    const LogCurve m = LogCurve::scalar(grid, shifted);
    const EquivalenceReport r = compare_curves(p, m, 0, 1e-15);
    CHECK(r.sup_abs_discrepancy <= 1e-15);
    CHECK(r.pass);
    CHECK(r.offset_estimate == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("non-constant difference is detected and symmetric") {
    const std::vector<double> grid{0.0, 1.0, 2.0};
    const LogCurve p = LogCurve::scalar(grid, {0.0, -1.0, -2.0});
    const LogCurve m = LogCurve::scalar(grid, {0.0, -1.0, -2.5});
    const EquivalenceReport r = compare_curves(p, m, 0, 1e-3);
    CHECK(r.sup_abs_discrepancy == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(r.pass);

    const EquivalenceReport swapped = compare_curves(m, p, 0, 1e-3);
    CHECK(swapped.sup_abs_discrepancy == doctest::Approx(r.sup_abs_discrepancy).epsilon(1e-14));
}

TEST_CASE("grid mismatch and bad anchors are rejected") {
    const LogCurve a = LogCurve::scalar({0.0, 1.0}, {1.0, 2.0});
    const LogCurve b = LogCurve::scalar({0.0, 2.0}, {1.0, 2.0});
    const LogCurve c = LogCurve::scalar({0.0, 1.0, 2.0}, {1.0, 2.0, 3.0});
    CHECK_THROWS_AS(compare_curves(a, b, 0, 1e-6), Error);
    CHECK_THROWS_AS(compare_curves(a, c, 0, 1e-6), Error);
    CHECK_THROWS_AS(compare_curves(a, a, 5, 1e-6), Error);

    const LogCurve hole = LogCurve::scalar({0.0, 1.0}, {kNegInf, 2.0});
    CHECK_THROWS_AS(compare_curves(hole, a, 0, 1e-6), Error);
}

TEST_CASE("anchor choice does not change the discrepancy materially") {
    Rng rng(71);
    const ScalarSample s = random_scalar(rng, 15);
    const auto grid = default_normal_grid(s, 101);
    std::vector<double> prof(grid.size()), marg(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        prof[i] = log_profile_normal(s, grid[i]);
        marg[i] = log_marginal_normal_jeffreys(s, grid[i]);
    }
    const LogCurve p = LogCurve::scalar(grid, prof);
    const LogCurve m = LogCurve::scalar(grid, marg);
    const double at_start = compare_curves(p, m, 0, 1e-9).sup_abs_discrepancy;
    const double at_mode = compare_curves(p, m, argmax_usable(p), 1e-9).sup_abs_discrepancy;
    CHECK(std::abs(at_start - at_mode) <= 1e-12);
}

TEST_CASE("scalar verification meets the analytic tolerance") {
    Rng rng(72);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 48);
        const ScalarSample s = random_scalar(rng, n);
        const EquivalenceReport r = verify_normal(s, default_normal_grid(s));
        CHECK(r.pass);
        CHECK(r.sup_abs_discrepancy <= 1e-10);
        CHECK(r.argmax_profile == r.argmax_marginal);
        CHECK(r.excluded_indices.empty());

        // Offset equals the closed-form constant.
        const double expected = std::lgamma(0.5 * n) + 0.5 * n * std::log(2.0) + 0.5 * n -
                                0.5 * n * std::log(static_cast<double>(n));
        CHECK(std::abs(r.offset_estimate - expected) <= 1e-10);
    }
}

TEST_CASE("degenerate grid points are excluded, not fatal") {
    // y=(0,0) is degenerate at mu=0 only; that grid point is skipped.
    const ScalarSample zeros({0.0, 0.0});
    const std::vector<double> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
    const EquivalenceReport r = verify_normal(zeros, grid);
    REQUIRE(r.excluded_indices.size() == 1);
    CHECK(r.excluded_indices[0] == 2);
    CHECK(r.profile.usable[2] == 0);
    CHECK(r.pass);
}

TEST_CASE("scalar numeric verification stays within its tolerance") {
    Rng rng(73);
    const ScalarSample s = random_scalar(rng, 9);
    VerifySettings settings;
    settings.mode = VerifyMode::Numeric;
    const EquivalenceReport r = verify_normal(s, default_normal_grid(s, 41), settings);
    CHECK(r.pass);
    CHECK(r.sup_abs_discrepancy <= 1e-5);
}

TEST_CASE("d=1 multivariate verification agrees with the scalar one") {
    Rng rng(74);
    const ScalarSample s = random_scalar(rng, 10);
    Eigen::MatrixXd col(10, 1);
    for (int i = 0; i < 10; ++i) col(i, 0) = s.y[static_cast<std::size_t>(i)];
    const VectorSample vs(col);

    const auto grid = default_normal_grid(s, 51);
    std::vector<std::vector<double>> vgrid;
    for (double g : grid) vgrid.push_back({g});

    const EquivalenceReport scalar_r = verify_normal(s, grid);
    const EquivalenceReport mvn_r = verify_mvn(vs, vgrid);
    CHECK(mvn_r.pass);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(mvn_r.profile.values[i] - scalar_r.profile.values[i]) <= 1e-9);
        CHECK(std::abs(mvn_r.marginal.values[i] - scalar_r.marginal.values[i]) <= 1e-9);
    }
}

TEST_CASE("multivariate verification passes on random instances") {
    Rng rng(75);
    for (int rep = 0; rep < 5; ++rep) {
        const int d = 2;
        const int n = 5 + static_cast<int>(rng.uniform() * 10);
        Eigen::MatrixXd rows(n, d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) rows(i, j) = rng.normal(0.5 * j, 1.0 + 0.3 * j);
        const VectorSample vs(rows);

        std::vector<std::vector<double>> grid;
        const Eigen::VectorXd center = vs.mean();
        for (double dx : {-0.6, 0.0, 0.6})
            for (double dy : {-0.6, 0.0, 0.6}) grid.push_back({center[0] + dx, center[1] + dy});

        const EquivalenceReport r = verify_mvn(vs, grid);
        CHECK(r.pass);
        CHECK(r.sup_abs_discrepancy <= 1e-9);
        CHECK(r.argmax_profile == r.argmax_marginal);
    }
}

TEST_CASE("intercept-only regression verification agrees with the scalar one") {
    Rng rng(76);
    const ScalarSample s = random_scalar(rng, 12);
    Eigen::MatrixXd X(12, 1);
    X.setOnes();
    Eigen::VectorXd y(12);
    for (int i = 0; i < 12; ++i) y[i] = s.y[static_cast<std::size_t>(i)];
    const RegressionSample rs(X, y);

    const auto grid = default_normal_grid(s, 51);
    std::vector<std::vector<double>> bgrid;
    for (double g : grid) bgrid.push_back({g});

    const EquivalenceReport scalar_r = verify_normal(s, grid);
    const EquivalenceReport reg_r = verify_regression(rs, bgrid);
    CHECK(reg_r.pass);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(std::abs(reg_r.profile.values[i] - scalar_r.profile.values[i]) <= 1e-10);
}

TEST_CASE("regression verification passes and rejects rank deficiency") {
    Rng rng(77);
    Eigen::MatrixXd X(10, 2);
    Eigen::VectorXd y(10);
    for (int i = 0; i < 10; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = rng.normal(0.0, 1.0);
        y[i] = 0.3 - 0.8 * X(i, 1) + rng.normal(0.0, 0.5);
    }
    const RegressionSample rs(X, y);
    const Eigen::VectorXd beta_hat = (X.transpose() * X).llt().solve(X.transpose() * y);

    std::vector<std::vector<double>> grid;
    for (double dx : {-0.4, 0.0, 0.4})
        for (double dy : {-0.4, 0.0, 0.4}) grid.push_back({beta_hat[0] + dx, beta_hat[1] + dy});
    const EquivalenceReport r = verify_regression(rs, grid);
    CHECK(r.pass);
    CHECK(r.sup_abs_discrepancy <= 1e-10);

    // Duplicate column: rank deficient.
    Eigen::MatrixXd Xdup(10, 2);
    Xdup.col(0) = X.col(0);
    Xdup.col(1) = X.col(0);
    CHECK_THROWS_AS(verify_regression(RegressionSample(Xdup, y), grid), Error);
}

TEST_CASE("too-small samples are rejected up front") {
    CHECK_THROWS_AS(verify_normal(ScalarSample({1.0}), {0.0, 1.0}), Error);

    Eigen::MatrixXd rows(2, 2);
    rows << 0.0, 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(verify_mvn(VectorSample(rows), {{0.0, 0.0}, {0.5, 0.5}}), Error);
}

TEST_CASE("report serializes with scalar grids as numbers") {
    Rng rng(78);
    const ScalarSample s = random_scalar(rng, 6);
    const EquivalenceReport r = verify_normal(s, default_normal_grid(s, 21));
    const auto j = report_to_json(r);
    CHECK(j["model"] == "normal");
    CHECK(j["grid"].size() == 21);
    CHECK(j["grid"][0].is_number());
    CHECK(j["pass"] == true);
    CHECK(j["profile"].size() == 21);
    CHECK(j["marginal"].size() == 21);
    CHECK(j["sup_abs_discrepancy"].is_number());
    CHECK(j["anchor_index"].is_number());
    CHECK(j["excluded_indices"].is_array());
}
