#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "proflik/errors.hpp"
#include "proflik/rng.hpp"
#include "proflik/samples.hpp"

using namespace proflik;

namespace {

ScalarSample random_scalar(Rng& rng, int n) {
    std::vector<double> y(static_cast<std::size_t>(n));
    for (double& v : y) v = rng.normal(rng.uniform() * 4.0 - 2.0, 0.5 + rng.uniform());
    return ScalarSample(std::move(y));
}

}  // namespace

TEST_CASE("sum_sq_dev hand-computed cases") {
    CHECK(sum_sq_dev(ScalarSample({1.0, 2.0, 3.0}), 2.0) == 2.0);
    CHECK(sum_sq_dev(ScalarSample({0.0, 0.0}), 0.0) == 0.0);
    CHECK(sum_sq_dev(ScalarSample({-1.0, 1.0}), 1.0) == 4.0);
}

TEST_CASE("sum_sq_dev decomposition identity on random samples") {
    Rng rng(2024);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 30);
        const ScalarSample s = random_scalar(rng, n);
        const double mu = rng.normal(0.0, 3.0);
        const double lhs = sum_sq_dev(s, mu);
        const double ybar = s.mean();
        const double rhs = (n - 1) * s.sample_variance() + n * (ybar - mu) * (ybar - mu);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("sample containers reject bad input") {
    CHECK_THROWS_AS(ScalarSample({}), Error);
    CHECK_THROWS_AS(ScalarSample({1.0, std::numeric_limits<double>::quiet_NaN()}), Error);
    CHECK_THROWS_AS(ScalarSample({std::numeric_limits<double>::infinity()}), Error);
    CHECK_THROWS_AS(sum_sq_dev(ScalarSample({1.0}), std::numeric_limits<double>::quiet_NaN()),
                    Error);
    CHECK_THROWS_AS(ScalarSample({1.0}).sample_variance(), Error);

    Eigen::MatrixXd bad(1, 2);
    bad << 1.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(VectorSample{bad}, Error);
    CHECK_THROWS_AS(VectorSample(Eigen::MatrixXd(0, 2)), Error);

    Eigen::MatrixXd X(3, 1);
    X.setOnes();
    CHECK_THROWS_AS(RegressionSample(X, Eigen::VectorXd::Zero(2)), Error);
}

TEST_CASE("scatter_matrix hand-computed and reduction cases") {
    Eigen::MatrixXd rows(2, 2);
    rows << 1.0, 0.0, -1.0, 0.0;
    const Eigen::MatrixXd A = scatter_matrix(VectorSample(rows), Eigen::Vector2d(0.0, 0.0));
    CHECK(A(0, 0) == 2.0);
    CHECK(A(0, 1) == 0.0);
    CHECK(A(1, 0) == 0.0);
    CHECK(A(1, 1) == 0.0);

    // d = 1 reduces to sum_sq_dev on the same data.
    Eigen::MatrixXd col(4, 1);
    col << 0.3, -1.1, 2.2, 0.7;
    const VectorSample vs(col);
    Eigen::VectorXd mu(1);
    mu << 0.4;
    const double a11 = scatter_matrix(vs, mu)(0, 0);
    CHECK(a11 == doctest::Approx(sum_sq_dev(vs.flatten(), 0.4)).epsilon(1e-15));

    CHECK_THROWS_AS(scatter_matrix(VectorSample(rows), Eigen::VectorXd::Zero(3)), Error);
}

TEST_CASE("scatter_matrix at the mean equals (n-1) times the two-pass covariance") {
    Rng rng(31);
    Eigen::MatrixXd rows(5, 2);
    for (int i = 0; i < rows.rows(); ++i)
        for (int j = 0; j < rows.cols(); ++j) rows(i, j) = rng.normal(j == 0 ? 1.0 : -2.0, 1.5);
    const VectorSample vs(rows);
    const Eigen::VectorXd ybar = vs.mean();
    const Eigen::MatrixXd A = scatter_matrix(vs, ybar);

    // Independent two-pass covariance computation.
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(2, 2);
    for (int i = 0; i < rows.rows(); ++i) {
        const Eigen::VectorXd r = rows.row(i).transpose() - ybar;
        cov += r * r.transpose();
    }
    cov /= static_cast<double>(rows.rows() - 1);

    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(A(a, b) == doctest::Approx((rows.rows() - 1) * cov(a, b)).epsilon(1e-12));
}

TEST_CASE("scatter_matrix is symmetric with no materially negative eigenvalue") {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 10);
        const int d = 1 + static_cast<int>(rng.uniform() * 3);
        Eigen::MatrixXd rows(n, d);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < d; ++j) rows(i, j) = rng.normal(0.0, 2.0);
        Eigen::VectorXd mu(d);
        for (int j = 0; j < d; ++j) mu[j] = rng.normal(0.0, 1.0);

        const Eigen::MatrixXd A = scatter_matrix(VectorSample(rows), mu);
        CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
        CHECK(es.eigenvalues().minCoeff() >= -1e-10 * A.trace());
    }
}

TEST_CASE("rss hand-computed cases") {
    Eigen::MatrixXd ones(2, 1);
    ones.setOnes();
    const RegressionSample rs(ones, Eigen::Vector2d(-1.0, 1.0));
    Eigen::VectorXd beta(1);
    beta << 1.0;
    CHECK(rss(rs, beta) == 4.0);

    // Exact fit: y = X beta gives zero residual.
    Eigen::MatrixXd X(3, 2);
    X << 1.0, 0.0, 1.0, 1.0, 1.0, 2.0;
    Eigen::VectorXd b(2);
    b << 0.5, 2.0;
    const RegressionSample fit(X, X * b);
    CHECK(rss(fit, b) == 0.0);

    CHECK_THROWS_AS(rss(rs, Eigen::VectorXd::Zero(2)), Error);
}

TEST_CASE("rss at the least-squares solution matches the Pythagorean identity") {
    Rng rng(13);
    Eigen::MatrixXd X(8, 2);
    Eigen::VectorXd y(8);
    for (int i = 0; i < 8; ++i) {
        X(i, 0) = 1.0;
        X(i, 1) = rng.normal(0.0, 1.0);
        y[i] = 0.7 + 1.4 * X(i, 1) + rng.normal(0.0, 0.3);
    }
    const RegressionSample rs(X, y);
    const Eigen::VectorXd beta_hat = (X.transpose() * X).llt().solve(X.transpose() * y);
    const Eigen::VectorXd fitted = X * beta_hat;
    CHECK(rss(rs, beta_hat) ==
          doctest::Approx(y.dot(y) - fitted.dot(fitted)).epsilon(1e-10));

    // Coarse grid around beta_hat: the normal-equations solution minimizes RSS.
    const double best = rss(rs, beta_hat);
    for (double d0 : {-0.3, -0.1, 0.1, 0.3})
        for (double d1 : {-0.3, -0.1, 0.1, 0.3}) {
            Eigen::VectorXd b = beta_hat;
            b[0] += d0;
            b[1] += d1;
            CHECK(rss(rs, b) >= best);
        }
}
