#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "proflik/closed_forms.hpp"
#include "proflik/engine.hpp"
#include "proflik/errors.hpp"
#include "proflik/models.hpp"
#include "proflik/rng.hpp"

using namespace proflik;

namespace {

ScalarSample random_scalar(Rng& rng, int n) {
    std::vector<double> y(static_cast<std::size_t>(n));
    for (double& v : y) v = rng.normal(rng.normal(0.0, 1.0), 0.3 + 2.0 * rng.uniform());
    return ScalarSample(std::move(y));
}

}  // namespace

TEST_CASE("numeric profile matches the scalar closed form") {
    const NuisanceModel model = scalar_normal_model();
    const ScalarSample pm1({-1.0, 1.0});
    const Dataset data = pm1;

    const ProfileResult r = profile_numeric(model, data, {0.0}, model.init_nuisance(data, {0.0}));
    CHECK(r.log_value == doctest::Approx(log_profile_normal(pm1, 0.0)).epsilon(1e-8));
    CHECK(r.argmax[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.grad_norm <= 1e-6 * (1.0 + std::abs(r.log_value)));

    Rng rng(52);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 20);
        const ScalarSample s = random_scalar(rng, n);
        const double mu = rng.normal(0.0, 1.5);
        const Dataset d = s;
        const ProfileResult pr = profile_numeric(model, d, {mu}, model.init_nuisance(d, {mu}));
        CHECK(std::abs(pr.log_value - log_profile_normal(s, mu)) <= 1e-6);
        CHECK(pr.argmax[0] == doctest::Approx(profile_sigma2_hat(s, mu)).epsilon(1e-5));
    }
}

TEST_CASE("numeric profile is insensitive to the initialization scale") {
    const NuisanceModel model = scalar_normal_model();
    Rng rng(6);
    const ScalarSample s = random_scalar(rng, 12);
    const Dataset data = s;
    const double mu = 0.4;
    const double s2 = profile_sigma2_hat(s, mu);

    double values[3];
    int i = 0;
    for (double f : {0.1, 1.0, 10.0})
        values[i++] = profile_numeric(model, data, {mu}, {f * s2}).log_value;
    CHECK(std::abs(values[0] - values[1]) <= 1e-6);
    CHECK(std::abs(values[2] - values[1]) <= 1e-6);
}

TEST_CASE("numeric profile matches the multivariate closed form") {
    const NuisanceModel model = mvn_model(2);
    Eigen::MatrixXd rows(4, 2);
    rows << 0.5, -0.2, 1.3, 0.4, -0.7, 0.9, 0.2, -1.1;
    const VectorSample vs(rows);
    const Dataset data = vs;
    Eigen::VectorXd mu(2);
    mu << 0.1, -0.2;
    const std::vector<double> interest{0.1, -0.2};

    const ProfileResult r =
        profile_numeric(model, data, interest, model.init_nuisance(data, interest));
    CHECK(std::abs(r.log_value - log_profile_mvn(vs, mu)) <= 1e-6);

    // Argmax is Sigma_hat = A(mu)/n.
    const Eigen::MatrixXd expected = scatter_matrix(vs, mu) / vs.n();
    const Eigen::MatrixXd got = unpack_symmetric(r.argmax, 2);
    CHECK((got - expected).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("numeric profile matches the regression closed form") {
    const NuisanceModel model = regression_model(2);
    Eigen::MatrixXd X(6, 2);
    X << 1, -1, 1, 0, 1, 1, 1, 2, 1, 3, 1, 4;
    Eigen::VectorXd y(6);
    y << 0.1, 0.6, 1.4, 2.1, 3.3, 3.8;
    const RegressionSample rs(X, y);
    const Dataset data = rs;
    const std::vector<double> beta{0.5, 0.9};

    const ProfileResult r = profile_numeric(model, data, beta, model.init_nuisance(data, beta));
    Eigen::VectorXd bv(2);
    bv << 0.5, 0.9;
    CHECK(std::abs(r.log_value - log_profile_regression(rs, bv)) <= 1e-6);
}

TEST_CASE("numeric marginal matches the scalar closed form") {
    const NuisanceModel model = scalar_normal_model();
    const auto jeffreys = [](const std::vector<double>& x) {
        return log_jeffreys_prior_variance(x.at(0));
    };

    const ScalarSample pm1({-1.0, 1.0});
    CHECK(marginal_numeric(model, pm1, {0.0}, jeffreys) ==
          doctest::Approx(log_marginal_normal_jeffreys(pm1, 0.0)).epsilon(1e-8));

    Rng rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform() * 20);
        const ScalarSample s = random_scalar(rng, n);
        const double mu = rng.normal(0.0, 1.5);
        const double got = marginal_numeric(model, s, {mu}, jeffreys);
        CHECK(std::abs(got - log_marginal_normal_jeffreys(s, mu)) <= 1e-6);
    }
}

TEST_CASE("numeric marginal matches the regression closed form") {
    const NuisanceModel model = regression_model(2);
    Eigen::MatrixXd X(5, 2);
    X << 1, 0, 1, 1, 1, 2, 1, 3, 1, 4;
    Eigen::VectorXd y(5);
    y << 0.5, 1.1, 2.3, 2.8, 4.2;
    const RegressionSample rs(X, y);
    const auto jeffreys = [](const std::vector<double>& x) {
        return log_jeffreys_prior_variance(x.at(0));
    };
    const double got = marginal_numeric(model, rs, {0.4, 0.9}, jeffreys);
    Eigen::VectorXd beta(2);
    beta << 0.4, 0.9;
    CHECK(std::abs(got - log_marginal_regression_jeffreys(rs, beta)) <= 1e-6);
}

TEST_CASE("marginal quadrature rejects matrix nuisances") {
    const NuisanceModel model = mvn_model(2);
    Eigen::MatrixXd rows(4, 2);
    rows << 0.5, -0.2, 1.3, 0.4, -0.7, 0.9, 0.2, -1.1;
    const Dataset data = VectorSample(rows);
    const auto prior = [](const std::vector<double>&) { return 0.0; };
    CHECK_THROWS_AS(marginal_numeric(model, data, {0.0, 0.0}, prior), Error);
}

TEST_CASE("importance-sampled marginal agrees with quadrature on the scalar model") {
    const NuisanceModel model = scalar_normal_model();
    Rng rng(54);
    const ScalarSample s = random_scalar(rng, 8);
    const Dataset data = s;
    const double mu = 0.2;
    const auto jeffreys = [](const std::vector<double>& x) {
        return log_jeffreys_prior_variance(x.at(0));
    };

    const double quad = marginal_numeric(model, data, {mu}, jeffreys);
    // Slightly off the conjugate parameters so the weights carry real variance.
    const Proposal prop =
        make_inverse_gamma_proposal(0.5 * s.n() + 0.5, 0.4 * sum_sq_dev(s, mu));
    const ImportanceResult mc = marginal_mc(model, data, {mu}, jeffreys, prop, 20000, 4);
    CHECK(std::abs(mc.log_value - quad) <= 3.0 * mc.std_error);
    CHECK(mc.std_error < 0.05);
    CHECK(mc.std_error > 1e-8);
}

TEST_CASE("importance-sampled marginal matches the multivariate closed form") {
    const NuisanceModel model = mvn_model(2);
    Eigen::MatrixXd rows(4, 2);
    rows << 0.5, -0.2, 1.3, 0.4, -0.7, 0.9, 0.2, -1.1;
    const VectorSample vs(rows);
    const Dataset data = vs;
    Eigen::VectorXd mu(2);
    mu << 0.1, -0.2;
    const std::vector<double> interest{0.1, -0.2};

    const auto prior = [](const std::vector<double>& x) {
        return log_jeffreys_prior_cov(unpack_symmetric(x, 2));
    };
    const Eigen::MatrixXd scatter = scatter_matrix(vs, mu);
    const Proposal prop = make_inverse_wishart_proposal(vs.n() + 2.0, scatter);
    const ImportanceResult mc = marginal_mc(model, data, interest, prior, prop, 40000, 8);
    CHECK(std::abs(mc.log_value - log_marginal_mvn_jeffreys(vs, mu)) <= 3.0 * mc.std_error);
    CHECK(mc.std_error < 0.1);

    // Bit-identical rerun.
    const ImportanceResult again = marginal_mc(model, data, interest, prior, prop, 40000, 8);
    CHECK(again.log_value == mc.log_value);
}
