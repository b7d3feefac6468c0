#include "proflik/models.hpp"

#include <cmath>

#include <boost/math/special_functions/trigamma.hpp>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {
namespace {

const ScalarSample& as_scalar(const Dataset& data) {
    const auto* s = std::get_if<ScalarSample>(&data);
    if (!s) fail(ErrorCode::InvalidInput, "model expects univariate observations");
    return *s;
}

const VectorSample& as_vector(const Dataset& data, int d) {
    const auto* s = std::get_if<VectorSample>(&data);
    if (!s) fail(ErrorCode::InvalidInput, "model expects vector observations");
    if (s->d() != d) fail(ErrorCode::InvalidInput, "observation dimension does not match model");
    return *s;
}

const RegressionSample& as_regression(const Dataset& data, int q) {
    const auto* s = std::get_if<RegressionSample>(&data);
    if (!s) fail(ErrorCode::InvalidInput, "model expects design/response observations");
    if (s->q() != q) fail(ErrorCode::InvalidInput, "design width does not match model");
    return *s;
}

// Floor used only to keep degenerate starting points inside the open domain;
// the optimizer still reports honestly if the likelihood is unbounded there.
double positive_floor(double v) { return v > 0.0 ? v : 1e-8; }

}  // namespace

NuisanceModel scalar_normal_model() {
    NuisanceModel m;
    m.interest_dim = 1;
    m.nuisance_dim = 1;
    m.domain = NuisanceDomain::Positive;

    m.log_density = [](const Dataset& data, const std::vector<double>& interest,
                       const std::vector<double>& nuisance) {
        const ScalarSample& s = as_scalar(data);
        const double mu = interest[0];
        const double sigma2 = nuisance[0];
        if (!(sigma2 > 0.0)) return kNegInf;
        const double n = static_cast<double>(s.n());
        return -0.5 * n * (kLogTwoPi + std::log(sigma2)) - sum_sq_dev(s, mu) / (2.0 * sigma2);
    };

    m.analytic_nuisance_fisher = [](const std::vector<double>&,
                                    const std::vector<double>& nuisance) {
        const double sigma2 = nuisance[0];
        Eigen::MatrixXd info(1, 1);
        info(0, 0) = 1.0 / (2.0 * sigma2 * sigma2);
        return info;
    };

    m.sample_one = [](const std::vector<double>& interest, const std::vector<double>& nuisance,
                      Rng& rng) -> Dataset {
        return ScalarSample({interest[0] + std::sqrt(nuisance[0]) * rng.normal()});
    };

    m.init_nuisance = [](const Dataset& data, const std::vector<double>& interest) {
        const ScalarSample& s = as_scalar(data);
        return std::vector<double>{
            positive_floor(sum_sq_dev(s, interest[0]) / static_cast<double>(s.n()))};
    };

    return m;
}

NuisanceModel mvn_model(int d) {
    if (d < 1) fail(ErrorCode::InvalidInput, "dimension must be at least 1");

    NuisanceModel m;
    m.interest_dim = d;
    m.nuisance_dim = d * (d + 1) / 2;
    m.domain = NuisanceDomain::PositiveDefiniteMatrix;
    m.matrix_dim = d;

    m.log_density = [d](const Dataset& data, const std::vector<double>& interest,
                        const std::vector<double>& nuisance) {
        const VectorSample& s = as_vector(data, d);
        const Eigen::VectorXd mu = Eigen::Map<const Eigen::VectorXd>(interest.data(), d);
        const Eigen::MatrixXd sigma = unpack_symmetric(nuisance, d);
        const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success) return kNegInf;
        double log_det = 0.0;
        for (int i = 0; i < d; ++i) log_det += 2.0 * std::log(llt.matrixL()(i, i));
        const double n = static_cast<double>(s.n());
        const Eigen::MatrixXd a = scatter_matrix(s, mu);
        return -0.5 * n * d * kLogTwoPi - 0.5 * n * log_det - 0.5 * llt.solve(a).trace();
    };

    // vech coordinates, pack order (0,0),(1,0),(1,1),...:
    // I_{ab} = tr(Sigma^-1 E_a Sigma^-1 E_b) / 2 with E_{ii} = e_i e_i^T and
    // E_{ij} = e_i e_j^T + e_j e_i^T for i != j.
    m.analytic_nuisance_fisher = [d](const std::vector<double>&,
                                     const std::vector<double>& nuisance) {
        const Eigen::MatrixXd sigma = unpack_symmetric(nuisance, d);
        const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success)
            fail(ErrorCode::NotPositiveDefinite, "covariance is not positive definite");
        const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(d, d));

        const int p = d * (d + 1) / 2;
        std::vector<Eigen::MatrixXd> basis;
        basis.reserve(p);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j <= i; ++j) {
                Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
                e(i, j) += 1.0;
                e(j, i) += 1.0;
                if (i == j) e(i, i) = 1.0;
                basis.push_back(inv * e);
            }

        Eigen::MatrixXd info(p, p);
        for (int a = 0; a < p; ++a)
            for (int b = 0; b <= a; ++b) {
                const double v = 0.5 * (basis[a] * basis[b]).trace();
                info(a, b) = v;
                info(b, a) = v;
            }
        return info;
    };

    m.sample_one = [d](const std::vector<double>& interest, const std::vector<double>& nuisance,
                       Rng& rng) -> Dataset {
        const Eigen::MatrixXd sigma = unpack_symmetric(nuisance, d);
        const Eigen::LLT<Eigen::MatrixXd> llt(sigma);
        if (llt.info() != Eigen::Success)
            fail(ErrorCode::NotPositiveDefinite, "covariance is not positive definite");
        Eigen::VectorXd z(d);
        for (int i = 0; i < d; ++i) z[i] = rng.normal();
        Eigen::MatrixXd row(1, d);
        row.row(0) = (Eigen::Map<const Eigen::VectorXd>(interest.data(), d) +
                      Eigen::MatrixXd(llt.matrixL()) * z)
                         .transpose();
        return VectorSample(std::move(row));
    };

    m.init_nuisance = [d](const Dataset& data, const std::vector<double>& interest) {
        const VectorSample& s = as_vector(data, d);
        const Eigen::VectorXd mu = Eigen::Map<const Eigen::VectorXd>(interest.data(), d);
        Eigen::MatrixXd sigma = scatter_matrix(s, mu) / static_cast<double>(s.n());
        const double ridge = 1e-8 * (1.0 + sigma.trace() / d);
        sigma += ridge * Eigen::MatrixXd::Identity(d, d);
        return pack_symmetric(sigma);
    };

    return m;
}

NuisanceModel regression_model(int q) {
    if (q < 1) fail(ErrorCode::InvalidInput, "design width must be at least 1");

    NuisanceModel m;
    m.interest_dim = q;
    m.nuisance_dim = 1;
    m.domain = NuisanceDomain::Positive;

    m.log_density = [q](const Dataset& data, const std::vector<double>& interest,
                        const std::vector<double>& nuisance) {
        const RegressionSample& s = as_regression(data, q);
        const double sigma2 = nuisance[0];
        if (!(sigma2 > 0.0)) return kNegInf;
        const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(interest.data(), q);
        const double n = static_cast<double>(s.n());
        return -0.5 * n * (kLogTwoPi + std::log(sigma2)) - rss(s, beta) / (2.0 * sigma2);
    };

    m.analytic_nuisance_fisher = [](const std::vector<double>&,
                                    const std::vector<double>& nuisance) {
        const double sigma2 = nuisance[0];
        Eigen::MatrixXd info(1, 1);
        info(0, 0) = 1.0 / (2.0 * sigma2 * sigma2);
        return info;
    };

    // Covariates: intercept plus standard normal columns.
    m.sample_one = [q](const std::vector<double>& interest, const std::vector<double>& nuisance,
                       Rng& rng) -> Dataset {
        Eigen::MatrixXd x(1, q);
        x(0, 0) = 1.0;
        for (int j = 1; j < q; ++j) x(0, j) = rng.normal();
        const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(interest.data(), q);
        Eigen::VectorXd y(1);
        y[0] = x.row(0).dot(beta) + std::sqrt(nuisance[0]) * rng.normal();
        return RegressionSample(std::move(x), std::move(y));
    };

    m.init_nuisance = [q](const Dataset& data, const std::vector<double>& interest) {
        const RegressionSample& s = as_regression(data, q);
        const Eigen::VectorXd beta = Eigen::Map<const Eigen::VectorXd>(interest.data(), q);
        return std::vector<double>{positive_floor(rss(s, beta) / static_cast<double>(s.n()))};
    };

    return m;
}

NuisanceModel gamma_mean_shape_model() {
    NuisanceModel m;
    m.interest_dim = 1;
    m.nuisance_dim = 1;
    m.domain = NuisanceDomain::Positive;

    // Gamma(shape alpha, rate alpha/mu), so E y = mu for every alpha.
    m.log_density = [](const Dataset& data, const std::vector<double>& interest,
                       const std::vector<double>& nuisance) {
        const ScalarSample& s = as_scalar(data);
        const double mu = interest[0];
        const double alpha = nuisance[0];
        if (!(mu > 0.0) || !(alpha > 0.0)) return kNegInf;
        CompensatedSum sum_log, sum_y;
        for (double y : s.y) {
            if (!(y > 0.0)) return kNegInf;
            sum_log.add(std::log(y));
            sum_y.add(y);
        }
        const double n = static_cast<double>(s.n());
        return n * alpha * std::log(alpha / mu) + (alpha - 1.0) * sum_log.value() -
               (alpha / mu) * sum_y.value() - n * std::lgamma(alpha);
    };

    // Per observation, at fixed mu: I(alpha) = trigamma(alpha) - 1/alpha.
    m.analytic_nuisance_fisher = [](const std::vector<double>&,
                                    const std::vector<double>& nuisance) {
        const double alpha = nuisance[0];
        Eigen::MatrixXd info(1, 1);
        info(0, 0) = boost::math::trigamma(alpha) - 1.0 / alpha;
        return info;
    };

    m.sample_one = [](const std::vector<double>& interest, const std::vector<double>& nuisance,
                      Rng& rng) -> Dataset {
        const double mu = interest[0];
        const double alpha = nuisance[0];
        return ScalarSample({rng.gamma(alpha, mu / alpha)});
    };

    // Moment-matched start: Var y = mu^2 / alpha.
    m.init_nuisance = [](const Dataset& data, const std::vector<double>& interest) {
        const ScalarSample& s = as_scalar(data);
        const double mu = interest[0];
        double v = s.n() >= 2 ? s.sample_variance() : 0.0;
        if (!(v > 0.0)) v = 1.0;
        return std::vector<double>{std::max(mu * mu / v, 0.02)};
    };

    return m;
}

}  // namespace proflik
