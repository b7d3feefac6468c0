#include "proflik/closed_forms.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {

namespace {

void require_proper(const ScalarSample& sample) {
    if (sample.n() < 2)
        fail(ErrorCode::TooFewObservations, "profile/marginal need n >= 2 observations");
}

double positive_or_degenerate(double s, const char* what) {
    if (s <= 0.0) fail(ErrorCode::DegenerateSample, std::string(what) + " is zero");
    return s;
}

}  // namespace

double log_profile_normal(const ScalarSample& sample, double mu) {
    require_proper(sample);
    const double n = sample.n();
    const double s = positive_or_degenerate(sum_sq_dev(sample, mu), "S(mu)");
    return -0.5 * n * (kLogTwoPi + 1.0 + std::log(s / n));
}

double profile_sigma2_hat(const ScalarSample& sample, double mu) {
    return sum_sq_dev(sample, mu) / sample.n();
}

double log_marginal_normal_jeffreys(const ScalarSample& sample, double mu) {
    require_proper(sample);
    const double n = sample.n();
    const double s = positive_or_degenerate(sum_sq_dev(sample, mu), "S(mu)");
    return -0.5 * n * kLogTwoPi + std::lgamma(0.5 * n) - 0.5 * n * std::log(0.5 * s);
}

double log_jeffreys_prior_variance(double sigma2) {
    if (!(sigma2 > 0.0)) fail(ErrorCode::NonpositiveVariance, "sigma2 must be positive");
    return -std::log(sigma2);
}

double log_det_spd(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidInput, "matrix must be square");
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::NotPositiveDefinite, "Cholesky factorization failed");
    return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double log_profile_mvn(const VectorSample& sample, const Eigen::VectorXd& mu) {
    const double n = sample.n();
    const int d = sample.d();
    if (sample.n() <= d)
        fail(ErrorCode::TooFewObservations, "multivariate profile needs n >= d+1");
    const Eigen::MatrixXd a = scatter_matrix(sample, mu);
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::SingularScatter, "scatter matrix A(mu) is not positive definite");
    const double log_det_a = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    // |A/n| = |A| / n^d
    return -0.5 * n * d * (kLogTwoPi + 1.0) - 0.5 * n * (log_det_a - d * std::log(n));
}

double log_marginal_mvn_jeffreys(const VectorSample& sample, const Eigen::VectorXd& mu) {
    const double n = sample.n();
    const int d = sample.d();
    if (sample.n() <= d)
        fail(ErrorCode::TooFewObservations, "multivariate marginal needs n >= d+1");
    const Eigen::MatrixXd a = scatter_matrix(sample, mu);
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::SingularScatter, "scatter matrix A(mu) is not positive definite");
    const double log_det_a = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    return -0.5 * n * d * kLogPi + lgamma_multivariate(0.5 * n, d) - 0.5 * n * log_det_a;
}

double log_jeffreys_prior_cov(const Eigen::MatrixXd& sigma) {
    const int d = static_cast<int>(sigma.rows());
    return -0.5 * (d + 1) * log_det_spd(sigma);
}

double log_profile_regression(const RegressionSample& sample, const Eigen::VectorXd& beta) {
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "regression profile needs n >= 2");
    const double n = sample.n();
    const double r = positive_or_degenerate(rss(sample, beta), "RSS(beta)");
    return -0.5 * n * (kLogTwoPi + 1.0 + std::log(r / n));
}

double log_marginal_regression_jeffreys(const RegressionSample& sample,
                                        const Eigen::VectorXd& beta) {
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "regression marginal needs n >= 2");
    const double n = sample.n();
    const double r = positive_or_degenerate(rss(sample, beta), "RSS(beta)");
    return -0.5 * n * kLogTwoPi + std::lgamma(0.5 * n) - 0.5 * n * std::log(0.5 * r);
}

double StudentTParams::log_pdf(double x) const {
    const double z = (x - loc) / scale;
    return std::lgamma(0.5 * (df + 1.0)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * M_PI) -
           std::log(scale) - 0.5 * (df + 1.0) * std::log1p(z * z / df);
}

double StudentTParams::pdf(double x) const { return std::exp(log_pdf(x)); }

double StudentTParams::cdf(double x) const {
    boost::math::students_t_distribution<double> dist(df);
    return boost::math::cdf(dist, (x - loc) / scale);
}

StudentTParams flat_prior_posterior_t(const ScalarSample& sample) {
    if (sample.n() < 3)
        fail(ErrorCode::TooFewObservations, "flat-prior t reduction needs n >= 3");
    const double s2 = sample.sample_variance();
    if (s2 <= 0.0) fail(ErrorCode::DegenerateSample, "sample variance is zero");
    const double n = sample.n();
    return StudentTParams{n - 1.0, sample.mean(), std::sqrt(s2 / n)};
}

}  // namespace proflik
