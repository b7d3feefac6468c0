#pragma once

#include <Eigen/Dense>

#include "proflik/samples.hpp"

namespace proflik {

// Closed forms for the three normal models. Conventions:
//  * log_profile_* is the exact log of sup over the nuisance of the full
//    density, (2*pi) constants included.
//  * log_marginal_* is the exact log of the integral of the full density
//    against the Jeffreys kernel with proportionality constant pinned to 1,
//    i.e. p(sigma^2) = 1/sigma^2 and p(Sigma) = |Sigma|^{-(d+1)/2}.
// Anchored curves are invariant to that pinning.

// sup_{s2} p(y|mu,s2) = (2*pi*S(mu)/n)^{-n/2} e^{-n/2}
double log_profile_normal(const ScalarSample& sample, double mu);

// sigma2_hat(mu) = S(mu)/n
double profile_sigma2_hat(const ScalarSample& sample, double mu);

// integral against 1/sigma^2: -(n/2)ln(2pi) + lnGamma(n/2) - (n/2)ln(S(mu)/2)
double log_marginal_normal_jeffreys(const ScalarSample& sample, double mu);

// -ln(sigma2)
double log_jeffreys_prior_variance(double sigma2);

// -(nd/2)[ln(2pi)+1] - (n/2)ln|A(mu)/n|
double log_profile_mvn(const VectorSample& sample, const Eigen::VectorXd& mu);

// Inverse-Wishart normalization with nu=n, Psi=A(mu):
// -(nd/2)ln(pi) + lnGamma_d(n/2) - (n/2)ln|A(mu)|
double log_marginal_mvn_jeffreys(const VectorSample& sample, const Eigen::VectorXd& mu);

// -((d+1)/2) ln|Sigma|
double log_jeffreys_prior_cov(const Eigen::MatrixXd& sigma);

// -(n/2)[ln(2pi)+1+ln(RSS(beta)/n)]
double log_profile_regression(const RegressionSample& sample, const Eigen::VectorXd& beta);

// -(n/2)ln(2pi) + lnGamma(n/2) - (n/2)ln(RSS(beta)/2)
double log_marginal_regression_jeffreys(const RegressionSample& sample,
                                        const Eigen::VectorXd& beta);

// Location-scale Student-t; the analytic reduction of the flat-prior profile
// posterior via S(mu) = (n-1)s^2 + n(mu - ybar)^2.
struct StudentTParams {
    double df;
    double loc;
    double scale;

    double log_pdf(double x) const;
    double pdf(double x) const;
    double cdf(double x) const;
};

// df = n-1, loc = ybar, scale = s/sqrt(n)
StudentTParams flat_prior_posterior_t(const ScalarSample& sample);

// 2*sum(ln L_ii) from the Cholesky factor; failure to factor defines
// "not positive definite".
double log_det_spd(const Eigen::MatrixXd& m);

}  // namespace proflik
