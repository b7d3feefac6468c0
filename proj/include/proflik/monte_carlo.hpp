#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "proflik/parallel.hpp"
#include "proflik/rng.hpp"

namespace proflik {

// Proposal distribution over nuisance coordinates (original parameterization;
// matrix nuisances use the packed lower triangle).
struct Proposal {
    std::function<std::vector<double>(Rng&)> sample;
    std::function<double(const std::vector<double>&)> log_pdf;
};

struct ImportanceResult {
    double log_value = 0.0;   // log of the integral estimate
    double std_error = 0.0;   // delta-method standard error of log_value
    double ess = 0.0;         // effective sample size of the weights
    int draws = 0;
};

// Plain importance-sampling estimate of log integral exp(log_target), with
// the weight mean/variance computed in a stabilized linear scale. Each draw
// runs on its own counter-derived substream, so results are reproducible
// bit-for-bit for a fixed seed regardless of thread count.
ImportanceResult importance_log_integral(
    const std::function<double(const std::vector<double>&)>& log_target, const Proposal& proposal,
    int draws, std::uint64_t seed, Exec exec = Exec::Parallel);

// Inverse-Gamma(shape, scale) proposal over one positive coordinate.
Proposal make_inverse_gamma_proposal(double shape, double scale);

// Inverse-Wishart(nu, Psi) proposal over packed d x d covariance matrices
// (Bartlett decomposition of the Wishart of the inverse).
Proposal make_inverse_wishart_proposal(double nu, const Eigen::MatrixXd& psi);

// log density of Inverse-Wishart(nu, Psi) at Sigma, wrt Lebesgue measure on
// the lower triangle.
double log_inverse_wishart_pdf(const Eigen::MatrixXd& sigma, double nu,
                               const Eigen::MatrixXd& psi);

}  // namespace proflik
