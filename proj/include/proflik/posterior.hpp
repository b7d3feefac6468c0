#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "proflik/curve.hpp"
#include "proflik/samples.hpp"

namespace proflik {

// Prior over the mean: improper flat (density constant 1) or N(m0, tau2).
struct MeanPrior {
    bool is_flat = true;
    double m0 = 0.0;
    double tau2 = 1.0;

    static MeanPrior flat() { return MeanPrior{}; }
    static MeanPrior normal(double m0, double tau2);

    double log_density(double mu) const;
    std::string tag() const;  // "flat" or "normal(m0,tau2)"
};

// Post-burn-in states of the two-block chain, in draw order.
struct PosteriorDraws {
    std::vector<double> mu;
    std::vector<double> sigma2;
    std::uint64_t seed = 0;
    int iterations = 0;
    int burn_in = 0;
    std::string prior_tag;

    int retained() const { return static_cast<int>(mu.size()); }
};

// Log posterior density of mu on the grid: profile log likelihood plus log
// prior, shifted so the trapezoid integral of exp(values) over the grid is 1.
// The grid must cover the posterior mass; an endpoint-to-peak density ratio
// above 1e-4 reports GridTooNarrow.
LogCurve grid_profile_posterior(const ScalarSample& sample, const MeanPrior& prior,
                                const std::vector<double>& grid);

// Exact conjugate Gibbs for the joint proportional to
// p(y|mu,sigma2) * p(mu) / sigma2:
//   sigma2 | mu ~ Inverse-Gamma(n/2, S(mu)/2)
//   mu | sigma2 ~ Normal(mean, 1/prec), prec = n/sigma2 + 1/tau2
// (flat prior: prec = n/sigma2, mean = ybar).
PosteriorDraws gibbs_profile_posterior(const ScalarSample& sample, const MeanPrior& prior,
                                       int iterations, int burn_in, std::uint64_t seed,
                                       double init_mu, double init_sigma2);

// Histogram density of the mu draws over bins between consecutive grid
// points, evaluated at bin centers; frequencies are relative to the draws
// that land inside the grid range, so the bin masses sum to 1. Empty bins
// are flagged unusable rather than carrying -inf.
LogCurve summarize_draws(const PosteriorDraws& draws, const std::vector<double>& grid);

// loc +/- spread * scale of the flat-prior t reduction, `points` values.
std::vector<double> default_posterior_grid(const ScalarSample& sample, std::size_t points = 2001,
                                           double spread = 8.0);

// Columns: iteration, mu, sigma2. Iteration numbers continue the chain count
// (first retained draw is burn_in + 1).
std::string draws_to_csv(const PosteriorDraws& draws);

inline constexpr int kDefaultGibbsIterations = 55000;
inline constexpr int kDefaultGibbsBurnIn = 5000;

}  // namespace proflik
