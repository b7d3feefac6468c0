#include "proflik/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "proflik/closed_forms.hpp"
#include "proflik/errors.hpp"
#include "proflik/format.hpp"
#include "proflik/math.hpp"
#include "proflik/parallel.hpp"
#include "proflik/rng.hpp"

namespace proflik {
namespace {

// Tail-coverage proxy: if the posterior density at a grid endpoint is not
// tiny relative to the peak, the trapezoid normalization misses real mass.
constexpr double kEndpointDensityRatio = 1e-4;

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 2) fail(ErrorCode::InvalidInput, "need at least 2 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            fail(ErrorCode::InvalidInput, "grid must be strictly increasing");
}

}  // namespace

MeanPrior MeanPrior::normal(double m0, double tau2) {
    if (!(tau2 > 0.0)) fail(ErrorCode::InvalidInput, "prior variance must be positive");
    return MeanPrior{false, m0, tau2};
}

double MeanPrior::log_density(double mu) const {
    if (is_flat) return 0.0;
    const double z = mu - m0;
    return -0.5 * (kLogTwoPi + std::log(tau2)) - z * z / (2.0 * tau2);
}

std::string MeanPrior::tag() const {
    if (is_flat) return "flat";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "normal(%g,%g)", m0, tau2);
    return buf;
}

LogCurve grid_profile_posterior(const ScalarSample& sample, const MeanPrior& prior,
                                const std::vector<double>& grid) {
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "need n >= 2");
    if (!(sample.sample_variance() > 0.0))
        fail(ErrorCode::DegenerateSample, "all observations equal");
    check_grid(grid);

    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        values[i] = log_profile_normal(sample, grid[i]) + prior.log_density(grid[i]);
    });

    const double peak = *std::max_element(values.begin(), values.end());
    if (values.front() - peak > std::log(kEndpointDensityRatio) ||
        values.back() - peak > std::log(kEndpointDensityRatio))
        fail(ErrorCode::GridTooNarrow, "posterior density at a grid endpoint exceeds 1e-4 of peak");

    const double norm = log_trapezoid(grid, values);
    for (double& v : values) v -= norm;
    return LogCurve::scalar(grid, std::move(values));
}

PosteriorDraws gibbs_profile_posterior(const ScalarSample& sample, const MeanPrior& prior,
                                       int iterations, int burn_in, std::uint64_t seed,
                                       double init_mu, double init_sigma2) {
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "need n >= 2");
    if (burn_in < 0 || iterations <= burn_in)
        fail(ErrorCode::InvalidInput, "need iterations > burn_in >= 0");
    if (!std::isfinite(init_mu) || !(init_sigma2 > 0.0) || !std::isfinite(init_sigma2))
        fail(ErrorCode::InvalidInit, "init needs finite mu and sigma2 > 0");
    const double s2 = sample.sample_variance();
    if (!(s2 > 0.0))
        fail(ErrorCode::DegenerateSample,
             "all observations equal; the variance conditional degenerates");

    const double n = sample.n();
    const double ybar = sample.mean();
    const double base_ss = (n - 1.0) * s2;  // S(mu) = (n-1)s^2 + n(mu-ybar)^2

    Rng rng(seed);
    PosteriorDraws draws;
    draws.seed = seed;
    draws.iterations = iterations;
    draws.burn_in = burn_in;
    draws.prior_tag = prior.tag();
    draws.mu.reserve(iterations - burn_in);
    draws.sigma2.reserve(iterations - burn_in);

    double mu = init_mu;
    for (int t = 0; t < iterations; ++t) {
        const double dev = mu - ybar;
        const double sigma2 = rng.inverse_gamma(0.5 * n, 0.5 * (base_ss + n * dev * dev));

        double prec = n / sigma2;
        double mean = ybar;
        if (!prior.is_flat) {
            prec += 1.0 / prior.tau2;
            mean = (n * ybar / sigma2 + prior.m0 / prior.tau2) / prec;
        }
        mu = rng.normal(mean, std::sqrt(1.0 / prec));

        if (t >= burn_in) {
            draws.mu.push_back(mu);
            draws.sigma2.push_back(sigma2);
        }
    }
    return draws;
}

LogCurve summarize_draws(const PosteriorDraws& draws, const std::vector<double>& grid) {
    if (draws.retained() < 1000) fail(ErrorCode::TooFewDraws, "need at least 1000 retained draws");
    check_grid(grid);

    const std::size_t bins = grid.size() - 1;
    std::vector<std::size_t> counts(bins, 0);
    std::size_t inside = 0;
    for (double mu : draws.mu) {
        if (mu < grid.front() || mu > grid.back()) continue;
        std::size_t j =
            std::upper_bound(grid.begin(), grid.end(), mu) - grid.begin();
        if (j > 0) --j;
        if (j >= bins) j = bins - 1;  // mu == grid.back()
        ++counts[j];
        ++inside;
    }

    std::vector<double> centers(bins), values(bins, kNegInf);
    std::vector<std::uint8_t> usable(bins, 0);
    for (std::size_t j = 0; j < bins; ++j) {
        centers[j] = 0.5 * (grid[j] + grid[j + 1]);
        if (counts[j] == 0 || inside == 0) continue;
        const double width = grid[j + 1] - grid[j];
        values[j] = std::log(static_cast<double>(counts[j])) -
                    std::log(static_cast<double>(inside)) - std::log(width);
        usable[j] = 1;
    }
    return LogCurve::scalar(std::move(centers), std::move(values), std::move(usable));
}

std::vector<double> default_posterior_grid(const ScalarSample& sample, std::size_t points,
                                           double spread) {
    if (points < 2) fail(ErrorCode::InvalidInput, "need at least 2 grid points");
    const StudentTParams t = flat_prior_posterior_t(sample);
    return linspace(t.loc - spread * t.scale, t.loc + spread * t.scale, points);
}

std::string draws_to_csv(const PosteriorDraws& draws) {
    std::string out = "iteration,mu,sigma2\n";
    for (int i = 0; i < draws.retained(); ++i) {
        out += std::to_string(draws.burn_in + i + 1);
        out += ',';
        out += format_double(draws.mu[i]);
        out += ',';
        out += format_double(draws.sigma2[i]);
        out += '\n';
    }
    return out;
}

}  // namespace proflik
