#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "proflik/monte_carlo.hpp"
#include "proflik/nuisance_model.hpp"
#include "proflik/quadrature.hpp"
#include "proflik/simplex.hpp"

namespace proflik {

struct ProfileResult {
    double log_value = 0.0;
    std::vector<double> argmax;  // original nuisance coordinates
    double grad_norm = 0.0;
    int iterations = 0;
    int restarts = 0;
};

// sup over the nuisance of the exact log density at fixed interest, by
// derivative-free simplex search in unconstrained coordinates.
ProfileResult profile_numeric(const NuisanceModel& model, const Dataset& data,
                              const std::vector<double>& interest, const std::vector<double>& init,
                              const SimplexOptions& opts = {});

// log of the integral of density(interest, x) * exp(log_prior(x)) dx over a
// one-dimensional nuisance, by adaptive panel quadrature on the transformed
// axis (t = ln x for positive domains, Jacobian included).
double marginal_numeric(const NuisanceModel& model, const Dataset& data,
                        const std::vector<double>& interest,
                        const std::function<double(const std::vector<double>&)>& log_prior,
                        const QuadratureSpec& spec = {});

// Importance-sampling version for matrix (or otherwise awkward) nuisances.
ImportanceResult marginal_mc(const NuisanceModel& model, const Dataset& data,
                             const std::vector<double>& interest,
                             const std::function<double(const std::vector<double>&)>& log_prior,
                             const Proposal& proposal, int draws, std::uint64_t seed,
                             Exec exec = Exec::Parallel);

}  // namespace proflik
