#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "proflik/nuisance_model.hpp"
#include "proflik/parallel.hpp"

namespace proflik {

enum class FisherMethod { Analytic, MonteCarlo };

// Expected per-observation Fisher information of the nuisance block at fixed
// interest, in the original nuisance coordinates. The Monte Carlo path
// averages the negative second central difference of the log density over
// simulated size-1 datasets drawn at the evaluation point.
Eigen::MatrixXd fisher_info_nuisance(const NuisanceModel& model,
                                     const std::vector<double>& interest,
                                     const std::vector<double>& nuisance, FisherMethod method,
                                     std::uint64_t seed = 0, int reps = 100000,
                                     Exec exec = Exec::Parallel);

// 0.5 * ln det of the above; the numeric route to the Jeffreys prior.
double jeffreys_log_prior_numeric(const NuisanceModel& model, const std::vector<double>& interest,
                                  const std::vector<double>& nuisance, FisherMethod method,
                                  std::uint64_t seed = 0, int reps = 100000,
                                  Exec exec = Exec::Parallel);

}  // namespace proflik
