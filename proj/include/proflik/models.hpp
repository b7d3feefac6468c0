#pragma once

#include "proflik/nuisance_model.hpp"

namespace proflik {

// interest = {mu}, nuisance = {sigma2}. Exact N(mu, sigma2) log likelihood.
NuisanceModel scalar_normal_model();

// interest = mu (d-vector), nuisance = packed Sigma. Exact N_d log likelihood.
NuisanceModel mvn_model(int d);

// interest = beta (q-vector), nuisance = {sigma2}.
NuisanceModel regression_model(int q);

// Gamma observations parameterized by mean mu (interest) and shape alpha
// (nuisance), rate alpha/mu. Fisher information of alpha at fixed mu is
// trigamma(alpha) - 1/alpha per observation.
NuisanceModel gamma_mean_shape_model();

}  // namespace proflik
