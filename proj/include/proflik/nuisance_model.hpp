#pragma once

#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "proflik/rng.hpp"
#include "proflik/samples.hpp"

namespace proflik {

using Dataset = std::variant<ScalarSample, VectorSample, RegressionSample>;

enum class NuisanceDomain { Unconstrained, Positive, PositiveDefiniteMatrix };

// A parametric family split into interest and nuisance parameters. The log
// density is exact (all constants included) and works in the original
// nuisance coordinates: a plain vector for scalar nuisances, the packed lower
// triangle (row-major: (0,0),(1,0),(1,1),...) for matrix nuisances.
//
// Positive coordinates are optimized/integrated through t = ln(x); positive
// definite matrices through log-Cholesky coordinates (log diagonal, free
// off-diagonal), packed in the same lower-triangle order.
struct NuisanceModel {
    int interest_dim = 1;
    int nuisance_dim = 1;
    NuisanceDomain domain = NuisanceDomain::Positive;
    int matrix_dim = 0;  // set when domain == PositiveDefiniteMatrix

    std::function<double(const Dataset&, const std::vector<double>& interest,
                         const std::vector<double>& nuisance)>
        log_density;

    // Optional hooks.
    // Per-observation expected Fisher information of the nuisance block at
    // fixed interest, in the original nuisance coordinates.
    std::function<Eigen::MatrixXd(const std::vector<double>& interest,
                                  const std::vector<double>& nuisance)>
        analytic_nuisance_fisher;

    // Single-observation dataset sampler (Monte Carlo Fisher path).
    std::function<Dataset(const std::vector<double>& interest, const std::vector<double>& nuisance,
                          Rng& rng)>
        sample_one;

    // Reasonable nuisance starting point for optimization/quadrature.
    std::function<std::vector<double>(const Dataset&, const std::vector<double>& interest)>
        init_nuisance;
};

// Packing helpers for matrix nuisances.
std::vector<double> pack_symmetric(const Eigen::MatrixXd& m);
Eigen::MatrixXd unpack_symmetric(const std::vector<double>& v, int d);

// Original <-> unconstrained coordinates for the model's declared domain.
std::vector<double> to_unconstrained(const NuisanceModel& model, const std::vector<double>& x);
std::vector<double> from_unconstrained(const NuisanceModel& model, const std::vector<double>& t);

}  // namespace proflik
