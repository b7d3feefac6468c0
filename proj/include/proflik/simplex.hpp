#pragma once

#include <functional>
#include <vector>

namespace proflik {

struct SimplexOptions {
    int max_iter_per_dim = 500;
    int max_restarts = 5;
    double initial_step = 0.5;
    // Converged when the simplex value spread is below value_tol and the
    // coordinate diameter is below coord_tol * (1 + max|x_i|). The diameter
    // criterion is what makes the stationarity check below attainable.
    double value_tol = 1e-10;
    double coord_tol = 1e-7;
    // Post-check: central-difference gradient norm <= grad_tol * (1 + |f|).
    double grad_tol = 1e-6;
};

struct SimplexResult {
    std::vector<double> argmax;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    int restarts = 0;
};

// Derivative-free maximization with the standard reflect/expand/contract/
// shrink coefficients (1, 2, 0.5, 0.5) in unconstrained coordinates.
// Non-finite objective values are treated as -inf; if every evaluation is
// -inf the domain has been escaped. Restarts use deterministic jitter, so the
// whole search is reproducible.
SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& init, const SimplexOptions& opts = {});

}  // namespace proflik
