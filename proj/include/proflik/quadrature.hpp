#pragma once

#include <functional>

namespace proflik {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_log_tol = 1e-12;
    int max_subdivisions = 200;
    int max_expansions = 60;

    void validate() const;
};

struct QuadratureResult {
    double log_integral = 0.0;
    double rel_error_estimate = 0.0;
    int panels = 0;
    int expansions = 0;
    int subdivisions = 0;
};

// Integrates exp(log_f) over the whole real axis: Gauss-Kronrod 7-15 panels,
// accumulated in log space via log-sum-exp so the integrand may be far below
// double range. Starts from [center-1, center+1] and doubles outward until
// tail panels contribute < 1e-12 relative, then subdivides the worst panel
// until the error estimate meets rel_tol. Fully deterministic for a fixed
// spec.
QuadratureResult integrate_log_adaptive(const std::function<double(double)>& log_f, double center,
                                        const QuadratureSpec& spec = {});

}  // namespace proflik
