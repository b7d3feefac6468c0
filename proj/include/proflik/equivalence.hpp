#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "proflik/curve.hpp"
#include "proflik/parallel.hpp"
#include "proflik/samples.hpp"

namespace proflik {

// Result of comparing a profile and a marginal log curve over one grid.
// pass is always sup_abs_discrepancy <= tolerance; excluded_indices lists
// grid points that neither curve could evaluate (degenerate S(mu) etc.).
struct EquivalenceReport {
    std::string model_tag;
    LogCurve profile;   // anchored
    LogCurve marginal;  // anchored
    std::size_t anchor_index = 0;
    std::size_t argmax_profile = 0;
    std::size_t argmax_marginal = 0;
    double offset_estimate = 0.0;  // mean(marginal - profile) before anchoring
    double sup_abs_discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::vector<std::size_t> excluded_indices;
};

nlohmann::ordered_json report_to_json(const EquivalenceReport& report);

// Anchors both curves at `anchor` (which must be usable on both) and takes
// the sup of |marginal - profile| over points usable on both.
EquivalenceReport compare_curves(const LogCurve& profile, const LogCurve& marginal,
                                 std::size_t anchor, double tolerance);

enum class VerifyMode { Analytic, Numeric };

// Numeric-mode knobs. The multivariate marginal has no one-dimensional
// quadrature route, so its numeric mode is importance sampling and the
// tolerance becomes 3x the largest anchored standard error.
struct VerifySettings {
    VerifyMode mode = VerifyMode::Analytic;
    double tolerance = 0.0;  // 0 -> mode default
    int mc_draws = 20000;
    std::uint64_t seed = 1;
    Exec exec = Exec::Parallel;
};

EquivalenceReport verify_normal(const ScalarSample& sample, const std::vector<double>& grid,
                                const VerifySettings& settings = {});

EquivalenceReport verify_mvn(const VectorSample& sample,
                             const std::vector<std::vector<double>>& grid,
                             const VerifySettings& settings = {});

EquivalenceReport verify_regression(const RegressionSample& sample,
                                    const std::vector<std::vector<double>>& grid,
                                    const VerifySettings& settings = {});

// ybar +/- spread * s/sqrt(n), `points` equally spaced values.
std::vector<double> default_normal_grid(const ScalarSample& sample, std::size_t points = 201,
                                        double spread = 5.0);

}  // namespace proflik
