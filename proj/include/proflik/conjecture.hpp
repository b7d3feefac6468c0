#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "proflik/nuisance_model.hpp"
#include "proflik/parallel.hpp"

namespace proflik {

// One exponential family wired for the discrepancy scan: exact model, data
// sampler, interest-estimate hooks, and the conditional Jeffreys log prior of
// the nuisance at fixed interest (any additive constant is irrelevant after
// anchoring).
struct FamilySpec {
    std::string tag;
    NuisanceModel model;
    int min_n = 2;
    // Open lower bound of the interest domain, if any (gamma mean: 0).
    std::optional<double> interest_lower_bound;

    std::function<Dataset(const std::vector<double>& interest,
                          const std::vector<double>& nuisance, int n, std::uint64_t seed)>
        sample_data;
    std::function<double(const Dataset&)> interest_mle;
    std::function<double(const Dataset&)> interest_se;  // sample SD / sqrt(n)
    std::function<double(const std::vector<double>& interest,
                         const std::vector<double>& nuisance)>
        log_jeffreys_nuisance;
};

FamilySpec make_normal_control();
FamilySpec make_gamma_mean_shape();

// Interest grid for one cell: centered at the MLE, +/- se_span standard
// errors, clamped away from any open lower bound. explicit_grid overrides
// the construction entirely (used by the scale-equivariance check).
struct GridSpec {
    std::size_t points = 41;
    double se_span = 4.0;
    std::optional<std::vector<double>> explicit_grid;
};

struct DiscrepancyResult {
    double sup_discrepancy = 0.0;
    int excluded_points = 0;
    std::size_t grid_size = 0;
};

// D_n for one dataset: sup over the grid of |anchored numeric profile -
// anchored numeric Jeffreys marginal| of the interest parameter. Grid points
// where either route fails are excluded (and counted); the anchor is the
// profile argmax over the surviving points.
DiscrepancyResult discrepancy_for_data(const FamilySpec& family, const Dataset& data,
                                       const GridSpec& grid_spec);

// Samples a dataset of size n from the family at the given true parameters,
// then measures D_n on it.
DiscrepancyResult discrepancy_once(const FamilySpec& family,
                                   const std::vector<double>& true_interest,
                                   const std::vector<double>& true_nuisance, int n,
                                   std::uint64_t seed, const GridSpec& grid_spec);

struct DiscrepancyRow {
    std::string family;
    int n = 0;
    int replicate = 0;
    std::uint64_t seed = 0;
    std::size_t grid_points = 0;
    double se_span = 0.0;
    int excluded_points = 0;
    double sup_discrepancy = 0.0;  // meaningful only when ok
    bool ok = false;
    std::string status;  // "ok" or the error code
};

struct DiscrepancySummary {
    int n = 0;
    int cells = 0;
    int failures = 0;
    double median = 0.0;
    double upper_quartile = 0.0;
};

struct DiscrepancyTable {
    std::vector<DiscrepancyRow> rows;          // ordered by (n, replicate)
    std::vector<DiscrepancySummary> summaries;  // ordered by n
};

// Full scan over n values and replicates; cell seeds derive from the master
// seed by linear cell index, so the table is identical for any thread count.
// Aborts (ScanFailure) if more than half the cells fail.
DiscrepancyTable discrepancy_scan(const FamilySpec& family,
                                  const std::vector<double>& true_interest,
                                  const std::vector<double>& true_nuisance,
                                  const std::vector<int>& n_list, int replicates,
                                  std::uint64_t master_seed, const GridSpec& grid_spec,
                                  Exec exec = Exec::Parallel);

std::string table_to_csv(const DiscrepancyTable& table);
nlohmann::ordered_json summary_to_json(const DiscrepancyTable& table);

}  // namespace proflik
