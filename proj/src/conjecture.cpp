#include "proflik/conjecture.hpp"

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "proflik/curve.hpp"
#include "proflik/engine.hpp"
#include "proflik/equivalence.hpp"
#include "proflik/errors.hpp"
#include "proflik/fisher.hpp"
#include "proflik/format.hpp"
#include "proflik/math.hpp"
#include "proflik/models.hpp"

namespace proflik {
namespace {

int dataset_size(const Dataset& data) {
    return std::visit([](const auto& s) { return s.n(); }, data);
}

double scalar_mean(const Dataset& data) {
    const auto* s = std::get_if<ScalarSample>(&data);
    if (!s) fail(ErrorCode::InvalidInput, "family expects univariate data");
    return s->mean();
}

double scalar_se(const Dataset& data) {
    const auto* s = std::get_if<ScalarSample>(&data);
    if (!s) fail(ErrorCode::InvalidInput, "family expects univariate data");
    return std::sqrt(s->sample_variance() / s->n());
}

std::function<double(const std::vector<double>&, const std::vector<double>&)>
analytic_jeffreys(const NuisanceModel& model) {
    return [model](const std::vector<double>& interest, const std::vector<double>& nuisance) {
        return jeffreys_log_prior_numeric(model, interest, nuisance, FisherMethod::Analytic);
    };
}

std::vector<double> build_grid(const FamilySpec& family, const Dataset& data,
                               const GridSpec& spec) {
    if (spec.explicit_grid) {
        const auto& g = *spec.explicit_grid;
        if (g.size() < 2) fail(ErrorCode::InvalidInput, "explicit grid needs at least 2 points");
        for (std::size_t i = 0; i + 1 < g.size(); ++i)
            if (!(g[i] < g[i + 1]))
                fail(ErrorCode::InvalidInput, "explicit grid must be strictly increasing");
        return g;
    }
    if (spec.points < 41) fail(ErrorCode::InvalidInput, "need at least 41 grid points");
    if (!(spec.se_span > 0.0)) fail(ErrorCode::InvalidInput, "se_span must be positive");

    const double center = family.interest_mle(data);
    const double se = family.interest_se(data);
    if (!std::isfinite(center) || !std::isfinite(se) || !(se > 0.0))
        fail(ErrorCode::DegenerateSample, "interest estimate or standard error degenerate");

    double lo = center - spec.se_span * se;
    const double hi = center + spec.se_span * se;
    if (family.interest_lower_bound) {
        // Keep the grid inside the open domain: come no closer to the bound
        // than 1% of the bound-to-center distance. Scales with the data.
        const double b = *family.interest_lower_bound;
        lo = std::max(lo, b + 0.01 * (center - b));
    }
    if (!(lo < hi)) fail(ErrorCode::InvalidInput, "grid collapsed to a point");
    return linspace(lo, hi, spec.points);
}

}  // namespace

FamilySpec make_normal_control() {
    FamilySpec spec;
    spec.tag = "normal-control";
    spec.model = scalar_normal_model();
    spec.min_n = 2;

    spec.sample_data = [](const std::vector<double>& interest,
                          const std::vector<double>& nuisance, int n,
                          std::uint64_t seed) -> Dataset {
        Rng rng(seed);
        const double sd = std::sqrt(nuisance[0]);
        std::vector<double> y(n);
        for (double& v : y) v = interest[0] + sd * rng.normal();
        return ScalarSample(std::move(y));
    };
    spec.interest_mle = scalar_mean;
    spec.interest_se = scalar_se;
    spec.log_jeffreys_nuisance = analytic_jeffreys(spec.model);
    return spec;
}

FamilySpec make_gamma_mean_shape() {
    FamilySpec spec;
    spec.tag = "gamma-mean-shape";
    spec.model = gamma_mean_shape_model();
    spec.min_n = 2;
    spec.interest_lower_bound = 0.0;

    spec.sample_data = [](const std::vector<double>& interest,
                          const std::vector<double>& nuisance, int n,
                          std::uint64_t seed) -> Dataset {
        Rng rng(seed);
        const double mu = interest[0];
        const double alpha = nuisance[0];
        std::vector<double> y(n);
        for (double& v : y) v = rng.gamma(alpha, mu / alpha);
        return ScalarSample(std::move(y));
    };
    spec.interest_mle = scalar_mean;
    spec.interest_se = scalar_se;
    spec.log_jeffreys_nuisance = analytic_jeffreys(spec.model);
    return spec;
}

DiscrepancyResult discrepancy_for_data(const FamilySpec& family, const Dataset& data,
                                       const GridSpec& grid_spec) {
    const NuisanceModel& model = family.model;
    if (model.nuisance_dim == 0)
        fail(ErrorCode::InvalidInput, "family has no nuisance parameter");
    if (model.interest_dim != 1)
        fail(ErrorCode::InvalidInput, "scan handles scalar interest parameters");
    if (dataset_size(data) < family.min_n)
        fail(ErrorCode::TooFewObservations, "dataset below family minimum");

    const std::vector<double> grid = build_grid(family, data, grid_spec);

    std::vector<double> profile(grid.size(), kNegInf), marginal(grid.size(), kNegInf);
    std::vector<std::uint8_t> usable(grid.size(), 0);
    int excluded = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::vector<double> interest{grid[i]};
        try {
            profile[i] =
                profile_numeric(model, data, interest, model.init_nuisance(data, interest))
                    .log_value;
            const auto prior = [&](const std::vector<double>& nuisance) {
                return family.log_jeffreys_nuisance(interest, nuisance);
            };
            marginal[i] = marginal_numeric(model, data, interest, prior);
            usable[i] = 1;
        } catch (const Error&) {
            ++excluded;
        }
    }

    const LogCurve profile_curve = LogCurve::scalar(grid, std::move(profile), usable);
    const LogCurve marginal_curve = LogCurve::scalar(grid, std::move(marginal), usable);
    const EquivalenceReport report =
        compare_curves(profile_curve, marginal_curve, argmax_usable(profile_curve), 0.0);
    return DiscrepancyResult{report.sup_abs_discrepancy, excluded, grid.size()};
}

DiscrepancyResult discrepancy_once(const FamilySpec& family,
                                   const std::vector<double>& true_interest,
                                   const std::vector<double>& true_nuisance, int n,
                                   std::uint64_t seed, const GridSpec& grid_spec) {
    if (n < family.min_n) fail(ErrorCode::TooFewObservations, "n below family minimum");
    const Dataset data = family.sample_data(true_interest, true_nuisance, n, seed);
    return discrepancy_for_data(family, data, grid_spec);
}

DiscrepancyTable discrepancy_scan(const FamilySpec& family,
                                  const std::vector<double>& true_interest,
                                  const std::vector<double>& true_nuisance,
                                  const std::vector<int>& n_list, int replicates,
                                  std::uint64_t master_seed, const GridSpec& grid_spec,
                                  Exec exec) {
    if (n_list.empty()) fail(ErrorCode::InvalidInput, "empty n list");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
        if (!(n_list[i] < n_list[i + 1]))
            fail(ErrorCode::InvalidInput, "n list must be strictly increasing");
    for (int n : n_list)
        if (n < family.min_n) fail(ErrorCode::InvalidInput, "n below family minimum");
    if (replicates < 1) fail(ErrorCode::InvalidInput, "need at least 1 replicate");

    const std::size_t cells = n_list.size() * static_cast<std::size_t>(replicates);
    DiscrepancyTable table;
    table.rows.resize(cells);

    parallel_for(
        cells,
        [&](std::size_t k) {
            const int n = n_list[k / replicates];
            const int r = static_cast<int>(k % replicates);
            DiscrepancyRow row;
            row.family = family.tag;
            row.n = n;
            row.replicate = r;
            row.seed = derive_seed(master_seed, k);
            row.se_span = grid_spec.explicit_grid ? 0.0 : grid_spec.se_span;
            try {
                const DiscrepancyResult res =
                    discrepancy_once(family, true_interest, true_nuisance, n, row.seed, grid_spec);
                row.grid_points = res.grid_size;
                row.excluded_points = res.excluded_points;
                row.sup_discrepancy = res.sup_discrepancy;
                row.ok = true;
                row.status = "ok";
            } catch (const Error& e) {
                row.grid_points =
                    grid_spec.explicit_grid ? grid_spec.explicit_grid->size() : grid_spec.points;
                row.status = to_string(e.code());
            }
            table.rows[k] = std::move(row);
        },
        exec);

    std::size_t failures = 0;
    for (const auto& row : table.rows)
        if (!row.ok) ++failures;
    if (2 * failures > cells)
        fail(ErrorCode::ScanFailure, "more than half of the scan cells failed");

    for (std::size_t i = 0; i < n_list.size(); ++i) {
        DiscrepancySummary s;
        s.n = n_list[i];
        s.cells = replicates;
        std::vector<double> ok_values;
        for (int r = 0; r < replicates; ++r) {
            const DiscrepancyRow& row = table.rows[i * replicates + r];
            if (row.ok)
                ok_values.push_back(row.sup_discrepancy);
            else
                ++s.failures;
        }
        if (ok_values.empty()) {
            s.median = std::numeric_limits<double>::quiet_NaN();
            s.upper_quartile = std::numeric_limits<double>::quiet_NaN();
        } else {
            s.median = median(ok_values);
            s.upper_quartile = quantile(ok_values, 0.75);
        }
        table.summaries.push_back(s);
    }
    return table;
}

std::string table_to_csv(const DiscrepancyTable& table) {
    std::string out =
        "family,n,replicate,seed,grid_points,se_span,excluded_points,sup_discrepancy,status\n";
    for (const auto& row : table.rows) {
        out += row.family;
        out += ',' + std::to_string(row.n);
        out += ',' + std::to_string(row.replicate);
        out += ',' + std::to_string(row.seed);
        out += ',' + std::to_string(row.grid_points);
        out += ',' + format_double(row.se_span);
        out += ',' + std::to_string(row.excluded_points);
        out += ',';
        if (row.ok) out += format_double(row.sup_discrepancy);
        out += ',' + row.status;
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json summary_to_json(const DiscrepancyTable& table) {
    nlohmann::ordered_json j;
    j["family"] = table.rows.empty() ? "" : table.rows.front().family;
    int failures = 0;
    for (const auto& row : table.rows)
        if (!row.ok) ++failures;
    j["cells"] = table.rows.size();
    j["failures"] = failures;
    auto& per_n = j["per_n"] = nlohmann::ordered_json::array();
    for (const auto& s : table.summaries) {
        nlohmann::ordered_json e;
        e["n"] = s.n;
        e["cells"] = s.cells;
        e["failures"] = s.failures;
        e["median"] = s.median;
        e["upper_quartile"] = s.upper_quartile;
        per_n.push_back(std::move(e));
    }
    return j;
}

}  // namespace proflik
