#include "proflik/equivalence.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "proflik/closed_forms.hpp"
#include "proflik/engine.hpp"
#include "proflik/errors.hpp"
#include "proflik/math.hpp"
#include "proflik/models.hpp"

namespace proflik {
namespace {

struct PointEval {
    double profile = kNegInf;
    double marginal = kNegInf;
    double marginal_se = 0.0;
    std::uint8_t ok = 0;
};

// Runs eval(i) over the grid, turning library errors at single points into
// exclusions. Slots are independent, so the parallel path stays deterministic.
template <class F>
std::vector<PointEval> evaluate_grid(std::size_t n, F&& eval, Exec exec) {
    std::vector<PointEval> out(n);
    parallel_for(
        n,
        [&](std::size_t i) {
            try {
                PointEval e = eval(i);
                e.ok = 1;
                out[i] = e;
            } catch (const Error&) {
                out[i] = PointEval{};
            }
        },
        exec);
    return out;
}

LogCurve build_curve(const std::vector<std::vector<double>>& grid,
                     const std::vector<PointEval>& evals, bool marginal_side) {
    std::vector<double> values(evals.size(), kNegInf);
    std::vector<std::uint8_t> usable(evals.size(), 0);
    for (std::size_t i = 0; i < evals.size(); ++i) {
        if (!evals[i].ok) continue;
        values[i] = marginal_side ? evals[i].marginal : evals[i].profile;
        usable[i] = 1;
    }
    return LogCurve(grid, std::move(values), std::move(usable));
}

std::vector<std::vector<double>> lift_scalar_grid(const std::vector<double>& grid) {
    std::vector<std::vector<double>> out;
    out.reserve(grid.size());
    for (double g : grid) out.push_back({g});
    return out;
}

nlohmann::ordered_json grid_point_json(const std::vector<double>& point) {
    if (point.size() == 1) return point[0];
    return nlohmann::ordered_json(point);
}

nlohmann::ordered_json values_json(const LogCurve& curve) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.usable[i])
            arr.push_back(curve.values[i]);
        else
            arr.push_back(nullptr);
    }
    return arr;
}

EquivalenceReport finish_report(std::string tag, const LogCurve& profile, const LogCurve& marginal,
                                double tolerance) {
    EquivalenceReport report =
        compare_curves(profile, marginal, argmax_usable(profile), tolerance);
    report.model_tag = std::move(tag);
    return report;
}

}  // namespace

EquivalenceReport compare_curves(const LogCurve& profile, const LogCurve& marginal,
                                 std::size_t anchor, double tolerance) {
    if (profile.size() != marginal.size())
        fail(ErrorCode::GridMismatch, "curves have different grid sizes");
    if (profile.dim() != marginal.dim())
        fail(ErrorCode::GridMismatch, "curves have different grid dimensions");
    for (std::size_t i = 0; i < profile.size(); ++i)
        for (int k = 0; k < profile.dim(); ++k)
            if (profile.grid[i][k] != marginal.grid[i][k])
                fail(ErrorCode::GridMismatch, "grids differ at index " + std::to_string(i));
    if (anchor >= profile.size()) fail(ErrorCode::InvalidInput, "anchor index out of range");
    if (!profile.usable[anchor] || !marginal.usable[anchor])
        fail(ErrorCode::InvalidInput, "anchor point is not usable on both curves");

    CompensatedSum offset;
    std::size_t both = 0;
    std::vector<std::size_t> excluded;
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (profile.usable[i] && marginal.usable[i]) {
            offset.add(marginal.values[i] - profile.values[i]);
            ++both;
        } else {
            excluded.push_back(i);
        }
    }

    LogCurve anchored_profile = anchor_curve(profile, anchor);
    LogCurve anchored_marginal = anchor_curve(marginal, anchor);
    double sup = 0.0;
    for (std::size_t i = 0; i < profile.size(); ++i)
        if (profile.usable[i] && marginal.usable[i])
            sup = std::max(sup,
                           std::abs(anchored_marginal.values[i] - anchored_profile.values[i]));

    return EquivalenceReport{
        .model_tag = {},
        .profile = std::move(anchored_profile),
        .marginal = std::move(anchored_marginal),
        .anchor_index = anchor,
        .argmax_profile = argmax_usable(profile),
        .argmax_marginal = argmax_usable(marginal),
        .offset_estimate = offset.value() / static_cast<double>(both),
        .sup_abs_discrepancy = sup,
        .tolerance = tolerance,
        .pass = sup <= tolerance,
        .excluded_indices = std::move(excluded),
    };
}

nlohmann::ordered_json report_to_json(const EquivalenceReport& report) {
    nlohmann::ordered_json grid = nlohmann::ordered_json::array();
    for (const auto& point : report.profile.grid) grid.push_back(grid_point_json(point));

    nlohmann::ordered_json j;
    j["model"] = report.model_tag;
    j["grid"] = std::move(grid);
    j["profile"] = values_json(report.profile);
    j["marginal"] = values_json(report.marginal);
    j["anchor_index"] = report.anchor_index;
    j["argmax_profile"] = report.argmax_profile;
    j["argmax_marginal"] = report.argmax_marginal;
    j["offset_estimate"] = report.offset_estimate;
    j["sup_abs_discrepancy"] = report.sup_abs_discrepancy;
    j["tolerance"] = report.tolerance;
    j["pass"] = report.pass;
    j["excluded_indices"] = report.excluded_indices;
    return j;
}

EquivalenceReport verify_normal(const ScalarSample& sample, const std::vector<double>& grid,
                                const VerifySettings& settings) {
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "need n >= 2");
    const auto lifted = lift_scalar_grid(grid);

    std::vector<PointEval> evals;
    if (settings.mode == VerifyMode::Analytic) {
        evals = evaluate_grid(
            grid.size(),
            [&](std::size_t i) {
                PointEval e;
                e.profile = log_profile_normal(sample, grid[i]);
                e.marginal = log_marginal_normal_jeffreys(sample, grid[i]);
                return e;
            },
            settings.exec);
    } else {
        const NuisanceModel model = scalar_normal_model();
        const Dataset data = sample;
        const auto prior = [](const std::vector<double>& s) {
            return log_jeffreys_prior_variance(s[0]);
        };
        evals = evaluate_grid(
            grid.size(),
            [&](std::size_t i) {
                const std::vector<double> mu{grid[i]};
                PointEval e;
                e.profile =
                    profile_numeric(model, data, mu, model.init_nuisance(data, mu)).log_value;
                e.marginal = marginal_numeric(model, data, mu, prior);
                return e;
            },
            settings.exec);
    }

    const double tol = settings.tolerance > 0.0
                           ? settings.tolerance
                           : (settings.mode == VerifyMode::Analytic ? 1e-10 : 1e-5);
    return finish_report("normal", build_curve(lifted, evals, false),
                         build_curve(lifted, evals, true), tol);
}

EquivalenceReport verify_mvn(const VectorSample& sample,
                             const std::vector<std::vector<double>>& grid,
                             const VerifySettings& settings) {
    const int d = sample.d();
    if (sample.n() < d + 1) fail(ErrorCode::TooFewObservations, "need n >= d + 1");
    for (const auto& point : grid)
        if (static_cast<int>(point.size()) != d)
            fail(ErrorCode::InvalidInput, "grid point dimension does not match sample");

    std::vector<PointEval> evals;
    if (settings.mode == VerifyMode::Analytic) {
        evals = evaluate_grid(
            grid.size(),
            [&](std::size_t i) {
                const Eigen::Map<const Eigen::VectorXd> mu(grid[i].data(), d);
                PointEval e;
                e.profile = log_profile_mvn(sample, mu);
                e.marginal = log_marginal_mvn_jeffreys(sample, mu);
                return e;
            },
            settings.exec);
    } else {
        const NuisanceModel model = mvn_model(d);
        const Dataset data = sample;
        const auto prior = [d](const std::vector<double>& packed) {
            return log_jeffreys_prior_cov(unpack_symmetric(packed, d));
        };
        const double nu = sample.n() + 2;
        evals = evaluate_grid(
            grid.size(),
            [&](std::size_t i) {
                const Eigen::Map<const Eigen::VectorXd> mu(grid[i].data(), d);
                PointEval e;
                e.profile = profile_numeric(model, data, grid[i],
                                            model.init_nuisance(data, grid[i]))
                                .log_value;
                const Proposal proposal =
                    make_inverse_wishart_proposal(nu, scatter_matrix(sample, mu));
                const ImportanceResult mc =
                    marginal_mc(model, data, grid[i], prior, proposal, settings.mc_draws,
                                derive_seed(settings.seed, i), Exec::Serial);
                e.marginal = mc.log_value;
                e.marginal_se = mc.std_error;
                return e;
            },
            settings.exec);
    }

    const LogCurve profile = build_curve(grid, evals, false);
    const LogCurve marginal = build_curve(grid, evals, true);

    double tol = settings.tolerance;
    if (tol <= 0.0) {
        if (settings.mode == VerifyMode::Analytic) {
            tol = 1e-9;
        } else {
            // Anchoring subtracts the anchor estimate, so its Monte Carlo
            // error combines with each point's own.
            const std::size_t anchor = argmax_usable(profile);
            const double se0 = evals[anchor].marginal_se;
            double worst = 0.0;
            for (std::size_t i = 0; i < evals.size(); ++i) {
                if (!evals[i].ok || i == anchor) continue;
                worst = std::max(worst, std::hypot(evals[i].marginal_se, se0));
            }
            tol = 3.0 * worst;
        }
    }
    return finish_report("mvn", profile, marginal, tol);
}

EquivalenceReport verify_regression(const RegressionSample& sample,
                                    const std::vector<std::vector<double>>& grid,
                                    const VerifySettings& settings) {
    const int q = sample.q();
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "need n >= 2");
    if (Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(sample.X).rank() < q)
        fail(ErrorCode::RankDeficientDesign, "design matrix is rank deficient");
    for (const auto& point : grid)
        if (static_cast<int>(point.size()) != q)
            fail(ErrorCode::InvalidInput, "grid point dimension does not match design");

    std::vector<PointEval> evals;
    if (settings.mode == VerifyMode::Analytic) {
        evals = evaluate_grid(
            grid.size(),
            [&](std::size_t i) {
                const Eigen::Map<const Eigen::VectorXd> beta(grid[i].data(), q);
                PointEval e;
                e.profile = log_profile_regression(sample, beta);
                e.marginal = log_marginal_regression_jeffreys(sample, beta);
                return e;
            },
            settings.exec);
    } else {
        const NuisanceModel model = regression_model(q);
        const Dataset data = sample;
        const auto prior = [](const std::vector<double>& s) {
            return log_jeffreys_prior_variance(s[0]);
        };
        evals = evaluate_grid(
            grid.size(),
            [&](std::size_t i) {
                PointEval e;
                e.profile = profile_numeric(model, data, grid[i],
                                            model.init_nuisance(data, grid[i]))
                                .log_value;
                e.marginal = marginal_numeric(model, data, grid[i], prior);
                return e;
            },
            settings.exec);
    }

    const double tol = settings.tolerance > 0.0
                           ? settings.tolerance
                           : (settings.mode == VerifyMode::Analytic ? 1e-10 : 1e-5);
    return finish_report("regression", build_curve(grid, evals, false),
                         build_curve(grid, evals, true), tol);
}

std::vector<double> default_normal_grid(const ScalarSample& sample, std::size_t points,
                                        double spread) {
    if (sample.n() < 2) fail(ErrorCode::TooFewObservations, "need n >= 2");
    if (points < 2) fail(ErrorCode::InvalidInput, "need at least 2 grid points");
    const double s2 = sample.sample_variance();
    if (!(s2 > 0.0)) fail(ErrorCode::DegenerateSample, "sample variance is zero");
    const double half = spread * std::sqrt(s2 / sample.n());
    return linspace(sample.mean() - half, sample.mean() + half, points);
}

}  // namespace proflik
