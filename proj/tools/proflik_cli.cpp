// Command-line front end: data generation, equivalence verification,
// profile posteriors, and discrepancy scans. Exit codes: 0 success/pass,
// 1 equivalence failure, 2 usage or parse error, 3 computation error.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "proflik/closed_forms.hpp"
#include "proflik/conjecture.hpp"
#include "proflik/curve.hpp"
#include "proflik/engine.hpp"
#include "proflik/equivalence.hpp"
#include "proflik/errors.hpp"
#include "proflik/format.hpp"
#include "proflik/io.hpp"
#include "proflik/math.hpp"
#include "proflik/models.hpp"
#include "proflik/posterior.hpp"
#include "proflik/rng.hpp"

namespace {

using nlohmann::ordered_json;
using namespace proflik;

constexpr int kExitPass = 0;
constexpr int kExitEquivalenceFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

int usage_error(const std::string& message) {
    std::cerr << "usage error: " << message << "\n";
    return kExitUsage;
}

int computation_error(const Error& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return kExitComputation;
}

std::string sanitize_tag(const std::string& tag) {
    std::string out;
    bool pending = false;
    for (char c : tag) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (pending && !out.empty()) out += '_';
            pending = false;
            out += c;
        } else {
            pending = true;
        }
    }
    return out;
}

// --grid min,max,points
std::optional<std::vector<double>> parse_grid_spec(const std::vector<double>& raw,
                                                   std::string& error) {
    if (raw.empty()) return std::nullopt;
    if (raw.size() != 3) {
        error = "--grid needs min,max,points";
        return std::nullopt;
    }
    const double lo = raw[0], hi = raw[1];
    const double points_real = raw[2];
    const std::size_t points = static_cast<std::size_t>(points_real);
    if (!(lo < hi) || points_real != static_cast<double>(points) || points < 2) {
        error = "--grid needs min < max and integer points >= 2";
        return std::nullopt;
    }
    return linspace(lo, hi, points);
}

// ----------------------------------------------------------------- gen

struct GenConfig {
    std::string family = "normal";
    int n = 0;
    double mu = 0.0;
    double sigma2 = 1.0;
    double alpha = 1.5;
    std::uint64_t seed = 0;
    std::string out = "data.csv";
};

int run_gen(const GenConfig& cfg) {
    if (cfg.family == "gamma" && !(cfg.mu > 0.0))
        return usage_error("gamma family needs --mu > 0");

    Rng rng(cfg.seed);
    std::vector<double> y(cfg.n);
    if (cfg.family == "normal") {
        const double sd = std::sqrt(cfg.sigma2);
        for (double& v : y) v = cfg.mu + sd * rng.normal();
    } else {
        for (double& v : y) v = rng.gamma(cfg.alpha, cfg.mu / cfg.alpha);
    }

    try {
        write_text_file(cfg.out, scalar_to_csv(ScalarSample(std::move(y))));
    } catch (const Error& e) {
        return computation_error(e);
    }
    std::cout << "wrote " << cfg.n << " observations to " << cfg.out << "\n";
    return kExitPass;
}

// ----------------------------------------------------------------- verify

struct VerifyConfig {
    std::string model = "normal";
    std::string mode = "analytic";
    std::string input;
    std::vector<double> grid_raw;
    double tolerance = 0.0;
    int mc_draws = 20000;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = "report.json";
};

std::vector<std::vector<double>> axis_product(const std::vector<std::vector<double>>& axes) {
    std::vector<std::vector<double>> points{{}};
    for (const auto& axis : axes) {
        std::vector<std::vector<double>> next;
        next.reserve(points.size() * axis.size());
        for (const auto& p : points)
            for (double v : axis) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        points = std::move(next);
    }
    return points;
}

// 11 points per axis, +/- 5 standard errors of each mean coordinate.
std::vector<std::vector<double>> default_mvn_grid(const VectorSample& sample) {
    const int n = sample.n();
    if (n < 2) fail(ErrorCode::TooFewObservations, "need n >= 2");
    const Eigen::VectorXd mean = sample.mean();
    std::vector<std::vector<double>> axes;
    for (int j = 0; j < sample.d(); ++j) {
        const double var_j =
            (sample.rows.col(j).array() - mean[j]).square().sum() / (n - 1.0);
        if (!(var_j > 0.0)) fail(ErrorCode::DegenerateSample, "coordinate variance is zero");
        const double half = 5.0 * std::sqrt(var_j / n);
        axes.push_back(linspace(mean[j] - half, mean[j] + half, 11));
    }
    return axis_product(axes);
}

// 11 points per axis around the least-squares solution.
std::vector<std::vector<double>> default_regression_grid(const RegressionSample& sample) {
    const int n = sample.n();
    const int q = sample.q();
    const Eigen::LLT<Eigen::MatrixXd> llt(sample.X.transpose() * sample.X);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::RankDeficientDesign, "design matrix is rank deficient");
    const Eigen::VectorXd beta = llt.solve(sample.X.transpose() * sample.y);
    if (n <= q) fail(ErrorCode::TooFewObservations, "need n > q for a default grid");
    const double sigma2 = rss(sample, beta) / (n - q);
    if (!(sigma2 > 0.0)) fail(ErrorCode::DegenerateSample, "residuals are all zero");
    const Eigen::MatrixXd cov = sigma2 * llt.solve(Eigen::MatrixXd::Identity(q, q));
    std::vector<std::vector<double>> axes;
    for (int j = 0; j < q; ++j) {
        const double half = 5.0 * std::sqrt(cov(j, j));
        axes.push_back(linspace(beta[j] - half, beta[j] + half, 11));
    }
    return axis_product(axes);
}

int run_verify(const VerifyConfig& cfg) {
    std::string grid_error;
    const auto grid_override = parse_grid_spec(cfg.grid_raw, grid_error);
    if (!grid_error.empty()) return usage_error(grid_error);
    if (grid_override && cfg.model != "normal")
        return usage_error("--grid applies to --model normal only");

    VerifySettings settings;
    settings.mode = cfg.mode == "analytic" ? VerifyMode::Analytic : VerifyMode::Numeric;
    settings.tolerance = cfg.tolerance;
    settings.mc_draws = cfg.mc_draws;
    settings.seed = cfg.seed;
    if (cfg.model == "mvn" && settings.mode == VerifyMode::Numeric && !cfg.seed_given)
        return usage_error("--seed is required for --model mvn --mode numeric");

    EquivalenceReport report{.model_tag = {},
                             .profile = LogCurve({{0.0}}, {0.0}),
                             .marginal = LogCurve({{0.0}}, {0.0})};
    try {
        if (cfg.model == "normal") {
            const ScalarSample sample = read_scalar_csv(cfg.input);
            const std::vector<double> grid =
                grid_override ? *grid_override : default_normal_grid(sample);
            report = verify_normal(sample, grid, settings);
        } else if (cfg.model == "mvn") {
            const VectorSample sample = read_vector_csv(cfg.input);
            report = verify_mvn(sample, default_mvn_grid(sample), settings);
        } else {
            const RegressionSample sample = read_regression_csv(cfg.input);
            report = verify_regression(sample, default_regression_grid(sample), settings);
        }
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidInput) {
            std::cerr << "parse error: " << e.what() << "\n";
            return kExitUsage;
        }
        ordered_json j;
        j["error"] = to_string(e.code());
        j["what"] = e.what();
        try {
            write_text_file(cfg.out, dump(j));
        } catch (const Error&) {
        }
        return computation_error(e);
    }

    try {
        write_text_file(cfg.out, dump(report_to_json(report)));
    } catch (const Error& e) {
        return computation_error(e);
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << " sup discrepancy "
              << format_double(report.sup_abs_discrepancy) << " (tolerance "
              << format_double(report.tolerance) << ") -> " << cfg.out << "\n";
    return report.pass ? kExitPass : kExitEquivalenceFail;
}

// ----------------------------------------------------------------- posterior

struct PosteriorConfig {
    std::string input;
    std::string prior = "flat";
    std::vector<double> grid_raw;
    bool gibbs = false;
    int iters = kDefaultGibbsIterations;
    int burnin = kDefaultGibbsBurnIn;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string out = "posterior.json";
    std::string draws_out = "draws.csv";
};

bool parse_priors(const std::string& text, std::vector<MeanPrior>& priors) {
    if (text == "flat") {
        priors = {MeanPrior::flat()};
        return true;
    }
    if (text == "all") {
        priors = {MeanPrior::flat(), MeanPrior::normal(0.0, 1.0), MeanPrior::normal(0.0, 4.0)};
        return true;
    }
    double m0 = 0.0, tau2 = 0.0;
    if (std::sscanf(text.c_str(), "normal:%lf,%lf", &m0, &tau2) == 2 && tau2 > 0.0) {
        priors = {MeanPrior::normal(m0, tau2)};
        return true;
    }
    return false;
}

std::string draws_path(const PosteriorConfig& cfg, const MeanPrior& prior, bool multiple) {
    if (!multiple) return cfg.draws_out;
    const std::string base = cfg.draws_out;
    const auto dot = base.rfind('.');
    const std::string stem = dot == std::string::npos ? base : base.substr(0, dot);
    const std::string ext = dot == std::string::npos ? "" : base.substr(dot);
    return stem + "." + sanitize_tag(prior.tag()) + ext;
}

int run_posterior(const PosteriorConfig& cfg) {
    std::vector<MeanPrior> priors;
    if (!parse_priors(cfg.prior, priors))
        return usage_error("--prior must be flat, all, or normal:m0,tau2");
    std::string grid_error;
    const auto grid_override = parse_grid_spec(cfg.grid_raw, grid_error);
    if (!grid_error.empty()) return usage_error(grid_error);
    if (cfg.gibbs && !cfg.seed_given) return usage_error("--gibbs requires --seed");

    try {
        const ScalarSample sample = read_scalar_csv(cfg.input);

        std::vector<double> grid;
        try {
            grid = grid_override ? *grid_override : default_posterior_grid(sample);
        } catch (const Error& e) {
            return computation_error(e);
        }

        ordered_json curves = ordered_json::array();
        for (std::size_t p = 0; p < priors.size(); ++p) {
            const MeanPrior& prior = priors[p];
            LogCurve curve = grid_profile_posterior(sample, prior, grid);
            const double check = log_trapezoid(grid, curve.values);
            ordered_json meta;
            meta["kind"] = "grid-posterior";
            meta["prior"] = prior.tag();
            meta["n"] = sample.n();
            meta["normalization_log_integral"] = check;
            curves.push_back(curve_to_json(curve, std::move(meta)));

            if (cfg.gibbs) {
                const double init_mu = sample.mean();
                const double init_sigma2 = sum_sq_dev(sample, init_mu) / sample.n();
                const PosteriorDraws draws = gibbs_profile_posterior(
                    sample, prior, cfg.iters, cfg.burnin, derive_seed(cfg.seed, p), init_mu,
                    init_sigma2);
                const std::string path = draws_path(cfg, prior, priors.size() > 1);
                write_text_file(path, draws_to_csv(draws));
                std::cout << "wrote " << draws.retained() << " draws to " << path << "\n";

                const LogCurve hist = summarize_draws(draws, grid);
                ordered_json hmeta;
                hmeta["kind"] = "gibbs-histogram";
                hmeta["prior"] = prior.tag();
                hmeta["draws"] = draws.retained();
                hmeta["seed"] = cfg.seed;
                curves.push_back(curve_to_json(hist, std::move(hmeta)));
            }
        }

        write_text_file(cfg.out, dump(curves));
        std::cout << "wrote " << curves.size() << " curve(s) to " << cfg.out << "\n";
    } catch (const Error& e) {
        if (e.code() == ErrorCode::InvalidInput) {
            std::cerr << "parse error: " << e.what() << "\n";
            return kExitUsage;
        }
        return computation_error(e);
    }
    return kExitPass;
}

// ----------------------------------------------------------------- conjecture

struct ConjectureConfig {
    std::string family = "normal-control";
    std::vector<int> ns;
    int reps = 20;
    std::uint64_t seed = 0;
    double mu = 0.0;
    bool mu_given = false;
    double sigma2 = 1.0;
    double alpha = 1.5;
    std::size_t points = 41;
    double span = 4.0;
    std::string out = "discrepancy.csv";
    std::string summary_out = "discrepancy_summary.json";
};

int run_conjecture(const ConjectureConfig& cfg) {
    FamilySpec family;
    std::vector<double> interest, nuisance;
    if (cfg.family == "normal-control") {
        family = make_normal_control();
        interest = {cfg.mu_given ? cfg.mu : 0.0};
        nuisance = {cfg.sigma2};
        if (!(cfg.sigma2 > 0.0)) return usage_error("--sigma2 must be positive");
    } else {
        family = make_gamma_mean_shape();
        interest = {cfg.mu_given ? cfg.mu : 2.0};
        nuisance = {cfg.alpha};
        if (!(interest[0] > 0.0) || !(cfg.alpha > 0.0))
            return usage_error("gamma family needs --mu > 0 and --alpha > 0");
    }

    GridSpec grid_spec;
    grid_spec.points = cfg.points;
    grid_spec.se_span = cfg.span;

    DiscrepancyTable table;
    try {
        table = discrepancy_scan(family, interest, nuisance, cfg.ns, cfg.reps, cfg.seed,
                                 grid_spec);
        write_text_file(cfg.out, table_to_csv(table));
        write_text_file(cfg.summary_out, dump(summary_to_json(table)));
    } catch (const Error& e) {
        return computation_error(e);
    }

    bool control_ok = true;
    for (const auto& s : table.summaries) {
        std::cout << "n=" << s.n << " median D_n=" << format_double(s.median)
                  << " upper quartile=" << format_double(s.upper_quartile)
                  << " failures=" << s.failures << "/" << s.cells << "\n";
        if (!(s.median <= 1e-5)) control_ok = false;
    }
    std::cout << "wrote " << table.rows.size() << " rows to " << cfg.out << " (summary "
              << cfg.summary_out << ")\n";

    if (cfg.family == "normal-control" && !control_ok) {
        std::cerr << "normal-control medians exceed 1e-5\n";
        return kExitEquivalenceFail;
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"profile and Jeffreys-marginal likelihood tools"};
    app.require_subcommand(1);

    GenConfig gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate a dataset CSV");
    cmd_gen->add_option("--family", gen.family, "normal or gamma")
        ->check(CLI::IsMember({"normal", "gamma"}));
    cmd_gen->add_option("--n", gen.n, "observations")->required()->check(CLI::PositiveNumber);
    cmd_gen->add_option("--mu", gen.mu, "mean");
    cmd_gen->add_option("--sigma2", gen.sigma2, "variance (normal)")->check(CLI::PositiveNumber);
    cmd_gen->add_option("--alpha", gen.alpha, "shape (gamma)")->check(CLI::PositiveNumber);
    cmd_gen->add_option("--seed", gen.seed, "RNG seed")->required();
    cmd_gen->add_option("-o,--output", gen.out, "output CSV path");

    VerifyConfig verify;
    CLI::App* cmd_verify =
        app.add_subcommand("verify", "profile vs Jeffreys-marginal equivalence report");
    cmd_verify->add_option("--model", verify.model, "normal, mvn, or regression")
        ->required()
        ->check(CLI::IsMember({"normal", "mvn", "regression"}));
    cmd_verify->add_option("--mode", verify.mode, "analytic or numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));
    cmd_verify->add_option("--input", verify.input, "dataset CSV")->required();
    cmd_verify->add_option("--grid", verify.grid_raw, "min,max,points (normal model)")
        ->delimiter(',');
    cmd_verify->add_option("--tol", verify.tolerance, "tolerance override")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--mc-draws", verify.mc_draws, "importance-sampling draws")
        ->check(CLI::Range(1000, 100000000));
    cmd_verify->add_option("--seed", verify.seed, "RNG seed (mvn numeric mode)");
    cmd_verify->add_option("-o,--output", verify.out, "report JSON path");

    PosteriorConfig posterior;
    CLI::App* cmd_posterior =
        app.add_subcommand("posterior", "profile posterior curves for the mean");
    cmd_posterior->add_option("--input", posterior.input, "scalar dataset CSV")->required();
    cmd_posterior->add_option("--prior", posterior.prior, "flat, normal:m0,tau2, or all");
    cmd_posterior->add_option("--grid", posterior.grid_raw, "min,max,points")->delimiter(',');
    cmd_posterior->add_flag("--gibbs", posterior.gibbs, "also run the Gibbs sampler");
    cmd_posterior->add_option("--iters", posterior.iters, "total Gibbs iterations")
        ->check(CLI::PositiveNumber);
    cmd_posterior->add_option("--burnin", posterior.burnin, "burn-in iterations")
        ->check(CLI::NonNegativeNumber);
    cmd_posterior->add_option("--seed", posterior.seed, "RNG seed (required with --gibbs)");
    cmd_posterior->add_option("-o,--output", posterior.out, "curves JSON path");
    cmd_posterior->add_option("--draws-out", posterior.draws_out, "draws CSV path");

    ConjectureConfig conjecture;
    CLI::App* cmd_conjecture =
        app.add_subcommand("conjecture", "sup-discrepancy scan over sample sizes");
    cmd_conjecture->add_option("--family", conjecture.family, "normal-control or gamma-mean-shape")
        ->check(CLI::IsMember({"normal-control", "gamma-mean-shape"}));
    cmd_conjecture->add_option("--ns", conjecture.ns, "sample sizes, ascending")
        ->required()
        ->delimiter(',');
    cmd_conjecture->add_option("--reps", conjecture.reps, "replicates per n")
        ->check(CLI::PositiveNumber);
    cmd_conjecture->add_option("--seed", conjecture.seed, "master seed")->required();
    cmd_conjecture->add_option("--mu", conjecture.mu, "true interest value");
    cmd_conjecture->add_option("--sigma2", conjecture.sigma2, "true variance (normal-control)");
    cmd_conjecture->add_option("--alpha", conjecture.alpha, "true shape (gamma)");
    cmd_conjecture->add_option("--points", conjecture.points, "grid points (>= 41)");
    cmd_conjecture->add_option("--span", conjecture.span, "grid half-width in standard errors")
        ->check(CLI::PositiveNumber);
    cmd_conjecture->add_option("-o,--output", conjecture.out, "table CSV path");
    cmd_conjecture->add_option("--summary-out", conjecture.summary_out, "summary JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    verify.seed_given = cmd_verify->count("--seed") > 0;
    posterior.seed_given = cmd_posterior->count("--seed") > 0;
    conjecture.mu_given = cmd_conjecture->count("--mu") > 0;

    if (app.got_subcommand(cmd_gen)) return run_gen(gen);
    if (app.got_subcommand(cmd_verify)) return run_verify(verify);
    if (app.got_subcommand(cmd_posterior)) return run_posterior(posterior);
    return run_conjecture(conjecture);
}
