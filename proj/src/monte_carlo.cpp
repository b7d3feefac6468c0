#include "proflik/monte_carlo.hpp"

#include <cmath>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"
#include "proflik/nuisance_model.hpp"

namespace proflik {

ImportanceResult importance_log_integral(
    const std::function<double(const std::vector<double>&)>& log_target, const Proposal& proposal,
    int draws, std::uint64_t seed, Exec exec) {
    if (draws < 1000) fail(ErrorCode::InvalidInput, "importance sampling needs draws >= 1000");

    std::vector<double> log_w(static_cast<std::size_t>(draws));
    parallel_for(
        static_cast<std::size_t>(draws),
        [&](std::size_t k) {
            Rng rng(derive_seed(seed, k));
            const std::vector<double> x = proposal.sample(rng);
            const double lt = log_target(x);
            const double lq = proposal.log_pdf(x);
            log_w[k] = std::isfinite(lt) ? lt - lq : kNegInf;
        },
        exec);

    // Stabilized weights a_k = w_k / max(w); reductions in index order.
    double m = kNegInf;
    for (double lw : log_w) m = std::max(m, lw);
    if (m == kNegInf) fail(ErrorCode::EffectiveSampleSizeTooLow, "all importance weights are zero");
    CompensatedSum sum_a, sum_a2;
    for (double lw : log_w) {
        const double a = std::exp(lw - m);
        sum_a.add(a);
        sum_a2.add(a * a);
    }
    const double n = static_cast<double>(draws);
    const double mean_a = sum_a.value() / n;
    const double ess = sum_a.value() * sum_a.value() / sum_a2.value();
    if (ess < 50.0)
        fail(ErrorCode::EffectiveSampleSizeTooLow,
             "effective sample size " + std::to_string(ess));

    CompensatedSum var_acc;
    for (double lw : log_w) {
        const double dev = std::exp(lw - m) - mean_a;
        var_acc.add(dev * dev);
    }
    const double var_a = var_acc.value() / (n - 1.0);

    ImportanceResult out;
    out.log_value = m + std::log(mean_a);
    out.std_error = std::sqrt(var_a / n) / mean_a;  // delta method on log
    out.ess = ess;
    out.draws = draws;
    return out;
}

Proposal make_inverse_gamma_proposal(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0))
        fail(ErrorCode::InvalidInput, "inverse-gamma parameters must be positive");
    Proposal p;
    p.sample = [shape, scale](Rng& rng) {
        return std::vector<double>{rng.inverse_gamma(shape, scale)};
    };
    p.log_pdf = [shape, scale](const std::vector<double>& x) {
        const double v = x.at(0);
        if (!(v > 0.0)) return kNegInf;
        return shape * std::log(scale) - std::lgamma(shape) - (shape + 1.0) * std::log(v) -
               scale / v;
    };
    return p;
}

double log_inverse_wishart_pdf(const Eigen::MatrixXd& sigma, double nu,
                               const Eigen::MatrixXd& psi) {
    const int d = static_cast<int>(psi.rows());
    Eigen::LLT<Eigen::MatrixXd> llt_sigma(sigma);
    if (llt_sigma.info() != Eigen::Success) return kNegInf;
    const double log_det_sigma =
        2.0 * llt_sigma.matrixL().toDenseMatrix().diagonal().array().log().sum();
    Eigen::LLT<Eigen::MatrixXd> llt_psi(psi);
    if (llt_psi.info() != Eigen::Success)
        fail(ErrorCode::NotPositiveDefinite, "Psi must be positive definite");
    const double log_det_psi =
        2.0 * llt_psi.matrixL().toDenseMatrix().diagonal().array().log().sum();
    const double trace_term = llt_sigma.solve(psi).trace();
    return 0.5 * nu * log_det_psi - 0.5 * nu * d * std::log(2.0) -
           lgamma_multivariate(0.5 * nu, d) - 0.5 * (nu + d + 1.0) * log_det_sigma -
           0.5 * trace_term;
}

Proposal make_inverse_wishart_proposal(double nu, const Eigen::MatrixXd& psi) {
    const int d = static_cast<int>(psi.rows());
    if (!(nu > d - 1)) fail(ErrorCode::InvalidInput, "inverse-wishart needs nu > d-1");
    Eigen::LLT<Eigen::MatrixXd> llt(psi.inverse());
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::NotPositiveDefinite, "Psi must be positive definite");
    const Eigen::MatrixXd c = llt.matrixL();  // chol(Psi^{-1})

    Proposal p;
    p.sample = [nu, d, c](Rng& rng) {
        // Bartlett: W = C A A^T C^T ~ Wishart(nu, Psi^{-1}); Sigma = W^{-1}.
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
        for (int i = 0; i < d; ++i) {
            a(i, i) = std::sqrt(rng.chi_squared(nu - i));
            for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
        }
        const Eigen::MatrixXd t = c * a;
        const Eigen::MatrixXd w = t * t.transpose();
        const Eigen::MatrixXd sigma = w.inverse();
        return pack_symmetric(0.5 * (sigma + sigma.transpose()));
    };
    p.log_pdf = [nu, d, psi](const std::vector<double>& x) {
        return log_inverse_wishart_pdf(unpack_symmetric(x, d), nu, psi);
    };
    return p;
}

}  // namespace proflik
