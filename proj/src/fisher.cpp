#include "proflik/fisher.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"
#include "proflik/rng.hpp"

namespace proflik {

namespace {

// Central second differences of f at x; returns the full symmetric Hessian.
Eigen::MatrixXd fd_hessian(const std::function<double(const std::vector<double>&)>& f,
                           const std::vector<double>& x) {
    const int m = static_cast<int>(x.size());
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    std::vector<double> h(m);
    for (int i = 0; i < m; ++i) h[i] = h0 * (1.0 + std::abs(x[i]));

    Eigen::MatrixXd hess(m, m);
    const double f0 = f(x);
    std::vector<double> p = x;
    for (int i = 0; i < m; ++i) {
        p[i] = x[i] + h[i];
        const double fp = f(p);
        p[i] = x[i] - h[i];
        const double fm = f(p);
        p[i] = x[i];
        hess(i, i) = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for (int j = 0; j < i; ++j) {
            p[i] = x[i] + h[i];
            p[j] = x[j] + h[j];
            const double fpp = f(p);
            p[j] = x[j] - h[j];
            const double fpm = f(p);
            p[i] = x[i] - h[i];
            const double fmm = f(p);
            p[j] = x[j] + h[j];
            const double fmp = f(p);
            p[i] = x[i];
            p[j] = x[j];
            hess(i, j) = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            hess(j, i) = hess(i, j);
        }
    }
    return hess;
}

}  // namespace

Eigen::MatrixXd fisher_info_nuisance(const NuisanceModel& model,
                                     const std::vector<double>& interest,
                                     const std::vector<double>& nuisance, FisherMethod method,
                                     std::uint64_t seed, int reps, Exec exec) {
    if (static_cast<int>(nuisance.size()) != model.nuisance_dim)
        fail(ErrorCode::InvalidInput, "nuisance size must equal nuisance_dim");

    if (method == FisherMethod::Analytic) {
        if (!model.analytic_nuisance_fisher)
            fail(ErrorCode::InvalidInput, "model exposes no analytic Fisher information");
        Eigen::MatrixXd info = model.analytic_nuisance_fisher(interest, nuisance);
        if (!info.allFinite()) fail(ErrorCode::NonFiniteHessian, "analytic information not finite");
        return 0.5 * (info + info.transpose());
    }

    if (!model.sample_one)
        fail(ErrorCode::NoSamplerAvailable, "Monte Carlo Fisher path needs a data sampler");
    if (reps < 1) fail(ErrorCode::InvalidInput, "reps must be >= 1");

    const int m = model.nuisance_dim;
    // Per-replicate results, reduced afterwards in index order.
    std::vector<Eigen::MatrixXd> neg_hessians(static_cast<std::size_t>(reps));
    parallel_for(
        static_cast<std::size_t>(reps),
        [&](std::size_t r) {
            Rng rng(derive_seed(seed, r));
            const Dataset data = model.sample_one(interest, nuisance, rng);
            auto logdens = [&](const std::vector<double>& x) {
                return model.log_density(data, interest, x);
            };
            neg_hessians[r] = -fd_hessian(logdens, nuisance);
        },
        exec);

    Eigen::MatrixXd info(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            CompensatedSum s;
            for (const auto& h : neg_hessians) s.add(h(i, j));
            info(i, j) = s.value() / static_cast<double>(reps);
        }
    if (!info.allFinite())
        fail(ErrorCode::NonFiniteHessian, "finite-difference Hessian not finite");
    return 0.5 * (info + info.transpose());
}

double jeffreys_log_prior_numeric(const NuisanceModel& model, const std::vector<double>& interest,
                                  const std::vector<double>& nuisance, FisherMethod method,
                                  std::uint64_t seed, int reps, Exec exec) {
    const Eigen::MatrixXd info =
        fisher_info_nuisance(model, interest, nuisance, method, seed, reps, exec);
    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success)
        fail(ErrorCode::NotPositiveDefinite, "Fisher information not positive definite");
    return llt.matrixL().toDenseMatrix().diagonal().array().log().sum();  // 0.5 * ln det
}

}  // namespace proflik
