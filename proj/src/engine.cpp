#include "proflik/engine.hpp"

#include <cmath>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {

ProfileResult profile_numeric(const NuisanceModel& model, const Dataset& data,
                              const std::vector<double>& interest, const std::vector<double>& init,
                              const SimplexOptions& opts) {
    if (static_cast<int>(init.size()) != model.nuisance_dim)
        fail(ErrorCode::InvalidInput, "init size must equal nuisance_dim");
    const std::vector<double> t0 = to_unconstrained(model, init);
    auto objective = [&](const std::vector<double>& t) {
        return model.log_density(data, interest, from_unconstrained(model, t));
    };
    const SimplexResult r = maximize_simplex(objective, t0, opts);
    ProfileResult out;
    out.log_value = r.value;
    out.argmax = from_unconstrained(model, r.argmax);
    out.grad_norm = r.grad_norm;
    out.iterations = r.iterations;
    out.restarts = r.restarts;
    return out;
}

double marginal_numeric(const NuisanceModel& model, const Dataset& data,
                        const std::vector<double>& interest,
                        const std::function<double(const std::vector<double>&)>& log_prior,
                        const QuadratureSpec& spec) {
    if (model.nuisance_dim != 1)
        fail(ErrorCode::InvalidInput,
             "quadrature path handles one nuisance dimension; use marginal_mc");
    if (model.domain == NuisanceDomain::PositiveDefiniteMatrix)
        fail(ErrorCode::InvalidInput, "matrix nuisances use marginal_mc");

    // Center the initial interval on the transformed profile argmax.
    std::vector<double> init{1.0};
    if (model.init_nuisance) init = model.init_nuisance(data, interest);
    const ProfileResult prof = profile_numeric(model, data, interest, init);
    const double t_center = to_unconstrained(model, prof.argmax)[0];

    const bool log_axis = (model.domain == NuisanceDomain::Positive);
    auto log_integrand = [&](double t) {
        const std::vector<double> x{log_axis ? std::exp(t) : t};
        const double ld = model.log_density(data, interest, x);
        if (!std::isfinite(ld)) return kNegInf;
        const double lp = log_prior(x);
        if (!std::isfinite(lp)) return kNegInf;
        return ld + lp + (log_axis ? t : 0.0);  // Jacobian d(x)/d(t) = e^t
    };
    return integrate_log_adaptive(log_integrand, t_center, spec).log_integral;
}

ImportanceResult marginal_mc(const NuisanceModel& model, const Dataset& data,
                             const std::vector<double>& interest,
                             const std::function<double(const std::vector<double>&)>& log_prior,
                             const Proposal& proposal, int draws, std::uint64_t seed, Exec exec) {
    auto log_target = [&](const std::vector<double>& x) {
        const double ld = model.log_density(data, interest, x);
        if (!std::isfinite(ld)) return kNegInf;
        const double lp = log_prior(x);
        if (!std::isfinite(lp)) return kNegInf;
        return ld + lp;
    };
    return importance_log_integral(log_target, proposal, draws, seed, exec);
}

}  // namespace proflik
