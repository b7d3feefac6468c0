// Times the OpenMP-parallel kernels against their serial reference paths and
// checks that both produce identical output (the determinism contract: slot
// writes in parallel, reductions in index order).

#include <chrono>
#include <cstdio>
#include <vector>

#include "proflik/closed_forms.hpp"
#include "proflik/conjecture.hpp"
#include "proflik/engine.hpp"
#include "proflik/equivalence.hpp"
#include "proflik/models.hpp"
#include "proflik/monte_carlo.hpp"
#include "proflik/parallel.hpp"
#include "proflik/rng.hpp"

using namespace proflik;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
double timed(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return seconds_since(start);
}

ScalarSample make_sample(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> y(n);
    for (double& v : y) v = rng.normal();
    return ScalarSample(std::move(y));
}

bool same_curve(const LogCurve& a, const LogCurve& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.usable[i] != b.usable[i]) return false;
        if (a.usable[i] && a.values[i] != b.values[i]) return false;
    }
    return true;
}

}  // namespace

int main() {
    std::printf("openmp: %s, max threads: %d\n", openmp_enabled() ? "on" : "off", max_threads());
    int failures = 0;

    {
        const ScalarSample sample = make_sample(200, 11);
        const std::vector<double> grid = default_normal_grid(sample, 4001);
        VerifySettings serial;
        serial.mode = VerifyMode::Numeric;
        serial.exec = Exec::Serial;
        VerifySettings parallel = serial;
        parallel.exec = Exec::Parallel;

        EquivalenceReport rs{.model_tag = {},
                             .profile = LogCurve({{0.0}}, {0.0}),
                             .marginal = LogCurve({{0.0}}, {0.0})};
        EquivalenceReport rp = rs;
        const double ts = timed([&] { rs = verify_normal(sample, grid, serial); });
        const double tp = timed([&] { rp = verify_normal(sample, grid, parallel); });
        const bool same = same_curve(rs.profile, rp.profile) &&
                          same_curve(rs.marginal, rp.marginal) &&
                          rs.sup_abs_discrepancy == rp.sup_abs_discrepancy;
        if (!same) ++failures;
        std::printf("numeric curve grid (4001 pts): serial %.3fs, parallel %.3fs, speedup %.2fx, identical: %s\n",
                    ts, tp, ts / tp, same ? "yes" : "NO");
    }

    {
        const FamilySpec family = make_gamma_mean_shape();
        const std::vector<int> ns{5, 10, 20};
        DiscrepancyTable table_s, table_p;
        const double ts = timed([&] {
            table_s = discrepancy_scan(family, {2.0}, {1.5}, ns, 8, 99, GridSpec{}, Exec::Serial);
        });
        const double tp = timed([&] {
            table_p =
                discrepancy_scan(family, {2.0}, {1.5}, ns, 8, 99, GridSpec{}, Exec::Parallel);
        });
        bool same = table_s.rows.size() == table_p.rows.size();
        for (std::size_t i = 0; same && i < table_s.rows.size(); ++i) {
            const auto& a = table_s.rows[i];
            const auto& b = table_p.rows[i];
            same = a.ok == b.ok && a.seed == b.seed &&
                   (!a.ok || a.sup_discrepancy == b.sup_discrepancy);
        }
        same = same && table_to_csv(table_s) == table_to_csv(table_p);
        if (!same) ++failures;
        std::printf("discrepancy scan (24 cells): serial %.3fs, parallel %.3fs, speedup %.2fx, identical: %s\n",
                    ts, tp, ts / tp, same ? "yes" : "NO");
    }

    {
        const ScalarSample sample = make_sample(12, 5);
        const NuisanceModel model = scalar_normal_model();
        const Dataset data = sample;
        const std::vector<double> mu{sample.mean()};
        const auto prior = [](const std::vector<double>& s) {
            return log_jeffreys_prior_variance(s[0]);
        };
        const Proposal proposal = make_inverse_gamma_proposal(
            0.5 * sample.n(), 0.5 * sum_sq_dev(sample, mu[0]));
        ImportanceResult is{}, ip{};
        const double ts = timed(
            [&] { is = marginal_mc(model, data, mu, prior, proposal, 2000000, 7, Exec::Serial); });
        const double tp = timed([&] {
            ip = marginal_mc(model, data, mu, prior, proposal, 2000000, 7, Exec::Parallel);
        });
        const bool same = is.log_value == ip.log_value && is.std_error == ip.std_error;
        if (!same) ++failures;
        std::printf("importance sampling (2e6 draws): serial %.3fs, parallel %.3fs, speedup %.2fx, identical: %s\n",
                    ts, tp, ts / tp, same ? "yes" : "NO");
    }

    if (failures) {
        std::printf("%d kernel(s) diverged between serial and parallel\n", failures);
        return 1;
    }
    std::printf("all kernels identical across serial and parallel paths\n");
    return 0;
}
