#include <doctest.h>

#include <cmath>
#include <vector>

#include "proflik/math.hpp"

using namespace proflik;

TEST_CASE("log_sum_exp of a pair") {
    CHECK(log_sum_exp(std::log(1.0), std::log(1.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(log_sum_exp(0.0, kNegInf) == 0.0);
    CHECK(log_sum_exp(kNegInf, -3.5) == -3.5);
    CHECK(log_sum_exp(kNegInf, kNegInf) == kNegInf);
    // Values this large overflow exp(); the max-shift must keep the result finite.
    CHECK(log_sum_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
    CHECK(log_sum_exp(1000.0, -1000.0) == 1000.0);
}

TEST_CASE("log_sum_exp of a range") {
    const std::vector<double> vals{std::log(1.0), std::log(2.0), std::log(3.0)};
    CHECK(log_sum_exp(vals) == doctest::Approx(std::log(6.0)).epsilon(1e-15));

    const std::vector<double> empty;
    CHECK(log_sum_exp(empty) == kNegInf);

    const std::vector<double> all_ninf{kNegInf, kNegInf};
    CHECK(log_sum_exp(all_ninf) == kNegInf);
}

TEST_CASE("compensated summation recovers cancelled small terms") {
    // Naive left-to-right double summation of these returns 0; Neumaier keeps the 2.
    const std::vector<double> vals{1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(vals) == 2.0);

    CompensatedSum s;
    const int reps = 100000;
    for (int i = 0; i < reps; ++i) s.add(0.1);
    CHECK(s.value() == doctest::Approx(0.1 * reps).epsilon(1e-15));
}

TEST_CASE("multivariate log-gamma") {
    // d=1 is the ordinary log-gamma.
    for (double a : {0.5, 1.0, 2.5, 7.0})
        CHECK(lgamma_multivariate(a, 1) == doctest::Approx(std::lgamma(a)).epsilon(1e-15));

    // d=2, a=2: 30-digit mpmath evaluation of ln(pi)/2 + lnGamma(2) + lnGamma(3/2).
    CHECK(lgamma_multivariate(2.0, 2) == doctest::Approx(0.45158270528945486473).epsilon(1e-14));

    // Recurrence Gamma_d(a) = pi^{(d-1)/2} Gamma(a) Gamma_{d-1}(a - 1/2).
    for (double a : {2.0, 3.0, 4.5}) {
        const double lhs = lgamma_multivariate(a, 3);
        const double rhs = kLogPi + std::lgamma(a) + lgamma_multivariate(a - 0.5, 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("linspace endpoints and spacing") {
    const auto g = linspace(-1.0, 2.0, 7);
    REQUIRE(g.size() == 7);
    CHECK(g.front() == -1.0);
    CHECK(g.back() == 2.0);
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
        CHECK(g[i + 1] - g[i] == doctest::Approx(0.5).epsilon(1e-14));

    const auto single = linspace(3.0, 9.0, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 3.0);
}

TEST_CASE("log_trapezoid matches hand-computed trapezoid integral") {
    // exp(values) = 1, 2, 3 on grid 0, 1, 2: trapezoid = 1.5 + 2.5 = 4.
    const std::vector<double> grid{0.0, 1.0, 2.0};
    const std::vector<double> vals{std::log(1.0), std::log(2.0), std::log(3.0)};
    CHECK(log_trapezoid(grid, vals) == doctest::Approx(std::log(4.0)).epsilon(1e-15));

    // Standard normal log-density over a wide fine grid integrates to ~1.
    const auto wide = linspace(-10.0, 10.0, 4001);
    std::vector<double> logs(wide.size());
    for (std::size_t i = 0; i < wide.size(); ++i)
        logs[i] = -0.5 * kLogTwoPi - 0.5 * wide[i] * wide[i];
    CHECK(log_trapezoid(wide, logs) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("quantile and median use linear interpolation") {
    const std::vector<double> vals{4.0, 1.0, 3.0, 2.0};
    CHECK(quantile(vals, 0.0) == 1.0);
    CHECK(quantile(vals, 1.0) == 4.0);
    CHECK(quantile(vals, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(quantile(vals, 0.25) == doctest::Approx(1.75).epsilon(1e-15));
    CHECK(median(std::vector<double>{3.0, 1.0, 2.0}) == 2.0);
    CHECK(median(std::vector<double>{1.0, 2.0}) == doctest::Approx(1.5).epsilon(1e-15));
}
