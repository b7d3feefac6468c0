#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace proflik {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kLogTwoPi = 1.8378770664093454835606594728112;  // ln(2*pi)
inline constexpr double kLogPi = 1.1447298858494001741434273513531;     // ln(pi)

inline double log_sum_exp(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// log(sum exp(v_i)) over a range, stabilized by the max. Fixed left-to-right
// accumulation order keeps results identical however the values were produced.
inline double log_sum_exp(std::span<const double> vals) {
    double hi = kNegInf;
    for (double v : vals) hi = std::max(hi, v);
    if (hi == kNegInf) return kNegInf;
    if (!std::isfinite(hi)) return hi;
    double acc = 0.0;
    for (double v : vals) acc += std::exp(v - hi);
    return hi + std::log(acc);
}

// Neumaier-compensated accumulator for the sums of squares that the
// 1e-10-level equivalence checks depend on.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> vals) {
    CompensatedSum s;
    for (double v : vals) s.add(v);
    return s.value();
}

// Multivariate gamma function, log scale:
// ln Gamma_d(a) = d(d-1)/4 * ln(pi) + sum_{j=1..d} ln Gamma(a + (1-j)/2)
inline double lgamma_multivariate(double a, int d) {
    double out = 0.25 * d * (d - 1) * kLogPi;
    for (int j = 1; j <= d; ++j) out += std::lgamma(a + 0.5 * (1 - j));
    return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t points) {
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = lo;
        return g;
    }
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

// log of the trapezoid-rule integral of exp(values) over grid.
inline double log_trapezoid(std::span<const double> grid, std::span<const double> values) {
    std::vector<double> terms;
    terms.reserve(grid.size());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double width = grid[i + 1] - grid[i];
        terms.push_back(std::log(0.5 * width) + log_sum_exp(values[i], values[i + 1]));
    }
    return log_sum_exp(terms);
}

// Linear-interpolation quantile of an unsorted sample, p in [0,1].
inline double quantile(std::vector<double> vals, double p) {
    std::sort(vals.begin(), vals.end());
    if (vals.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = p * static_cast<double>(vals.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= vals.size()) return vals.back();
    const double frac = pos - static_cast<double>(lo);
    return vals[lo] * (1.0 - frac) + vals[lo + 1] * frac;
}

inline double median(std::vector<double> vals) { return quantile(std::move(vals), 0.5); }

}  // namespace proflik
