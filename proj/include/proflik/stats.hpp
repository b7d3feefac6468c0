#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "proflik/errors.hpp"

namespace proflik {

// Two-sided Kolmogorov-Smirnov statistic of a sample against an analytic CDF:
// sup over the sorted sample of max(F(x_(i)) - i/n, (i+1)/n - F(x_(i))).
inline double ks_statistic(std::vector<double> sample,
                           const std::function<double(double)>& cdf) {
    if (sample.empty()) fail(ErrorCode::InvalidInput, "empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::max(f - static_cast<double>(i) / n,
                                 static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace proflik
