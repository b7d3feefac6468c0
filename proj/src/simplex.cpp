#include "proflik/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {

namespace {

double safe_eval(const std::function<double(const std::vector<double>&)>& f,
                 const std::vector<double>& x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kNegInf;
}

struct Vertex {
    std::vector<double> x;
    double value;
};

double spread(const std::vector<Vertex>& simplex) {
    double lo = simplex.front().value, hi = simplex.front().value;
    for (const auto& v : simplex) {
        lo = std::min(lo, v.value);
        hi = std::max(hi, v.value);
    }
    if (lo == kNegInf) return std::numeric_limits<double>::infinity();
    return hi - lo;
}

double diameter(const std::vector<Vertex>& simplex) {
    double d = 0.0;
    for (std::size_t a = 1; a < simplex.size(); ++a)
        for (std::size_t i = 0; i < simplex[a].x.size(); ++i)
            d = std::max(d, std::abs(simplex[a].x[i] - simplex[0].x[i]));
    return d;
}

double max_abs_coord(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

// One Nelder-Mead run; returns true if both convergence criteria were met
// within the iteration budget.
bool run_simplex(const std::function<double(const std::vector<double>&)>& f,
                 const std::vector<double>& start, const SimplexOptions& opts, double step,
                 Vertex& best_out, int& iterations_out) {
    const std::size_t dim = start.size();
    std::vector<Vertex> simplex;
    simplex.reserve(dim + 1);
    simplex.push_back({start, safe_eval(f, start)});
    for (std::size_t i = 0; i < dim; ++i) {
        std::vector<double> x = start;
        x[i] += step;
        simplex.push_back({x, safe_eval(f, x)});
    }
    bool any_finite = false;
    for (const auto& v : simplex) any_finite |= (v.value != kNegInf);
    if (!any_finite) fail(ErrorCode::DomainEscape, "all simplex evaluations left the domain");

    auto by_value_desc = [](const Vertex& a, const Vertex& b) { return a.value > b.value; };
    std::stable_sort(simplex.begin(), simplex.end(), by_value_desc);

    const int max_iterations = opts.max_iter_per_dim * static_cast<int>(dim);
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        if (spread(simplex) < opts.value_tol &&
            diameter(simplex) < opts.coord_tol * (1.0 + max_abs_coord(simplex[0].x)))
            break;

        // Centroid of all but the worst vertex.
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t a = 0; a < dim; ++a)
            for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[a].x[i];
        for (double& c : centroid) c /= static_cast<double>(dim);

        const Vertex& worst = simplex.back();
        std::vector<double> xr(dim);
        for (std::size_t i = 0; i < dim; ++i) xr[i] = centroid[i] + (centroid[i] - worst.x[i]);
        const double fr = safe_eval(f, xr);

        bool shrink = false;
        if (fr > simplex[0].value) {
            std::vector<double> xe(dim);
            for (std::size_t i = 0; i < dim; ++i)
                xe[i] = centroid[i] + 2.0 * (centroid[i] - worst.x[i]);
            const double fe = safe_eval(f, xe);
            if (fe > fr)
                simplex.back() = {xe, fe};
            else
                simplex.back() = {xr, fr};
        } else if (fr > simplex[dim - 1].value) {
            simplex.back() = {xr, fr};
        } else if (fr > worst.value) {
            std::vector<double> xc(dim);  // outside contraction
            for (std::size_t i = 0; i < dim; ++i) xc[i] = centroid[i] + 0.5 * (xr[i] - centroid[i]);
            const double fc = safe_eval(f, xc);
            if (fc >= fr)
                simplex.back() = {xc, fc};
            else
                shrink = true;
        } else {
            std::vector<double> xc(dim);  // inside contraction
            for (std::size_t i = 0; i < dim; ++i)
                xc[i] = centroid[i] + 0.5 * (worst.x[i] - centroid[i]);
            const double fc = safe_eval(f, xc);
            if (fc > worst.value)
                simplex.back() = {xc, fc};
            else
                shrink = true;
        }
        if (shrink) {
            for (std::size_t a = 1; a <= dim; ++a) {
                for (std::size_t i = 0; i < dim; ++i)
                    simplex[a].x[i] = simplex[0].x[i] + 0.5 * (simplex[a].x[i] - simplex[0].x[i]);
                simplex[a].value = safe_eval(f, simplex[a].x);
            }
        }
        std::stable_sort(simplex.begin(), simplex.end(), by_value_desc);
    }
    iterations_out = iter;
    best_out = simplex[0];
    return iter < max_iterations;
}

double gradient_norm(const std::function<double(const std::vector<double>&)>& f,
                     const std::vector<double>& x) {
    const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
    double sq = 0.0;
    std::vector<double> p = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double h = h0 * (1.0 + std::abs(x[i]));
        p[i] = x[i] + h;
        const double fp = safe_eval(f, p);
        p[i] = x[i] - h;
        const double fm = safe_eval(f, p);
        p[i] = x[i];
        if (fp == kNegInf || fm == kNegInf) return std::numeric_limits<double>::infinity();
        const double g = (fp - fm) / (2.0 * h);
        sq += g * g;
    }
    return std::sqrt(sq);
}

}  // namespace

SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<double>& init, const SimplexOptions& opts) {
    if (init.empty()) fail(ErrorCode::InvalidInput, "empty initial point");
    const double f_init = safe_eval(f, init);
    double best_seen = f_init;

    for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
        std::vector<double> start = init;
        if (attempt > 0) {
            // Deterministic jitter, alternating sign per coordinate and
            // growing with the attempt index.
            for (std::size_t i = 0; i < start.size(); ++i) {
                const double sign = ((i + attempt) % 2 == 0) ? 1.0 : -1.0;
                start[i] += sign * 0.4 * attempt * (1.0 + std::abs(init[i]));
            }
        }
        Vertex candidate;
        int iterations = 0;
        const bool converged =
            run_simplex(f, start, opts, opts.initial_step, candidate, iterations);
        best_seen = std::max(best_seen, candidate.value);
        if (!converged) continue;
        // Accept only a stationary point that is not dominated by anything
        // seen so far (a dominated one is a local ridge; restart instead).
        const double slack = 1e-9 * (1.0 + std::abs(candidate.value));
        if (candidate.value + slack < best_seen || candidate.value + slack < f_init) continue;
        const double gnorm = gradient_norm(f, candidate.x);
        if (gnorm > opts.grad_tol * (1.0 + std::abs(candidate.value))) continue;
        return SimplexResult{candidate.x, candidate.value, gnorm, iterations, attempt};
    }
    fail(ErrorCode::NonConvergence, "simplex failed stationarity after restart budget");
}

}  // namespace proflik
