#include "proflik/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {

namespace {

// 15-point Kronrod rule with the embedded 7-point Gauss rule (QUADPACK dqk15
// constants). Positive abscissae; even indices belong to the Kronrod
// extension, odd ones to the Gauss subset.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329,  //
    0.949107912342758524526189684047851,  //
    0.864864423359769072789712788640926,  //
    0.741531185599394439863864773280788,  //
    0.586087235467691130294144838258730,  //
    0.405845151377397166906606412076961,  //
    0.207784955007898467600689403773245,  //
    0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970,  //
    0.063092092629978553290700663189204,  //
    0.104790010322250183839876322541518,  //
    0.140653259715525918745189590510238,  //
    0.169004726639267902826583426598550,  //
    0.190350578064785409913256402421014,  //
    0.204432940075298892414161999234649,  //
    0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082,  //
    0.279705391489276667901467771423780,  //
    0.381830050505118944950369775488975,  //
    0.417959183673469387755102040816327,
};

struct Panel {
    double lo, hi;
    double log_kronrod;   // log of the 15-point estimate
    double log_abs_diff;  // log |kronrod - gauss|, the error proxy
};

Panel evaluate_panel(const std::function<double(double)>& log_f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    std::array<double, 15> vals{};
    // vals[k] for node +x_i and -x_i; center handled once.
    std::array<double, 15> logw_k{};
    std::array<double, 15> logw_g{};
    int count = 0;
    for (int i = 0; i < 8; ++i) {
        const bool gauss_node = (i % 2 == 1) || i == 7;
        const double wg = gauss_node ? kGaussWeights[i / 2] : 0.0;
        if (kNodes[i] == 0.0) {
            vals[count] = log_f(mid);
            logw_k[count] = std::log(kKronrodWeights[i]);
            logw_g[count] = std::log(wg);
            ++count;
            continue;
        }
        for (double sign : {1.0, -1.0}) {
            vals[count] = log_f(mid + sign * half * kNodes[i]);
            logw_k[count] = std::log(kKronrodWeights[i]);
            logw_g[count] = gauss_node ? std::log(wg) : kNegInf;
            ++count;
        }
    }
    std::array<double, 15> terms_k{};
    std::array<double, 15> terms_g{};
    for (int k = 0; k < 15; ++k) {
        terms_k[k] = vals[k] + logw_k[k];
        terms_g[k] = vals[k] + logw_g[k];
    }
    const double log_h = std::log(half);
    const double log_k15 = log_sum_exp(std::span<const double>(terms_k)) + log_h;
    const double log_g7 = log_sum_exp(std::span<const double>(terms_g)) + log_h;

    double log_diff;
    if (log_k15 == kNegInf && log_g7 == kNegInf)
        log_diff = kNegInf;
    else if (log_k15 == kNegInf)
        log_diff = log_g7;
    else if (log_g7 == kNegInf)
        log_diff = log_k15;
    else {
        const double d = std::abs(std::expm1(log_g7 - log_k15));
        log_diff = (d == 0.0) ? kNegInf : log_k15 + std::log(d);
    }
    return Panel{lo, hi, log_k15, log_diff};
}

double total_log_integral(const std::vector<Panel>& panels) {
    std::vector<double> logs;
    logs.reserve(panels.size());
    for (const auto& p : panels) logs.push_back(p.log_kronrod);
    return log_sum_exp(logs);
}

double total_log_error(const std::vector<Panel>& panels) {
    std::vector<double> logs;
    logs.reserve(panels.size());
    for (const auto& p : panels) logs.push_back(p.log_abs_diff);
    return log_sum_exp(logs);
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_log_tol > 0.0))
        fail(ErrorCode::InvalidInput, "quadrature tolerances must be positive");
    if (max_subdivisions < 10) fail(ErrorCode::InvalidInput, "max_subdivisions must be >= 10");
}

QuadratureResult integrate_log_adaptive(const std::function<double(double)>& log_f, double center,
                                        const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(center)) fail(ErrorCode::InvalidInput, "expansion center must be finite");

    std::vector<Panel> panels;
    panels.push_back(evaluate_panel(log_f, center - 1.0, center));
    panels.push_back(evaluate_panel(log_f, center, center + 1.0));

    // Grow the interval outward; each new tail panel spans the current
    // half-width, doubling the covered interval.
    const double log_tail_cut = std::log(1e-12);
    int expansions = 0;
    double left = center - 1.0, right = center + 1.0;
    bool left_done = false, right_done = false;
    double prev_left_contrib = panels.front().log_kronrod;
    double prev_right_contrib = panels.back().log_kronrod;
    int left_growth = 0, right_growth = 0;
    while (!left_done || !right_done) {
        if (expansions++ >= spec.max_expansions)
            fail(ErrorCode::DivergentIntegral, "interval expansion budget exhausted");
        const double total = total_log_integral(panels);
        if (!left_done) {
            const double width = center - left;
            const Panel p = evaluate_panel(log_f, left - width, left);
            left -= width;
            // Tail growing back up across expansions signals divergence.
            if (p.log_kronrod > prev_left_contrib && ++left_growth >= 3)
                fail(ErrorCode::DivergentIntegral, "left tail keeps growing");
            prev_left_contrib = p.log_kronrod;
            if (p.log_kronrod != kNegInf) panels.push_back(p);
            if (p.log_kronrod - total < log_tail_cut) left_done = true;
        }
        if (!right_done) {
            const double width = right - center;
            const Panel p = evaluate_panel(log_f, right, right + width);
            right += width;
            if (p.log_kronrod > prev_right_contrib && ++right_growth >= 3)
                fail(ErrorCode::DivergentIntegral, "right tail keeps growing");
            prev_right_contrib = p.log_kronrod;
            if (p.log_kronrod != kNegInf) panels.push_back(p);
            if (p.log_kronrod - total < log_tail_cut) right_done = true;
        }
    }

    // Adaptive subdivision of the worst panel by error proxy.
    int subdivisions = 0;
    double best_rel_err = std::numeric_limits<double>::infinity();
    while (true) {
        const double log_total = total_log_integral(panels);
        const double log_err = total_log_error(panels);
        const double rel_err =
            (log_err == kNegInf) ? 0.0 : std::exp(std::min(log_err - log_total, 700.0));
        best_rel_err = std::min(best_rel_err, rel_err);
        if (rel_err <= spec.rel_tol || log_err < std::log(spec.abs_log_tol) + log_total) {
            QuadratureResult out;
            out.log_integral = log_total;
            out.rel_error_estimate = rel_err;
            out.panels = static_cast<int>(panels.size());
            out.expansions = expansions;
            out.subdivisions = subdivisions;
            return out;
        }
        if (subdivisions >= spec.max_subdivisions) {
            throw Error(ErrorCode::ToleranceNotMet,
                        "achieved relative error estimate " + std::to_string(best_rel_err));
        }
        // Worst panel; ties broken by leftmost edge for determinism.
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i) {
            if (panels[i].log_abs_diff > panels[worst].log_abs_diff ||
                (panels[i].log_abs_diff == panels[worst].log_abs_diff &&
                 panels[i].lo < panels[worst].lo))
                worst = i;
        }
        const Panel w = panels[worst];
        const double mid = 0.5 * (w.lo + w.hi);
        panels[worst] = evaluate_panel(log_f, w.lo, mid);
        panels.push_back(evaluate_panel(log_f, mid, w.hi));
        ++subdivisions;
    }
}

}  // namespace proflik
