#include "proflik/curve.hpp"

#include <cmath>
#include <utility>

#include <nlohmann/json.hpp>

#include "proflik/errors.hpp"
#include "proflik/math.hpp"

namespace proflik {

LogCurve::LogCurve(std::vector<std::vector<double>> grid_points, std::vector<double> log_values,
                   std::vector<std::uint8_t> usable_flags)
    : grid(std::move(grid_points)), values(std::move(log_values)), usable(std::move(usable_flags)) {
    if (grid.empty()) fail(ErrorCode::InvalidInput, "curve needs at least one grid point");
    if (grid.size() != values.size())
        fail(ErrorCode::InvalidInput, "grid and values must have equal length");
    const std::size_t d = grid.front().size();
    if (d == 0) fail(ErrorCode::InvalidInput, "grid points need dimension >= 1");
    for (const auto& p : grid)
        if (p.size() != d) fail(ErrorCode::InvalidInput, "grid points must share one dimension");
    if (usable.empty()) {
        usable.resize(values.size());
        for (std::size_t i = 0; i < values.size(); ++i)
            usable[i] = std::isfinite(values[i]) ? 1 : 0;
    } else if (usable.size() != values.size()) {
        fail(ErrorCode::InvalidInput, "usable flags must match values length");
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        if (usable[i] && !std::isfinite(values[i]))
            fail(ErrorCode::InvalidInput, "non-finite value must be flagged unusable");
}

LogCurve LogCurve::scalar(std::vector<double> grid_points, std::vector<double> log_values,
                          std::vector<std::uint8_t> usable_flags) {
    for (std::size_t i = 0; i + 1 < grid_points.size(); ++i)
        if (!(grid_points[i] < grid_points[i + 1]))
            fail(ErrorCode::InvalidInput, "scalar grid must be strictly increasing");
    std::vector<std::vector<double>> pts;
    pts.reserve(grid_points.size());
    for (double g : grid_points) pts.push_back({g});
    return LogCurve(std::move(pts), std::move(log_values), std::move(usable_flags));
}

std::size_t LogCurve::count_usable() const {
    std::size_t c = 0;
    for (auto u : usable) c += u;
    return c;
}

LogCurve anchor_curve(const LogCurve& curve, std::size_t index) {
    if (index >= curve.size()) fail(ErrorCode::InvalidInput, "anchor index out of range");
    if (!curve.usable[index] || !std::isfinite(curve.values[index]))
        fail(ErrorCode::InvalidInput, "anchor value must be finite and usable");
    LogCurve out = curve;
    const double ref = curve.values[index];
    for (std::size_t i = 0; i < out.values.size(); ++i)
        if (out.usable[i]) out.values[i] -= ref;
    out.values[index] = 0.0;  // exact zero at the anchor
    return out;
}

std::size_t argmax_usable(const LogCurve& curve) {
    std::size_t best = curve.size();
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!curve.usable[i]) continue;
        if (best == curve.size() || curve.values[i] > curve.values[best]) best = i;
    }
    if (best == curve.size()) fail(ErrorCode::InvalidInput, "curve has no usable point");
    return best;
}

nlohmann::ordered_json curve_to_json(const LogCurve& curve, nlohmann::ordered_json meta) {
    nlohmann::ordered_json j;
    auto& g = j["grid"] = nlohmann::ordered_json::array();
    if (curve.dim() == 1) {
        for (const auto& p : curve.grid) g.push_back(p[0]);
    } else {
        for (const auto& p : curve.grid) g.push_back(p);
    }
    auto& v = j["log_values"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        if (curve.usable[i])
            v.push_back(curve.values[i]);
        else
            v.push_back(nullptr);
    }
    j["meta"] = std::move(meta);
    return j;
}

}  // namespace proflik
