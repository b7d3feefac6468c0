#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace proflik {

// A grid of interest-parameter points paired with exact log values. All
// likelihood comparisons happen on these after anchoring, which removes any
// proportionality constant. Points whose value could not be computed (or is
// not finite) carry usable == 0 and are skipped by reductions.
struct LogCurve {
    std::vector<std::vector<double>> grid;  // points, common dimension >= 1
    std::vector<double> values;
    std::vector<std::uint8_t> usable;

    LogCurve(std::vector<std::vector<double>> grid_points, std::vector<double> log_values,
             std::vector<std::uint8_t> usable_flags = {});

    // Scalar-interest convenience; the grid must be strictly increasing.
    static LogCurve scalar(std::vector<double> grid_points, std::vector<double> log_values,
                           std::vector<std::uint8_t> usable_flags = {});

    std::size_t size() const { return grid.size(); }
    int dim() const { return static_cast<int>(grid.front().size()); }
    std::size_t count_usable() const;
};

// Shifts values so the curve is exactly 0 at `index`; pairwise differences
// are preserved exactly (a single subtraction per point).
LogCurve anchor_curve(const LogCurve& curve, std::size_t index);

// Index of the largest usable value (first one on ties).
std::size_t argmax_usable(const LogCurve& curve);

// {"grid": [...], "log_values": [...], "meta": {...}}; scalar grids emit
// numbers, vector grids emit arrays. Unusable points serialize as null.
nlohmann::ordered_json curve_to_json(const LogCurve& curve, nlohmann::ordered_json meta);

}  // namespace proflik
