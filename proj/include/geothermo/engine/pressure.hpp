#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geothermo/core/orbit.hpp"

namespace geothermo::engine {

// Finite-t pressure estimates from orbit sums.
//
// cumulative_logsums[i] = log sum_{length <= t_i} e^{int f}
// window_logsums[i]     = log sum_{t_i < length <= t_i + eps} e^{int f}
//
// A grid point is usable when both sums are nonempty. Slopes are successive
// differences of the log-sums between consecutive usable points; the
// successive difference cancels the polynomial prefactor that biases
// (1/t) log S at moderate t. final = mean of the last three cumulative
// slopes, half_width = their max - min (same for the windowed series).
struct PressureEstimate {
    std::vector<double> t_grid;
    double epsilon = 0.0;
    std::vector<std::optional<double>> cumulative_logsums;
    std::vector<std::optional<double>> window_logsums;
    std::vector<std::optional<double>> slopes;         // per grid point, vs previous usable point
    std::vector<std::optional<double>> window_slopes;  // same for the windowed sums
    std::vector<double> slope_estimates;               // non-missing entries of `slopes`
    std::vector<double> window_slope_estimates;
    double final = 0.0;
    double half_width = 0.0;
    double window_final = 0.0;
    double window_half_width = 0.0;
};

// Throws InsufficientGrid("insufficient grid") with fewer than 4 usable points.
PressureEstimate estimate_pressure(const core::OrbitTable& orbits, std::string_view f, std::span<const double> t_grid,
                                   double epsilon);

// start, start + step, ... <= stop (inclusive up to rounding).
std::vector<double> make_grid(double start, double stop, double step);

// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

}  // namespace geothermo::engine
