#include "geothermo/engine/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "geothermo/core/errors.hpp"
#include "geothermo/core/logsum.hpp"

namespace geothermo::engine {

using core::OrbitTable;
using core::SumMode;

namespace {

std::optional<double> try_sum(const OrbitTable& orbits, std::string_view f, double t, SumMode mode) {
    try {
        return core::weighted_orbit_sum(orbits, f, t, mode);
    } catch (const EmptySelection&) {
        return std::nullopt;
    }
}

void summarize(const std::vector<double>& slopes, double& final, double& half_width) {
    const auto tail = std::span<const double>(slopes).last(3);
    final = (tail[0] + tail[1] + tail[2]) / 3.0;
    const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    half_width = *hi - *lo;
}

}  // namespace

std::vector<double> make_grid(double start, double stop, double step) {
    if (!(start < stop)) throw std::invalid_argument("t_grid.start must be < t_grid.stop");
    if (!(step > 0.0)) throw std::invalid_argument("t_grid.step must be positive");
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double t = start + static_cast<double>(i) * step;
        if (t > stop + 1e-9 * step) break;
        grid.push_back(t);
    }
    return grid;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least squares needs >= 2 paired points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("least squares needs distinct abscissae");
    return sxy / sxx;
}

PressureEstimate estimate_pressure(const OrbitTable& orbits, std::string_view f, std::span<const double> t_grid,
                                   double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("window epsilon must be positive");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("t_grid must be increasing");
    (void)orbits.slot(f);

    PressureEstimate est;
    est.t_grid.assign(t_grid.begin(), t_grid.end());
    est.epsilon = epsilon;
    const std::size_t n = t_grid.size();
    est.cumulative_logsums.resize(n);
    est.window_logsums.resize(n);
    est.slopes.resize(n);
    est.window_slopes.resize(n);

    std::optional<std::size_t> prev;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = t_grid[i];
        est.cumulative_logsums[i] = t > 0.0 ? try_sum(orbits, f, t, SumMode::cumulative()) : std::nullopt;
        est.window_logsums[i] = t > 0.0 ? try_sum(orbits, f, t, SumMode::window(epsilon)) : std::nullopt;
        if (!est.cumulative_logsums[i] || !est.window_logsums[i]) continue;
        if (prev) {
            const double dt = t - t_grid[*prev];
            est.slopes[i] = (*est.cumulative_logsums[i] - *est.cumulative_logsums[*prev]) / dt;
            est.window_slopes[i] = (*est.window_logsums[i] - *est.window_logsums[*prev]) / dt;
            est.slope_estimates.push_back(*est.slopes[i]);
            est.window_slope_estimates.push_back(*est.window_slopes[i]);
        }
        prev = i;
    }
    if (est.slope_estimates.size() < 3) throw InsufficientGrid();
    summarize(est.slope_estimates, est.final, est.half_width);
    summarize(est.window_slope_estimates, est.window_final, est.window_half_width);
    return est;
}

}  // namespace geothermo::engine
