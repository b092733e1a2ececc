#include "geothermo/engine/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include "geothermo/core/errors.hpp"
#include "geothermo/engine/pressure.hpp"

namespace geothermo::engine {

using core::Potential;
using symbolic::MarkovMeasure;
using symbolic::ShiftSystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Observable and threshold turned into the form int omega >= c.
struct Oriented {
    Potential omega;
    double c;
};

Oriented orient(const HalfSpace& k) {
    if (k.direction == Direction::at_least) return {k.observable, k.threshold};
    return {k.observable.scaled(-1.0), -k.threshold};
}

// Periodic orbit measure with the largest time average of omega, among
// simple cycles (the extreme points of that linear problem).
struct CycleMeasure {
    double mean_omega = -kInf;
    double mean_f = 0.0;
};

CycleMeasure best_cycle(const ShiftSystem& shift, const Potential& omega, const Potential& f) {
    const core::OrbitTable cycles = symbolic::enumerate_orbits(shift, shift.alphabet(), {}, 1);
    CycleMeasure best;
    for (const auto& o : cycles.orbits()) {
        const double w = symbolic::orbit_integral(shift, o.code, omega) / o.length;
        const double g = symbolic::orbit_integral(shift, o.code, f) / o.length;
        if (w > best.mean_omega || (w == best.mean_omega && g > best.mean_f)) best = {w, g};
    }
    return best;
}

double flow_mean(const MarkovMeasure& m, const ShiftSystem& shift, const Potential& omega) {
    return symbolic::flow_measure_eval(m, shift, omega);
}

}  // namespace

double rho(double entropy, double mean_f, double pressure_f) {
    const double r = pressure_f - (entropy + mean_f);
    if (r < -1e-9) throw VariationalViolation();
    return std::max(r, 0.0);
}

double rho(const MarkovMeasure& m, const ShiftSystem& shift, const Potential& f, double pressure_f) {
    return rho(symbolic::flow_entropy(m, shift), flow_mean(m, shift, f), pressure_f);
}

double q_f(const ShiftSystem& shift, const Potential& omega, const Potential& f) {
    return symbolic::bowen_pressure(shift, f + omega) - symbolic::bowen_pressure(shift, f);
}

OrbitPredicate half_space_predicate(std::string observable_name, Direction direction, double threshold) {
    if (direction == Direction::at_least) return time_average_at_least(std::move(observable_name), threshold);
    return time_average_at_most(std::move(observable_name), threshold);
}

RhoResult rho_of_set(const ShiftSystem& shift, const Potential& f, const HalfSpace& k) {
    const Oriented o = orient(k);
    const double p_f = symbolic::bowen_pressure(shift, f);

    auto mean_at = [&](double lambda) {
        const Potential g = f + o.omega.scaled(lambda);
        return flow_mean(symbolic::gibbs_equilibrium(shift, g), shift, o.omega);
    };
    auto dual = [&](double lambda) {
        return lambda * o.c - (symbolic::bowen_pressure(shift, f + o.omega.scaled(lambda)) - p_f);
    };

    if (mean_at(0.0) >= o.c) return {0.0, 0.0, true};

    const CycleMeasure top = best_cycle(shift, o.omega, f);
    if (o.c > top.mean_omega + 1e-12) return {kInf, kInf, false};

    double lo = 0.0, hi = 1.0;
    while (mean_at(hi) < o.c) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) {
            // c sits at the top of the range of means; the sup is approached
            // only as lambda grows without bound.
            const double limit = p_f - top.mean_f;
            return {std::max(limit, dual(lo)), lo, true};
        }
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mean_at(mid) < o.c)
            lo = mid;
        else
            hi = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    return {std::max(dual(lambda), 0.0), lambda, true};
}

double rho_of_set_search(const ShiftSystem& shift, const Potential& f, const HalfSpace& k, int restarts,
                         std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
    const Oriented o = orient(k);
    const double p_f = symbolic::bowen_pressure(shift, f);
    const CycleMeasure top = best_cycle(shift, o.omega, f);
    if (o.c > top.mean_omega + 1e-12) return kInf;
    const double top_rho = p_f - top.mean_f;

    const int m = shift.alphabet();
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (shift.allowed(i, j)) edges.emplace_back(i, j);
    const std::size_t dim = edges.size();

    struct Eval {
        double rho;
        double mean;
    };
    auto evaluate = [&](const std::vector<double>& theta) -> std::optional<Eval> {
        Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
        std::vector<double> row_max(static_cast<std::size_t>(m), -kInf);
        for (std::size_t e = 0; e < dim; ++e)
            row_max[static_cast<std::size_t>(edges[e].first)] =
                std::max(row_max[static_cast<std::size_t>(edges[e].first)], theta[e]);
        for (std::size_t e = 0; e < dim; ++e)
            q(edges[e].first, edges[e].second) = std::exp(theta[e] - row_max[static_cast<std::size_t>(edges[e].first)]);
        for (int i = 0; i < m; ++i) q.row(i) /= q.row(i).sum();
        try {
            const MarkovMeasure mm = MarkovMeasure::from_transition(shift, q);
            const double r = p_f - (symbolic::flow_entropy(mm, shift) + flow_mean(mm, shift, f));
            return Eval{r, flow_mean(mm, shift, o.omega)};
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    };

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 2.0);
    double best = kInf;
    for (int r = 0; r < restarts; ++r) {
        std::vector<double> theta(dim);
        for (double& t : theta) t = normal(rng);
        for (double mu : {10.0, 100.0, 1e3, 1e4, 1e5}) {
            auto objective = [&](const std::vector<double>& th) {
                const auto ev = evaluate(th);
                if (!ev) return kInf;
                const double gap = std::max(0.0, o.c - ev->mean);
                return ev->rho + mu * gap * gap;
            };
            double value = objective(theta);
            double step = 1.0;
            for (int it = 0; it < 300 && std::isfinite(value); ++it) {
                std::vector<double> grad(dim);
                constexpr double h = 1e-6;
                for (std::size_t e = 0; e < dim; ++e) {
                    std::vector<double> a = theta, b = theta;
                    a[e] += h;
                    b[e] -= h;
                    grad[e] = (objective(a) - objective(b)) / (2.0 * h);
                }
                double norm2 = 0.0;
                for (double g : grad) norm2 += g * g;
                if (!std::isfinite(norm2) || norm2 < 1e-24) break;
                bool moved = false;
                for (int ls = 0; ls < 40; ++ls) {
                    std::vector<double> cand = theta;
                    for (std::size_t e = 0; e < dim; ++e) cand[e] -= step * grad[e];
                    const double v = objective(cand);
                    if (v <= value - 1e-4 * step * norm2) {
                        theta = std::move(cand);
                        value = v;
                        step *= 2.0;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if (!moved) break;
            }
        }
        const auto ev = evaluate(theta);
        if (!ev) continue;
        double candidate = ev->rho;
        if (ev->mean < o.c) {
            // rho and the mean are affine in the measure; mix in the cycle measure.
            const double w = (o.c - ev->mean) / (top.mean_omega - ev->mean);
            candidate = (1.0 - w) * ev->rho + w * top_rho;
        }
        best = std::min(best, candidate);
    }
    return std::max(best, 0.0);
}

DeviationProfile deviation_rate(const core::OrbitTable& orbits, std::string_view f, const OrbitPredicate& in_set,
                                std::span<const double> t_grid) {
    DeviationProfile out;
    out.t_grid.assign(t_grid.begin(), t_grid.end());
    std::vector<double> xs, ys;
    for (double t : t_grid) {
        double v = 0.0;
        try {
            v = nu_t(orbits, f, t, in_set);
        } catch (const EmptySelection&) {
        }
        out.nu.push_back(v);
        if (v > 0.0) {
            xs.push_back(t);
            ys.push_back(std::log(v));
        }
    }
    if (xs.empty()) throw EventNeverRealized();
    if (xs.size() < 4) throw InsufficientGrid();
    out.rate = least_squares_slope(xs, ys);
    return out;
}

}  // namespace geothermo::engine
