#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "geothermo/core/orbit.hpp"
#include "geothermo/core/potential.hpp"

namespace geothermo::engine {

// mu_t: closed orbits of length <= t weighted by e^{int f}. Evaluation is
//   mu_t(omega) = sum w_a delta_a(omega) / sum w_a length_a
// where delta_a(omega) is the line integral over one period, so mu_t is a
// probability measure. The table must outlive the measure.
class EmpiricalMeasure {
public:
    EmpiricalMeasure(const core::OrbitTable& table, std::size_t count, std::vector<double> weights,
                     double log_normalization);

    // Uses the cached integrals of omega.
    double operator()(std::string_view omega) const;
    // Evaluation on the constant potential c (1 for c = 1 up to rounding).
    double constant(double c) const;

    std::size_t size() const { return count_; }
    // weight of orbit i = e^{int f} / normalization.
    const std::vector<double>& weights() const { return weights_; }
    // log of sum e^{int f} length over the selection.
    double log_normalization() const { return log_normalization_; }

private:
    const core::OrbitTable* table_;
    std::size_t count_;
    std::vector<double> weights_;
    double log_normalization_;
};

// Throws EmptySelection when no orbit has length <= t.
EmpiricalMeasure mu_t(const core::OrbitTable& orbits, std::string_view f, double t);

// Countable-base metric, truncated to K observables of sup norm <= 1:
//   d(m, m') = sum_{k <= K} 2^{-k} |m(g_k) - m'(g_k)|.
class ObservableBasis {
public:
    // Throws std::invalid_argument if an observable has sup norm > 1 or K < 1.
    ObservableBasis(std::vector<core::NamedPotential> observables, int truncation);

    const std::vector<core::NamedPotential>& observables() const { return observables_; }
    // min(K, number of observables).
    int size() const { return size_; }
    // Bound on the discarded tail of the series: 2^{1-K}.
    double truncation_bound() const;

private:
    std::vector<core::NamedPotential> observables_;
    int size_;
};

using MeasureEval = std::function<double(const core::NamedPotential&)>;

double measure_distance(const MeasureEval& m1, const MeasureEval& m2, const ObservableBasis& basis);

MeasureEval evaluator(const EmpiricalMeasure& mu);
// delta_a / length_a of one orbit, from cached integrals.
MeasureEval orbit_evaluator(const core::OrbitTable& orbits, std::size_t index);

// Decides delta_a in E from per-orbit statistics.
using OrbitPredicate = std::function<bool(const core::OrbitTable&, std::size_t)>;

// Time average (integral / length) of omega compared with a threshold.
OrbitPredicate time_average_at_least(std::string omega, double threshold);
OrbitPredicate time_average_at_most(std::string omega, double threshold);
// d(delta_a / length_a, center) < radius; center given by its basis values.
OrbitPredicate within_ball(const ObservableBasis& basis, std::vector<double> center_values, double radius);
OrbitPredicate negate(OrbitPredicate p);

// nu_t(E) = sum_{length <= t, in E} e^{int f} / sum_{length <= t} e^{int f}.
// Throws EmptySelection when nothing has length <= t.
double nu_t(const core::OrbitTable& orbits, std::string_view f, double t, const OrbitPredicate& in_set);

struct EquidistributionReport {
    std::vector<double> t_grid;
    // Distances to the oracle measure, when one is given.
    std::vector<double> distances;
    // Pairwise d(mu_t, mu_t') otherwise.
    std::vector<std::vector<double>> cauchy;
    // Oracle case: least-squares slope of the distances < 0 and last <= first.
    // Cauchy case: distance between the last two grid points <= between the first two.
    bool decreasing = false;
    double truncation_bound = 0.0;
};

EquidistributionReport equidistribution_report(const core::OrbitTable& orbits, std::string_view f,
                                               const ObservableBasis& basis, std::span<const double> t_grid,
                                               const std::optional<MeasureEval>& oracle);

// 1 - nu_t(V) along the grid and its fitted exponential decay rate
// (minus the least-squares slope of log(1 - nu_t(V))).
struct EscapeProfile {
    std::vector<double> t_grid;
    std::vector<double> outside;
    double rate = 0.0;
};

EscapeProfile escape_profile(const core::OrbitTable& orbits, std::string_view f, const OrbitPredicate& in_neighborhood,
                             std::span<const double> t_grid);

}  // namespace geothermo::engine
