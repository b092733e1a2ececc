#include "geothermo/engine/measure.hpp"

#include <cmath>
#include <stdexcept>

#include "geothermo/core/errors.hpp"
#include "geothermo/core/logsum.hpp"
#include "geothermo/engine/pressure.hpp"

namespace geothermo::engine {

using core::LogSumExp;
using core::NamedPotential;
using core::OrbitTable;

namespace {

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

EmpiricalMeasure::EmpiricalMeasure(const OrbitTable& table, std::size_t count, std::vector<double> weights,
                                   double log_normalization)
    : table_(&table), count_(count), weights_(std::move(weights)), log_normalization_(log_normalization) {}

double EmpiricalMeasure::operator()(std::string_view omega) const {
    const std::size_t slot = table_->slot(omega);
    CompensatedSum acc;
    for (std::size_t i = 0; i < count_; ++i) acc.add(weights_[i] * (*table_)[i].integrals[slot]);
    return acc.value();
}

double EmpiricalMeasure::constant(double c) const {
    CompensatedSum acc;
    for (std::size_t i = 0; i < count_; ++i) acc.add(weights_[i] * c * (*table_)[i].length);
    return acc.value();
}

EmpiricalMeasure mu_t(const OrbitTable& orbits, std::string_view f, double t) {
    const std::size_t slot = orbits.slot(f);
    const std::size_t count = orbits.count_up_to(t);
    if (count == 0) throw EmptySelection("empty orbit selection for mu_t");
    // log Z = log sum e^{int f} length
    LogSumExp acc;
    for (std::size_t i = 0; i < count; ++i) acc.add(orbits[i].integrals[slot] + std::log(orbits[i].length));
    const double log_z = acc.value();
    std::vector<double> w(count);
    for (std::size_t i = 0; i < count; ++i) w[i] = std::exp(orbits[i].integrals[slot] - log_z);
    return EmpiricalMeasure(orbits, count, std::move(w), log_z);
}

ObservableBasis::ObservableBasis(std::vector<NamedPotential> observables, int truncation)
    : observables_(std::move(observables)) {
    if (truncation < 1) throw std::invalid_argument("basis truncation K must be >= 1");
    if (observables_.empty()) throw std::invalid_argument("basis needs at least one observable");
    for (const auto& g : observables_) {
        const auto norm = g.potential.sup_norm();
        if (norm && *norm > 1.0) throw std::invalid_argument("basis observable '" + g.name + "' has sup norm > 1");
    }
    size_ = std::min<int>(truncation, static_cast<int>(observables_.size()));
}

double ObservableBasis::truncation_bound() const { return std::ldexp(1.0, 1 - size_); }

double measure_distance(const MeasureEval& m1, const MeasureEval& m2, const ObservableBasis& basis) {
    double d = 0.0;
    for (int k = 0; k < basis.size(); ++k) {
        const auto& g = basis.observables()[static_cast<std::size_t>(k)];
        d += std::ldexp(std::abs(m1(g) - m2(g)), -(k + 1));
    }
    return d;
}

MeasureEval evaluator(const EmpiricalMeasure& mu) {
    return [&mu](const NamedPotential& g) { return mu(g.name); };
}

MeasureEval orbit_evaluator(const OrbitTable& orbits, std::size_t index) {
    return [&orbits, index](const NamedPotential& g) {
        return orbits.integral(index, g.name) / orbits[index].length;
    };
}

OrbitPredicate time_average_at_least(std::string omega, double threshold) {
    return [omega = std::move(omega), threshold](const OrbitTable& t, std::size_t i) {
        return t.integral(i, omega) / t[i].length >= threshold;
    };
}

OrbitPredicate time_average_at_most(std::string omega, double threshold) {
    return [omega = std::move(omega), threshold](const OrbitTable& t, std::size_t i) {
        return t.integral(i, omega) / t[i].length <= threshold;
    };
}

OrbitPredicate within_ball(const ObservableBasis& basis, std::vector<double> center, double radius) {
    if (static_cast<int>(center.size()) < basis.size())
        throw std::invalid_argument("ball center needs one value per basis observable");
    std::vector<std::string> names;
    for (int k = 0; k < basis.size(); ++k) names.push_back(basis.observables()[static_cast<std::size_t>(k)].name);
    return [names = std::move(names), center = std::move(center), radius](const OrbitTable& t, std::size_t i) {
        double d = 0.0;
        for (std::size_t k = 0; k < names.size(); ++k)
            d += std::ldexp(std::abs(t.integral(i, names[k]) / t[i].length - center[k]), -static_cast<int>(k + 1));
        return d < radius;
    };
}

OrbitPredicate negate(OrbitPredicate p) {
    return [p = std::move(p)](const OrbitTable& t, std::size_t i) { return !p(t, i); };
}

double nu_t(const OrbitTable& orbits, std::string_view f, double t, const OrbitPredicate& in_set) {
    const std::size_t slot = orbits.slot(f);
    const std::size_t count = orbits.count_up_to(t);
    if (count == 0) throw EmptySelection("empty orbit selection for nu_t");
    LogSumExp all, hit;
    for (std::size_t i = 0; i < count; ++i) {
        const double x = orbits[i].integrals[slot];
        all.add(x);
        if (in_set(orbits, i)) hit.add(x);
    }
    if (hit.empty()) return 0.0;
    return std::min(1.0, std::exp(hit.value() - all.value()));
}

EquidistributionReport equidistribution_report(const OrbitTable& orbits, std::string_view f,
                                               const ObservableBasis& basis, std::span<const double> t_grid,
                                               const std::optional<MeasureEval>& oracle) {
    if (t_grid.size() < 2) throw InsufficientGrid();
    EquidistributionReport rep;
    rep.t_grid.assign(t_grid.begin(), t_grid.end());
    rep.truncation_bound = basis.truncation_bound();

    std::vector<EmpiricalMeasure> measures;
    measures.reserve(t_grid.size());
    for (double t : t_grid) measures.push_back(mu_t(orbits, f, t));

    if (oracle) {
        for (const auto& mu : measures) rep.distances.push_back(measure_distance(evaluator(mu), *oracle, basis));
        const double slope = least_squares_slope(t_grid, rep.distances);
        rep.decreasing = slope < 0.0 && rep.distances.back() <= rep.distances.front();
    } else {
        const std::size_t n = measures.size();
        rep.cauchy.assign(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                rep.cauchy[i][j] = rep.cauchy[j][i] =
                    measure_distance(evaluator(measures[i]), evaluator(measures[j]), basis);
        rep.decreasing = rep.cauchy[n - 2][n - 1] <= rep.cauchy[0][1];
    }
    return rep;
}

EscapeProfile escape_profile(const OrbitTable& orbits, std::string_view f, const OrbitPredicate& in_neighborhood,
                             std::span<const double> t_grid) {
    EscapeProfile out;
    out.t_grid.assign(t_grid.begin(), t_grid.end());
    const OrbitPredicate outside = negate(in_neighborhood);
    std::vector<double> xs, ys;
    for (double t : t_grid) {
        const double v = nu_t(orbits, f, t, outside);
        out.outside.push_back(v);
        if (v > 0.0) {
            xs.push_back(t);
            ys.push_back(std::log(v));
        }
    }
    if (xs.size() < 2) throw InsufficientGrid("escape profile needs two grid points with mass outside the neighborhood");
    out.rate = -least_squares_slope(xs, ys);
    return out;
}

}  // namespace geothermo::engine
