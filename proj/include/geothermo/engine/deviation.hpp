#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "geothermo/core/orbit.hpp"
#include "geothermo/core/potential.hpp"
#include "geothermo/engine/measure.hpp"
#include "geothermo/symbolic/oracle.hpp"
#include "geothermo/symbolic/shift.hpp"

namespace geothermo::engine {

// rho(m) = P(f) - (h(m) + int f dm). Throws VariationalViolation when the
// value is below -1e-9, otherwise returns max(rho, 0).
double rho(double entropy, double mean_f, double pressure_f);

// rho of a Markov measure, with entropy and mean from the oracle.
double rho(const symbolic::MarkovMeasure& m, const symbolic::ShiftSystem& shift, const core::Potential& f,
           double pressure_f);

// Q_f(omega) = P(f + omega) - P(f), both depth-1 on a shift.
double q_f(const symbolic::ShiftSystem& shift, const core::Potential& omega, const core::Potential& f);

enum class Direction { at_least, at_most };

// K = {m : int omega dm >= threshold} (or <=).
struct HalfSpace {
    core::Potential observable;
    Direction direction = Direction::at_least;
    double threshold = 0.0;
};

OrbitPredicate half_space_predicate(std::string observable_name, Direction direction, double threshold);

struct RhoResult {
    double value = 0.0;       // +inf when K holds no invariant measure
    double multiplier = 0.0;  // Lagrange multiplier lambda >= 0
    bool feasible = true;
};

// inf over invariant measures in K of rho. Computed from the dual
//   rho(K) = sup_{lambda >= 0} lambda c - Q_f(lambda omega')
// with omega' = +-omega, c = +-threshold. The supremum is attained where the
// mean of omega' under the equilibrium state of f + lambda omega' equals c,
// found by bisection on lambda.
RhoResult rho_of_set(const symbolic::ShiftSystem& shift, const core::Potential& f, const HalfSpace& k);

// Direct search over Markov measures (softmax rows, quadratic penalty,
// gradient descent, `restarts` random starts). Infeasible end points are
// mixed with a periodic measure inside K, which keeps rho affine. Returns an
// upper bound on rho(K); meant as a cross-check of rho_of_set.
double rho_of_set_search(const symbolic::ShiftSystem& shift, const core::Potential& f, const HalfSpace& k,
                         int restarts = 50, std::uint64_t seed = 1);

struct DeviationProfile {
    std::vector<double> t_grid;
    std::vector<double> nu;
    double rate = 0.0;  // least-squares slope of log nu_t over points with nu_t > 0
};

// Throws EventNeverRealized if nu_t = 0 on the whole grid and
// InsufficientGrid if fewer than 4 grid points have nu_t > 0.
DeviationProfile deviation_rate(const core::OrbitTable& orbits, std::string_view f, const OrbitPredicate& in_set,
                                std::span<const double> t_grid);

}  // namespace geothermo::engine
