#pragma once

#include <Eigen/Dense>

#include "geothermo/core/potential.hpp"
#include "geothermo/symbolic/shift.hpp"

namespace geothermo::symbolic {

// Shift-invariant Markov measure: stationary vector p and row-stochastic Q
// supported on the adjacency matrix.
class MarkovMeasure {
public:
    // Validates p Q = p, sum p = 1, rows of Q sum to 1, Q_ij = 0 off A.
    MarkovMeasure(const ShiftSystem& shift, Eigen::VectorXd stationary, Eigen::MatrixXd transition);
    // Stationary vector solved from Q (Q must have a single recurrent class).
    static MarkovMeasure from_transition(const ShiftSystem& shift, Eigen::MatrixXd transition);
    // i.i.d. measure; requires a full shift.
    static MarkovMeasure bernoulli(const ShiftSystem& shift, const Eigen::VectorXd& probabilities);

    const Eigen::VectorXd& stationary() const { return p_; }
    const Eigen::MatrixXd& transition() const { return q_; }

private:
    Eigen::VectorXd p_;
    Eigen::MatrixXd q_;
};

struct PerronData {
    double radius = 0.0;
    Eigen::VectorXd right;  // M v = radius v, v > 0, sum v = 1
    Eigen::VectorXd left;   // u M = radius u, u > 0, sum u = 1
};

// Perron root and eigenvectors of an irreducible nonnegative matrix by power
// iteration on M + I (aperiodic even when M is periodic), stopped when the
// Collatz-Wielandt bounds agree to 1e-14 relative.
PerronData perron(const Eigen::MatrixXd& m);

// M(s)_ij = A_ij exp((f(i) - s) r(i)) for a depth-1 (or constant) potential.
Eigen::MatrixXd weighted_matrix(const ShiftSystem& shift, const core::Potential& f, double s);

// Flow pressure: the unique s with spectral radius of M(s) equal to 1.
// Bisection (20 steps) on the bracketed, strictly decreasing log radius,
// then Newton. |radius(M(s*)) - 1| <= 1e-12 on return.
double bowen_pressure(const ShiftSystem& shift, const core::Potential& f);

// Equilibrium state of f as the Markov measure of the normalized weighted
// matrix at s* = bowen_pressure(f).
MarkovMeasure gibbs_equilibrium(const ShiftSystem& shift, const core::Potential& f);

// Integral of a fiber-constant cylinder potential against the flow lift of m:
// sum_w m[w] omega(w) r(w_0) / sum_i p_i r_i.
double flow_measure_eval(const MarkovMeasure& m, const ShiftSystem& shift, const core::Potential& omega);

// Abramov: shift entropy divided by the mean roof.
double flow_entropy(const MarkovMeasure& m, const ShiftSystem& shift);

double mean_roof(const MarkovMeasure& m, const ShiftSystem& shift);

}  // namespace geothermo::symbolic
