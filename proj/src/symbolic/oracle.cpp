#include "geothermo/symbolic/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace geothermo::symbolic {

using core::Potential;

namespace {

constexpr double kPerronTol = 1e-14;
constexpr int kPerronMaxIter = 200000;

std::vector<double> depth1_weights(const ShiftSystem& shift, const Potential& f) {
    const core::CylinderPotential cyl = f.as_cylinder(shift.alphabet(), 1);
    if (cyl.depth != 1) throw std::invalid_argument("pressure oracle needs a depth-1 potential");
    return cyl.weights;
}

Eigen::VectorXd power_vector(const Eigen::MatrixXd& shifted, double& radius) {
    const auto n = shifted.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n));
    double lo = 0.0, hi = 0.0;
    for (int it = 0; it < kPerronMaxIter; ++it) {
        Eigen::VectorXd w = shifted * v;
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double r = w(i) / v(i);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        v = w / w.sum();
        if (hi - lo <= kPerronTol * hi) break;
    }
    radius = 0.5 * (lo + hi);
    return v;
}

}  // namespace

PerronData perron(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("perron needs a nonempty square matrix");
    if ((m.array() < 0.0).any()) throw std::invalid_argument("perron needs a nonnegative matrix");
    // Adding the identity keeps the Perron vectors and shifts the root by 1,
    // and makes an irreducible matrix primitive.
    const double scale = m.cwiseAbs().maxCoeff();
    if (!(scale > 0.0)) throw std::invalid_argument("perron needs a nonzero matrix");
    const Eigen::MatrixXd shifted = m / scale + Eigen::MatrixXd::Identity(m.rows(), m.cols());
    PerronData out;
    double r_right = 0.0, r_left = 0.0;
    out.right = power_vector(shifted, r_right);
    out.left = power_vector(shifted.transpose(), r_left);
    out.radius = (r_right - 1.0) * scale;
    return out;
}

Eigen::MatrixXd weighted_matrix(const ShiftSystem& shift, const Potential& f, double s) {
    const std::vector<double> w = depth1_weights(shift, f);
    const int m = shift.alphabet();
    Eigen::MatrixXd out(m, m);
    for (int i = 0; i < m; ++i) {
        const double e = std::exp((w[static_cast<std::size_t>(i)] - s) * shift.roof(i));
        for (int j = 0; j < m; ++j) out(i, j) = shift.adjacency()(i, j) * e;
    }
    return out;
}

double bowen_pressure(const ShiftSystem& shift, const Potential& f) {
    const std::vector<double> w = depth1_weights(shift, f);
    const int m = shift.alphabet();

    // Row sums bound the Perron root; pick s so every row sum is > 1 (lo)
    // or < 1 (hi).
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
        const double outdeg = shift.adjacency().row(i).sum();
        const double s_i = w[static_cast<std::size_t>(i)] + std::log(outdeg) / shift.roof(i);
        lo = std::min(lo, s_i);
        hi = std::max(hi, s_i);
    }
    lo -= 1.0;
    hi += 1.0;

    auto log_radius = [&](double s) { return std::log(perron(weighted_matrix(shift, f, s)).radius); };

    for (int i = 0; i < 20; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (log_radius(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }

    double s = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const PerronData pd = perron(weighted_matrix(shift, f, s));
        const double g = std::log(pd.radius);
        if (std::abs(pd.radius - 1.0) <= 1e-13) return s;
        if (g > 0.0)
            lo = s;
        else
            hi = s;
        // d/ds log radius = -sum u_i r_i v_i / sum u_i v_i
        double num = 0.0, den = 0.0;
        for (int i = 0; i < m; ++i) {
            num += pd.left(i) * shift.roof(i) * pd.right(i);
            den += pd.left(i) * pd.right(i);
        }
        double next = s + g * den / num;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == s) break;
        s = next;
    }
    const double radius = perron(weighted_matrix(shift, f, s)).radius;
    if (!(std::abs(radius - 1.0) <= 1e-12))
        throw std::runtime_error("bowen_pressure did not converge");
    return s;
}

MarkovMeasure::MarkovMeasure(const ShiftSystem& shift, Eigen::VectorXd stationary, Eigen::MatrixXd transition)
    : p_(std::move(stationary)), q_(std::move(transition)) {
    const int m = shift.alphabet();
    if (p_.size() != m || q_.rows() != m || q_.cols() != m)
        throw std::invalid_argument("Markov measure dimensions do not match the shift");
    if ((p_.array() < 0.0).any() || (q_.array() < 0.0).any())
        throw std::invalid_argument("Markov measure entries must be nonnegative");
    if (std::abs(p_.sum() - 1.0) > 1e-12) throw std::invalid_argument("stationary vector must sum to 1");
    for (int i = 0; i < m; ++i) {
        if (std::abs(q_.row(i).sum() - 1.0) > 1e-12) throw std::invalid_argument("transition rows must sum to 1");
        for (int j = 0; j < m; ++j)
            if (q_(i, j) != 0.0 && !shift.allowed(i, j))
                throw std::invalid_argument("transition charges a forbidden pair");
    }
    const Eigen::RowVectorXd drift = p_.transpose() * q_ - p_.transpose();
    if (drift.cwiseAbs().maxCoeff() > 1e-10) throw std::invalid_argument("stationary vector is not invariant");
}

MarkovMeasure MarkovMeasure::from_transition(const ShiftSystem& shift, Eigen::MatrixXd transition) {
    const auto m = transition.rows();
    if (transition.cols() != m || m != shift.alphabet())
        throw std::invalid_argument("transition dimensions do not match the shift");
    // (Q^T - I) p = 0 with the last equation replaced by sum p = 1.
    Eigen::MatrixXd sys = transition.transpose() - Eigen::MatrixXd::Identity(m, m);
    sys.row(m - 1).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    rhs(m - 1) = 1.0;
    Eigen::VectorXd p = sys.fullPivLu().solve(rhs);
    for (Eigen::Index i = 0; i < m; ++i)
        if (p(i) < 0.0 && p(i) > -1e-14) p(i) = 0.0;
    p /= p.sum();
    return MarkovMeasure(shift, std::move(p), std::move(transition));
}

MarkovMeasure MarkovMeasure::bernoulli(const ShiftSystem& shift, const Eigen::VectorXd& probabilities) {
    const auto m = probabilities.size();
    Eigen::MatrixXd q(m, m);
    for (Eigen::Index i = 0; i < m; ++i) q.row(i) = probabilities.transpose();
    return MarkovMeasure(shift, probabilities, std::move(q));
}

MarkovMeasure gibbs_equilibrium(const ShiftSystem& shift, const Potential& f) {
    const double s = bowen_pressure(shift, f);
    const Eigen::MatrixXd mat = weighted_matrix(shift, f, s);
    const PerronData pd = perron(mat);
    const auto m = mat.rows();
    Eigen::MatrixXd q(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) q(i, j) = mat(i, j) * pd.right(j) / pd.right(i);
        q.row(i) /= q.row(i).sum();
    }
    Eigen::VectorXd p = pd.left.cwiseProduct(pd.right);
    p /= p.sum();
    // Project onto exact invariance: p <- p Q, a few steps.
    for (int i = 0; i < 3; ++i) {
        p = (p.transpose() * q).transpose();
        p /= p.sum();
    }
    return MarkovMeasure(shift, std::move(p), std::move(q));
}

double mean_roof(const MarkovMeasure& m, const ShiftSystem& shift) {
    double acc = 0.0;
    for (int i = 0; i < shift.alphabet(); ++i) acc += m.stationary()(i) * shift.roof(i);
    return acc;
}

double flow_measure_eval(const MarkovMeasure& m, const ShiftSystem& shift, const Potential& omega) {
    if (const auto* c = std::get_if<core::ConstantPotential>(&omega.kind())) return c->value;
    const auto* cyl = std::get_if<core::CylinderPotential>(&omega.kind());
    if (cyl == nullptr) throw std::invalid_argument("flow_measure_eval needs a fiber-constant cylinder potential");
    if (cyl->alphabet != shift.alphabet()) throw std::invalid_argument("potential alphabet does not match the shift");

    // Sum over cylinders [w_0 .. w_{d-1}] of p(w_0) Q(w_0 w_1) ... omega(w) r(w_0).
    const int a = shift.alphabet();
    const int d = cyl->depth;
    std::vector<int> word(static_cast<std::size_t>(d));
    double acc = 0.0;
    auto rec = [&](auto&& self, int pos, double mass) -> void {
        if (mass == 0.0) return;
        if (pos == d) {
            acc += mass * cyl->at(word) * shift.roof(word[0]);
            return;
        }
        for (int s = 0; s < a; ++s) {
            word[static_cast<std::size_t>(pos)] = s;
            const double next = pos == 0 ? m.stationary()(s) : mass * m.transition()(word[static_cast<std::size_t>(pos - 1)], s);
            self(self, pos + 1, next);
        }
    };
    rec(rec, 0, 1.0);
    return acc / mean_roof(m, shift);
}

double flow_entropy(const MarkovMeasure& m, const ShiftSystem& shift) {
    double h = 0.0;
    const int a = shift.alphabet();
    for (int i = 0; i < a; ++i) {
        double row = 0.0;
        for (int j = 0; j < a; ++j) {
            const double q = m.transition()(i, j);
            if (q > 0.0) row -= q * std::log(q);
        }
        h += m.stationary()(i) * row;
    }
    return h / mean_roof(m, shift);
}

}  // namespace geothermo::symbolic
