#include "geothermo/core/potential.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geothermo::core {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

double CylinderPotential::at(std::span<const int> word) const {
    std::size_t idx = 0;
    for (int i = 0; i < depth; ++i) idx = idx * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(word[static_cast<std::size_t>(i)]);
    return weights[idx];
}

Potential Potential::constant(double c) { return Potential(ConstantPotential{c}); }

Potential Potential::per_symbol(std::vector<double> weights) {
    const int m = static_cast<int>(weights.size());
    return cylinder(m, 1, std::move(weights));
}

Potential Potential::cylinder(int alphabet, int depth, std::vector<double> weights) {
    if (alphabet < 1) throw std::invalid_argument("cylinder potential needs a nonempty alphabet");
    if (depth < 1) throw std::invalid_argument("cylinder depth must be positive");
    if (weights.size() != ipow(static_cast<std::size_t>(alphabet), depth))
        throw std::invalid_argument("cylinder weights must cover every word of the given depth");
    for (double w : weights)
        if (!std::isfinite(w)) throw std::invalid_argument("cylinder weights must be finite");
    return Potential(CylinderPotential{alphabet, depth, std::move(weights)});
}

Potential Potential::indicator(int alphabet, std::span<const int> word) {
    const int depth = static_cast<int>(word.size());
    std::vector<double> w(ipow(static_cast<std::size_t>(alphabet), depth), 0.0);
    std::size_t idx = 0;
    for (int s : word) {
        if (s < 0 || s >= alphabet) throw std::invalid_argument("indicator symbol outside alphabet");
        idx = idx * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(s);
    }
    w[idx] = 1.0;
    return cylinder(alphabet, depth, std::move(w));
}

Potential Potential::sampled(std::function<double(const TangentVector&)> callback,
                             std::optional<double> quadrature_step) {
    if (!callback) throw std::invalid_argument("sampled potential needs a callback");
    if (quadrature_step && !(*quadrature_step > 0.0))
        throw std::invalid_argument("quadrature_step must be positive");
    return Potential(SampledPotential{std::move(callback), quadrature_step});
}

std::optional<double> Potential::sup_norm() const {
    if (const auto* c = std::get_if<ConstantPotential>(&kind_)) return std::abs(c->value);
    if (const auto* cyl = std::get_if<CylinderPotential>(&kind_)) {
        double m = 0.0;
        for (double w : cyl->weights) m = std::max(m, std::abs(w));
        return m;
    }
    return std::nullopt;
}

CylinderPotential Potential::as_cylinder(int alphabet, int depth) const {
    if (const auto* c = std::get_if<ConstantPotential>(&kind_)) {
        return CylinderPotential{alphabet, depth,
                                 std::vector<double>(ipow(static_cast<std::size_t>(alphabet), depth), c->value)};
    }
    if (const auto* cyl = std::get_if<CylinderPotential>(&kind_)) {
        if (cyl->alphabet != alphabet) throw std::invalid_argument("cylinder potential alphabet mismatch");
        if (cyl->depth > depth) throw std::invalid_argument("cannot lower the depth of a cylinder potential");
        const std::size_t tail = ipow(static_cast<std::size_t>(alphabet), depth - cyl->depth);
        std::vector<double> w(cyl->weights.size() * tail);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = cyl->weights[i / tail];
        return CylinderPotential{alphabet, depth, std::move(w)};
    }
    throw std::invalid_argument("sampled potential has no cylinder form");
}

Potential Potential::operator+(const Potential& rhs) const {
    if (is_sampled() || rhs.is_sampled()) throw std::invalid_argument("cannot add sampled potentials");
    if (is_constant() && rhs.is_constant())
        return constant(std::get<ConstantPotential>(kind_).value + std::get<ConstantPotential>(rhs.kind_).value);
    const auto& ref = is_cylinder() ? std::get<CylinderPotential>(kind_) : std::get<CylinderPotential>(rhs.kind_);
    int depth = ref.depth;
    if (is_cylinder()) depth = std::max(depth, std::get<CylinderPotential>(kind_).depth);
    if (rhs.is_cylinder()) depth = std::max(depth, std::get<CylinderPotential>(rhs.kind_).depth);
    CylinderPotential a = as_cylinder(ref.alphabet, depth);
    const CylinderPotential b = rhs.as_cylinder(ref.alphabet, depth);
    for (std::size_t i = 0; i < a.weights.size(); ++i) a.weights[i] += b.weights[i];
    return Potential(std::move(a));
}

Potential Potential::scaled(double s) const {
    if (const auto* c = std::get_if<ConstantPotential>(&kind_)) return constant(c->value * s);
    if (const auto* cyl = std::get_if<CylinderPotential>(&kind_)) {
        CylinderPotential out = *cyl;
        for (double& w : out.weights) w *= s;
        return Potential(std::move(out));
    }
    throw std::invalid_argument("cannot scale sampled potentials");
}

}  // namespace geothermo::core
