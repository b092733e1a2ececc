#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace geothermo::core {

struct ConstantPotential {
    double value = 0.0;
};

// Locally constant potential depending on the first `depth` symbols of the
// forward code. Weights are dense over all words of length `depth`, indexed
// in base `alphabet` with the first symbol most significant.
struct CylinderPotential {
    int alphabet = 0;
    int depth = 1;
    std::vector<double> weights;

    double at(std::span<const int> word) const;
};

// Unit tangent vector in the upper half-plane: base point z and unit
// direction (|direction| = 1, Euclidean angle of the tangent).
struct TangentVector {
    std::complex<double> point;
    std::complex<double> direction;
};

// Callback potential on the unit tangent bundle of the upper half-plane.
// The callback must be invariant under the group for orbit integrals to be
// independent of the class representative; that is the caller's contract.
struct SampledPotential {
    std::function<double(const TangentVector&)> callback;
    // Unset = per-orbit default (length/1024, capped at 1e-2).
    std::optional<double> quadrature_step;
};

class Potential {
public:
    using Kind = std::variant<ConstantPotential, CylinderPotential, SampledPotential>;

    static Potential constant(double c);
    // Depth-1 weights, one per symbol.
    static Potential per_symbol(std::vector<double> weights);
    static Potential cylinder(int alphabet, int depth, std::vector<double> weights);
    // Indicator of the cylinder [word].
    static Potential indicator(int alphabet, std::span<const int> word);
    static Potential sampled(std::function<double(const TangentVector&)> callback,
                             std::optional<double> quadrature_step = std::nullopt);

    const Kind& kind() const { return kind_; }
    bool is_constant() const { return std::holds_alternative<ConstantPotential>(kind_); }
    bool is_cylinder() const { return std::holds_alternative<CylinderPotential>(kind_); }
    bool is_sampled() const { return std::holds_alternative<SampledPotential>(kind_); }

    // Sup norm; nullopt for sampled potentials.
    std::optional<double> sup_norm() const;

    // Pointwise sum / scaling. Constants and cylinders of any depth mix
    // (promoted to the larger depth); sampled potentials do not.
    Potential operator+(const Potential& rhs) const;
    Potential scaled(double s) const;

    // Expand to a cylinder potential of at least `depth` over `alphabet`.
    CylinderPotential as_cylinder(int alphabet, int depth) const;

private:
    explicit Potential(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

struct NamedPotential {
    std::string name;
    Potential potential;
};

}  // namespace geothermo::core
