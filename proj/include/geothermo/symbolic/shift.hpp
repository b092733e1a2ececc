#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "geothermo/core/orbit.hpp"
#include "geothermo/core/potential.hpp"

namespace geothermo::symbolic {

// Suspension flow over a subshift of finite type with a per-symbol roof.
// Periodic flow orbits are the admissible primitive necklaces; the orbit of
// the necklace x_0..x_{n-1} has period r(x_0) + ... + r(x_{n-1}).
//
// Higher-depth roofs and potentials reduce to depth 1 by recoding the
// alphabet into (depth)-blocks; only depth 1 is modelled here.
class ShiftSystem {
public:
    // Throws std::invalid_argument: "adjacency must be square",
    // "adjacency entries must be 0 or 1", "adjacency must be irreducible",
    // "roof must be positive", "roof must have one entry per symbol".
    ShiftSystem(std::vector<std::vector<int>> adjacency, std::vector<double> roof);

    // Full shift on m symbols; unit roof when `roof` is empty.
    static ShiftSystem full(int symbols, std::vector<double> roof = {});
    // Golden-mean shift: 11 forbidden.
    static ShiftSystem golden_mean(std::vector<double> roof = {});

    int alphabet() const { return alphabet_; }
    int depth() const { return 1; }
    bool allowed(int from, int to) const { return adjacency_(from, to) != 0.0; }
    double roof(int symbol) const { return roof_[static_cast<std::size_t>(symbol)]; }
    const std::vector<double>& roofs() const { return roof_; }
    const Eigen::MatrixXd& adjacency() const { return adjacency_; }
    double min_roof() const;

private:
    int alphabet_ = 0;
    Eigen::MatrixXd adjacency_;
    std::vector<double> roof_;
};

// Flow period of a cyclic word.
double orbit_length(const ShiftSystem& shift, std::span<const int> code);

// Integral of a fiber-constant potential over one period of the orbit:
// sum_k f(x_k x_{k+1} ...) r(x_k), reading the cyclic word forward.
double orbit_integral(const ShiftSystem& shift, std::span<const int> code, const core::Potential& f);

std::string necklace_label(const ShiftSystem& shift, std::span<const int> code);

// All primitive admissible necklaces of word length <= max_word_length,
// orientation not collapsed, with integrals attached for every potential.
core::OrbitTable enumerate_orbits(const ShiftSystem& shift, int max_word_length,
                                  std::span<const core::NamedPotential> potentials = {}, unsigned threads = 0);

// All primitive periodic orbits with flow period <= t_max.
core::OrbitTable enumerate_orbits_up_to(const ShiftSystem& shift, double t_max,
                                        std::span<const core::NamedPotential> potentials = {},
                                        unsigned threads = 0);

// Attaches integrals of one more potential to an enumerated table.
void attach_potential(const ShiftSystem& shift, core::OrbitTable& table, const core::NamedPotential& f);

// Depth-1 and depth-2 cylinder indicators ("[0]", "[01]", ...), in that order.
std::vector<core::NamedPotential> cylinder_indicators(const ShiftSystem& shift, int max_depth);

}  // namespace geothermo::symbolic
