#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace geothermo::core {

// One periodic flow orbit. `code` is the canonical cyclic word: symbols of
// the shift for the symbolic backend, packed letter codes for the Schottky
// backend. Integrals are stored per slot of the owning OrbitTable.
struct ClosedOrbit {
    std::string label;
    std::vector<int> code;
    double length = 0.0;
    bool primitive = true;
    std::vector<double> integrals;
};

// A list of closed orbits sorted by (length, label), plus the cache keys for
// the potentials whose orbit integrals have been attached.
class OrbitTable {
public:
    OrbitTable() = default;
    OrbitTable(std::vector<ClosedOrbit> orbits, std::vector<std::string> potential_ids);

    const std::vector<ClosedOrbit>& orbits() const { return orbits_; }
    const std::vector<std::string>& potential_ids() const { return ids_; }
    std::size_t size() const { return orbits_.size(); }
    bool empty() const { return orbits_.empty(); }
    const ClosedOrbit& operator[](std::size_t i) const { return orbits_[i]; }

    bool has_potential(std::string_view id) const;
    // Throws std::out_of_range naming the missing id.
    std::size_t slot(std::string_view id) const;
    double integral(std::size_t orbit, std::string_view id) const { return orbits_[orbit].integrals[slot(id)]; }

    // Registers a new cache key with one value per orbit (same order).
    void add_integrals(std::string id, std::span<const double> values);

    // Number of leading orbits with length <= t.
    std::size_t count_up_to(double t) const;
    // Index range [first, last) of orbits with lo < length <= hi.
    std::pair<std::size_t, std::size_t> window(double lo, double hi) const;

    double min_length() const;
    double max_length() const;

private:
    std::vector<ClosedOrbit> orbits_;
    std::vector<std::string> ids_;
};

// Deterministic order used for every orbit list.
bool orbit_less(const ClosedOrbit& a, const ClosedOrbit& b);

}  // namespace geothermo::core
