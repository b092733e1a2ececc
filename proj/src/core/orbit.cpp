#include "geothermo/core/orbit.hpp"

#include <algorithm>
#include <stdexcept>

namespace geothermo::core {

bool orbit_less(const ClosedOrbit& a, const ClosedOrbit& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.label < b.label;
}

OrbitTable::OrbitTable(std::vector<ClosedOrbit> orbits, std::vector<std::string> potential_ids)
    : orbits_(std::move(orbits)), ids_(std::move(potential_ids)) {
    for (const auto& o : orbits_) {
        if (!(o.length > 0.0)) throw std::invalid_argument("closed orbit length must be positive");
        if (o.integrals.size() != ids_.size())
            throw std::invalid_argument("closed orbit integral cache does not match the table's potential ids");
    }
    std::stable_sort(orbits_.begin(), orbits_.end(), orbit_less);
}

bool OrbitTable::has_potential(std::string_view id) const {
    return std::find(ids_.begin(), ids_.end(), id) != ids_.end();
}

std::size_t OrbitTable::slot(std::string_view id) const {
    const auto it = std::find(ids_.begin(), ids_.end(), id);
    if (it == ids_.end()) throw std::out_of_range("no cached orbit integral for potential '" + std::string(id) + "'");
    return static_cast<std::size_t>(it - ids_.begin());
}

void OrbitTable::add_integrals(std::string id, std::span<const double> values) {
    if (has_potential(id)) throw std::invalid_argument("potential '" + id + "' already attached");
    if (values.size() != orbits_.size()) throw std::invalid_argument("one integral per orbit required");
    ids_.push_back(std::move(id));
    for (std::size_t i = 0; i < orbits_.size(); ++i) orbits_[i].integrals.push_back(values[i]);
}

std::size_t OrbitTable::count_up_to(double t) const {
    const auto it = std::upper_bound(orbits_.begin(), orbits_.end(), t,
                                     [](double v, const ClosedOrbit& o) { return v < o.length; });
    return static_cast<std::size_t>(it - orbits_.begin());
}

std::pair<std::size_t, std::size_t> OrbitTable::window(double lo, double hi) const {
    return {count_up_to(lo), count_up_to(hi)};
}

double OrbitTable::min_length() const {
    if (orbits_.empty()) throw std::logic_error("empty orbit table");
    return orbits_.front().length;
}

double OrbitTable::max_length() const {
    if (orbits_.empty()) throw std::logic_error("empty orbit table");
    return orbits_.back().length;
}

}  // namespace geothermo::core
