#include "geothermo/symbolic/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "geothermo/core/necklace.hpp"

namespace geothermo::symbolic {

using core::ClosedOrbit;
using core::NamedPotential;
using core::OrbitTable;
using core::Potential;

namespace {

bool strongly_connected(const Eigen::MatrixXd& a) {
    const auto n = a.rows();
    auto reach_all = [&](bool transpose) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<Eigen::Index> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const auto i = stack.back();
            stack.pop_back();
            for (Eigen::Index j = 0; j < n; ++j) {
                const double e = transpose ? a(j, i) : a(i, j);
                if (e != 0.0 && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    stack.push_back(j);
                }
            }
        }
        return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
    };
    return reach_all(false) && reach_all(true);
}

}  // namespace

ShiftSystem::ShiftSystem(std::vector<std::vector<int>> adjacency, std::vector<double> roof) {
    const std::size_t m = adjacency.size();
    if (m == 0) throw std::invalid_argument("adjacency must be nonempty");
    for (const auto& row : adjacency)
        if (row.size() != m) throw std::invalid_argument("adjacency must be square");
    adjacency_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const int e = adjacency[i][j];
            if (e != 0 && e != 1) throw std::invalid_argument("adjacency entries must be 0 or 1");
            adjacency_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e;
        }
    }
    if (!strongly_connected(adjacency_)) throw std::invalid_argument("adjacency must be irreducible");
    if (roof.size() != m) throw std::invalid_argument("roof must have one entry per symbol");
    for (double r : roof)
        if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("roof must be positive");
    alphabet_ = static_cast<int>(m);
    roof_ = std::move(roof);
}

ShiftSystem ShiftSystem::full(int symbols, std::vector<double> roof) {
    if (symbols < 1) throw std::invalid_argument("full shift needs at least one symbol");
    if (roof.empty()) roof.assign(static_cast<std::size_t>(symbols), 1.0);
    return ShiftSystem(std::vector<std::vector<int>>(static_cast<std::size_t>(symbols),
                                                     std::vector<int>(static_cast<std::size_t>(symbols), 1)),
                       std::move(roof));
}

ShiftSystem ShiftSystem::golden_mean(std::vector<double> roof) {
    if (roof.empty()) roof = {1.0, 1.0};
    return ShiftSystem({{1, 1}, {1, 0}}, std::move(roof));
}

double ShiftSystem::min_roof() const { return *std::min_element(roof_.begin(), roof_.end()); }

double orbit_length(const ShiftSystem& shift, std::span<const int> code) {
    double len = 0.0;
    for (int s : code) len += shift.roof(s);
    return len;
}

double orbit_integral(const ShiftSystem& shift, std::span<const int> code, const Potential& f) {
    if (const auto* c = std::get_if<core::ConstantPotential>(&f.kind()))
        return c->value * orbit_length(shift, code);
    const auto* cyl = std::get_if<core::CylinderPotential>(&f.kind());
    if (cyl == nullptr) throw std::invalid_argument("sampled potentials are not defined on a symbolic system");
    if (cyl->alphabet != shift.alphabet()) throw std::invalid_argument("potential alphabet does not match the shift");

    const std::size_t n = code.size();
    const auto d = static_cast<std::size_t>(cyl->depth);
    std::vector<int> window(d);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < d; ++j) window[j] = code[(k + j) % n];
        sum += cyl->at(window) * shift.roof(code[k]);
    }
    return sum;
}

std::string necklace_label(const ShiftSystem& shift, std::span<const int> code) {
    std::string out;
    const bool compact = shift.alphabet() <= 10;
    for (std::size_t i = 0; i < code.size(); ++i) {
        if (!compact && i > 0) out += '.';
        out += std::to_string(code[i]);
    }
    return out;
}

namespace {

OrbitTable run_search(const ShiftSystem& shift, int max_len, double budget, std::span<const NamedPotential> potentials,
                      unsigned threads) {
    const int m = shift.alphabet();
    core::NecklaceSearch search;
    search.alphabet = m;
    search.max_length = max_len;
    search.budget = budget;
    search.allowed.resize(static_cast<std::size_t>(m * m));
    search.step_cost.resize(static_cast<std::size_t>(m * m));
    search.first_cost.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        search.first_cost[static_cast<std::size_t>(i)] = shift.roof(i);
        for (int j = 0; j < m; ++j) {
            search.allowed[static_cast<std::size_t>(i * m + j)] = shift.allowed(i, j) ? 1 : 0;
            search.step_cost[static_cast<std::size_t>(i * m + j)] = shift.roof(j);
        }
    }

    auto make = [&](std::span<const int> word, double) -> std::optional<ClosedOrbit> {
        ClosedOrbit o;
        o.code.assign(word.begin(), word.end());
        o.label = necklace_label(shift, word);
        o.length = orbit_length(shift, word);
        o.primitive = true;
        o.integrals.reserve(potentials.size());
        for (const auto& p : potentials) o.integrals.push_back(orbit_integral(shift, word, p.potential));
        return o;
    };
    std::vector<ClosedOrbit> orbits = search.run(threads, make);

    std::vector<std::string> ids;
    for (const auto& p : potentials) ids.push_back(p.name);
    return OrbitTable(std::move(orbits), std::move(ids));
}

}  // namespace

OrbitTable enumerate_orbits(const ShiftSystem& shift, int max_word_length, std::span<const NamedPotential> potentials,
                            unsigned threads) {
    if (max_word_length < 1) throw std::invalid_argument("max_word_length must be >= 1");
    return run_search(shift, max_word_length, std::numeric_limits<double>::infinity(), potentials, threads);
}

OrbitTable enumerate_orbits_up_to(const ShiftSystem& shift, double t_max, std::span<const NamedPotential> potentials,
                                  unsigned threads) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    const int max_len = static_cast<int>(std::floor(t_max / shift.min_roof() + 1e-9));
    if (max_len < 1) {
        std::vector<std::string> ids;
        for (const auto& p : potentials) ids.push_back(p.name);
        return OrbitTable({}, std::move(ids));
    }
    return run_search(shift, max_len, t_max, potentials, threads);
}

void attach_potential(const ShiftSystem& shift, OrbitTable& table, const NamedPotential& f) {
    std::vector<double> values;
    values.reserve(table.size());
    for (const auto& o : table.orbits()) values.push_back(orbit_integral(shift, o.code, f.potential));
    table.add_integrals(f.name, values);
}

std::vector<NamedPotential> cylinder_indicators(const ShiftSystem& shift, int max_depth) {
    const int m = shift.alphabet();
    std::vector<NamedPotential> out;
    std::vector<int> word;
    auto rec = [&](auto&& self, int depth) -> void {
        if (static_cast<int>(word.size()) == depth) {
            out.push_back({"[" + necklace_label(shift, word) + "]", Potential::indicator(m, word)});
            return;
        }
        for (int s = 0; s < m; ++s) {
            if (!word.empty() && !shift.allowed(word.back(), s)) continue;
            word.push_back(s);
            self(self, depth);
            word.pop_back();
        }
    };
    for (int d = 1; d <= max_depth; ++d) rec(rec, d);
    return out;
}

}  // namespace geothermo::symbolic
