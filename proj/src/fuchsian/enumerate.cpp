#include "geothermo/fuchsian/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "geothermo/core/necklace.hpp"

namespace geothermo::fuchsian {

using core::ClosedOrbit;
using core::ConjugacyClass;
using core::GeneratorWord;
using core::Letter;
using core::NamedPotential;
using core::OrbitTable;
using core::Potential;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Point where a geodesic crosses the boundary circle of a disk.
std::complex<double> crossing(const GeodesicAxis& axis, const Disk& disk) {
    const double rho2 = disk.radius * disk.radius;
    if (std::isinf(axis.attracting) || std::isinf(axis.repelling)) {
        const double x0 = std::isinf(axis.attracting) ? axis.repelling : axis.attracting;
        const double dx = x0 - disk.center;
        const double y2 = rho2 - dx * dx;
        if (!(y2 > 0.0)) throw std::logic_error("axis misses a boundary circle it must cross");
        return {x0, std::sqrt(y2)};
    }
    const double m = 0.5 * (axis.attracting + axis.repelling);
    const double r = 0.5 * std::abs(axis.attracting - axis.repelling);
    const double dc = disk.center - m;
    if (dc == 0.0) throw std::logic_error("axis concentric with a boundary circle");
    const double x = 0.5 * (m + disk.center) + (r * r - rho2) / (2.0 * dc);
    const double y2 = r * r - (x - m) * (x - m);
    if (!(y2 > 0.0)) throw std::logic_error("axis misses a boundary circle it must cross");
    return {x, std::sqrt(y2)};
}

std::vector<int> rotated(std::span<const int> codes, std::size_t start) {
    std::vector<int> out(codes.begin() + static_cast<std::ptrdiff_t>(start), codes.end());
    out.insert(out.end(), codes.begin(), codes.begin() + static_cast<std::ptrdiff_t>(start));
    return out;
}

std::vector<int> inverse_codes(std::span<const int> codes) {
    std::vector<int> out(codes.rbegin(), codes.rend());
    for (int& c : out) c ^= 1;
    return out;
}

double default_step(double length) { return std::min(length / 1024.0, 1e-2); }

}  // namespace

double class_length(const SchottkySystem& system, const ConjugacyClass& cls) {
    const double root = translation_length(word_matrix(system, cls.primitive_root));
    return cls.power * root;
}

std::vector<double> segment_times(const SchottkySystem& system, std::span<const int> codes) {
    const std::size_t n = codes.size();
    if (n == 0) throw std::invalid_argument("segment_times needs a nonempty word");
    if (n >= 2 && codes.front() == (codes.back() ^ 1)) throw std::invalid_argument("word is not cyclically reduced");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::vector<int> rot = rotated(codes, i);
        const GeodesicAxis axis = axis_of(word_matrix(system, rot));
        const Letter prev = Letter::from_code(codes[(i + n - 1) % n]);
        const Letter next = Letter::from_code(codes[i]);
        const auto entry = crossing(axis, system.disk(prev.inverse()));
        const auto exit = crossing(axis, system.disk(next));
        out[i] = hyperbolic_distance(entry, exit);
    }
    return out;
}

namespace {

double integral_from_codes(const SchottkySystem& system, std::span<const int> canonical, double length,
                           const Potential& f) {
    if (const auto* c = std::get_if<core::ConstantPotential>(&f.kind())) return c->value * length;

    if (const auto* cyl = std::get_if<core::CylinderPotential>(&f.kind())) {
        if (cyl->alphabet != system.letters())
            throw std::invalid_argument("letter potential alphabet must be 2 x rank");
        const std::vector<double> times = segment_times(system, canonical);
        const std::size_t n = canonical.size();
        const auto d = static_cast<std::size_t>(cyl->depth);
        std::vector<int> window(d);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < d; ++j) window[j] = canonical[(i + j) % n];
            sum += cyl->at(window) * times[i];
        }
        return sum;
    }

    const auto& sampled = std::get<core::SampledPotential>(f.kind());
    const GeodesicAxis axis = axis_of(word_matrix(system, canonical));
    const double step = sampled.quadrature_step.value_or(default_step(length));
    const auto steps = static_cast<std::size_t>(std::ceil(length / step - 1e-12));
    const double h = length / static_cast<double>(std::max<std::size_t>(steps, 1));
    double sum = 0.0;
    for (std::size_t j = 0; j < std::max<std::size_t>(steps, 1); ++j) {
        const AxisPoint p = point_on_axis(axis, (static_cast<double>(j) + 0.5) * h);
        sum += sampled.callback({p.point, p.direction});
    }
    return sum * h;
}

}  // namespace

double orbit_integral(const SchottkySystem& system, const ConjugacyClass& cls, const Potential& f) {
    const double length = class_length(system, cls);
    const std::vector<int> codes = cls.canonical.codes();
    return integral_from_codes(system, codes, length, f);
}

namespace {

OrbitTable run_search(const SchottkySystem& system, int max_len, double t_max,
                      std::span<const NamedPotential> potentials, unsigned threads) {
    const int m = system.letters();
    core::NecklaceSearch search;
    search.alphabet = m;
    search.max_length = max_len;
    search.allowed.assign(static_cast<std::size_t>(m * m), 0);
    const bool prune = std::isfinite(t_max);
    if (prune) {
        search.budget = t_max;
        search.step_cost.assign(static_cast<std::size_t>(m * m), kInf);
    }
    for (int x = 0; x < m; ++x) {
        for (int y = 0; y < m; ++y) {
            if (y == (x ^ 1)) continue;
            search.allowed[static_cast<std::size_t>(x * m + y)] = 1;
            if (prune)
                search.step_cost[static_cast<std::size_t>(x * m + y)] =
                    system.boundary_distance(Letter::from_code(x ^ 1), Letter::from_code(y));
        }
    }
    if (prune) search.closing_cost = search.step_cost;

    auto make = [&](std::span<const int> word, double) -> std::optional<ClosedOrbit> {
        // One of each inverse pair: keep the orientation whose least rotation is smaller.
        std::vector<int> inv = inverse_codes(word);
        const std::size_t start = core::least_rotation(inv);
        inv = rotated(inv, start);
        if (!std::lexicographical_compare(word.begin(), word.end(), inv.begin(), inv.end())) return std::nullopt;

        const Mat2 mat = word_matrix(system, word);
        const double length = translation_length(mat);
        if (length > t_max) return std::nullopt;

        ClosedOrbit o;
        o.code.assign(word.begin(), word.end());
        o.label = GeneratorWord::from_codes(word).to_string();
        o.length = length;
        o.primitive = true;
        o.integrals.reserve(potentials.size());
        for (const auto& p : potentials) o.integrals.push_back(integral_from_codes(system, word, length, p.potential));
        return o;
    };
    std::vector<ClosedOrbit> orbits = search.run(threads, make);

    std::vector<std::string> ids;
    for (const auto& p : potentials) ids.push_back(p.name);
    return OrbitTable(std::move(orbits), std::move(ids));
}

}  // namespace

OrbitTable enumerate_classes(const SchottkySystem& system, double t_max, std::span<const NamedPotential> potentials,
                             unsigned threads) {
    if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
    // Every letter adds at least the smallest boundary distance.
    double min_step = kInf;
    const int m = system.letters();
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            if (y != (x ^ 1))
                min_step = std::min(min_step, system.boundary_distance(Letter::from_code(x ^ 1), Letter::from_code(y)));
    if (!(min_step > 0.0)) {
        // Disjoint disks always give a positive bound; this is unreachable for validated systems.
        throw std::logic_error("length lower bound unavailable");
    }
    const int max_len = static_cast<int>(std::floor(t_max / min_step));
    if (max_len < 1) {
        std::vector<std::string> ids;
        for (const auto& p : potentials) ids.push_back(p.name);
        return OrbitTable({}, std::move(ids));
    }
    return run_search(system, max_len, t_max, potentials, threads);
}

OrbitTable enumerate_classes_by_word_length(const SchottkySystem& system, int max_word_length,
                                            std::span<const NamedPotential> potentials, unsigned threads) {
    if (max_word_length < 1) throw std::invalid_argument("max_word_length must be >= 1");
    return run_search(system, max_word_length, kInf, potentials, threads);
}

void attach_potential(const SchottkySystem& system, OrbitTable& table, const NamedPotential& f) {
    std::vector<double> values;
    values.reserve(table.size());
    for (const auto& o : table.orbits()) values.push_back(integral_from_codes(system, o.code, o.length, f.potential));
    table.add_integrals(f.name, values);
}

std::vector<NamedPotential> letter_indicators(const SchottkySystem& system, int max_depth) {
    const int m = system.letters();
    std::vector<NamedPotential> out;
    std::vector<int> word;
    auto rec = [&](auto&& self, int depth) -> void {
        if (static_cast<int>(word.size()) == depth) {
            out.push_back({"[" + GeneratorWord::from_codes(word).to_string() + "]", Potential::indicator(m, word)});
            return;
        }
        for (int x = 0; x < m; ++x) {
            if (!word.empty() && x == (word.back() ^ 1)) continue;
            word.push_back(x);
            self(self, depth);
            word.pop_back();
        }
    };
    for (int d = 1; d <= max_depth; ++d) rec(rec, d);
    return out;
}

}  // namespace geothermo::fuchsian
