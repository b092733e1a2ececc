#include "geothermo/fuchsian/schottky.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace geothermo::fuchsian {

using core::Letter;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool disjoint(const Disk& p, const Disk& q) {
    if (p.contains_infinity && q.contains_infinity) return false;
    if (p.contains_infinity) return std::abs(p.center - q.center) + q.radius < p.radius;
    if (q.contains_infinity) return std::abs(p.center - q.center) + p.radius < q.radius;
    return std::abs(p.center - q.center) > p.radius + q.radius;
}

bool strictly_inside(const Disk& disk, std::complex<double> z) {
    const double r = std::abs(z - disk.center);
    return disk.contains_infinity ? r > disk.radius : r < disk.radius;
}

}  // namespace

Mat2 SchottkySystem::pairing(const Disk& from, const Disk& to) {
    if (from.contains_infinity || to.contains_infinity)
        throw std::invalid_argument("pairing() builds generators for bounded disks only");
    // w = c2 - r1 r2 / (z - c1), normalized to det 1.
    const double k = from.radius * to.radius;
    const double s = 1.0 / std::sqrt(k);
    return {to.center * s, (-k - from.center * to.center) * s, s, -from.center * s};
}

SchottkySystem::SchottkySystem(std::vector<Mat2> generators, std::vector<Disk> disks)
    : generators_(std::move(generators)), disks_(std::move(disks)) {
    if (generators_.empty()) throw std::invalid_argument("Schottky group needs at least one generator");
    if (disks_.size() != 2 * generators_.size())
        throw std::invalid_argument("Schottky group needs two disks per generator");
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (std::abs(generators_[i].det() - 1.0) > 1e-12)
            throw std::invalid_argument("generator " + std::to_string(i) + " must have determinant 1");
    }
    for (const Disk& d : disks_)
        if (!(d.radius > 0.0) || !std::isfinite(d.center)) throw std::invalid_argument("disk radius must be positive");
    for (std::size_t i = 0; i < disks_.size(); ++i)
        for (std::size_t j = i + 1; j < disks_.size(); ++j)
            if (!disjoint(disks_[i], disks_[j]))
                throw std::invalid_argument("Schottky disks " + std::to_string(i) + " and " + std::to_string(j) +
                                            " are not disjoint");

    // Ping-pong: g maps the circle of D(g^-1) onto the circle of D(g) and an
    // exterior point into D(g).
    for (int i = 0; i < rank(); ++i) {
        const Mat2& g = generators_[static_cast<std::size_t>(i)];
        const Disk& src = disks_[static_cast<std::size_t>(2 * i + 1)];
        const Disk& dst = disks_[static_cast<std::size_t>(2 * i)];
        for (double theta : {0.3, 1.1, 2.0, 2.9}) {
            const std::complex<double> z = src.center + src.radius * std::polar(1.0, theta);
            const double err = std::abs(std::abs(g.apply(z) - dst.center) - dst.radius);
            if (err > 1e-9 * std::max(1.0, dst.radius))
                throw std::invalid_argument("generator " + std::to_string(i) + " does not pair its disks");
        }
        const std::complex<double> outside =
            src.contains_infinity ? std::complex<double>(src.center, 0.5 * src.radius)
                                  : std::complex<double>(src.center + 1.5 * src.radius, 0.5 * src.radius);
        if (!strictly_inside(dst, g.apply(outside)))
            throw std::invalid_argument("generator " + std::to_string(i) + " maps the exterior of D(g^-1) outside D(g)");
    }
}

SchottkySystem SchottkySystem::default_group() {
    // a and b are both conjugate to diag(2, 1/2) (trace 5/2); b is the
    // conjugate of a by z -> 10 z, so the disk pairs are nested apart.
    const Disk da{1.25, 1.0}, dA{-1.25, 1.0};
    const Disk db{12.5, 10.0}, dB{-12.5, 10.0};
    return SchottkySystem({pairing(dA, da), pairing(dB, db)}, {da, dA, db, dB});
}

Mat2 SchottkySystem::letter_matrix(Letter l) const {
    const Mat2& g = generators_.at(static_cast<std::size_t>(l.generator()));
    return l.is_inverse() ? g.inverse() : g;
}

double SchottkySystem::boundary_distance(Letter x, Letter y) const {
    if (x == y) throw std::invalid_argument("boundary_distance needs two different disks");
    const Disk& p = disk(x);
    const Disk& q = disk(y);
    const double dc = p.center - q.center;
    // Inversive distance of the two boundary circles.
    const double cosh_d = std::abs(p.radius * p.radius + q.radius * q.radius - dc * dc) / (2.0 * p.radius * q.radius);
    return std::acosh(std::max(1.0, cosh_d));
}

namespace {

Mat2 balanced_product(const SchottkySystem& system, std::span<const int> codes) {
    if (codes.empty()) return Mat2::identity();
    if (codes.size() == 1) return system.letter_matrix(Letter::from_code(codes[0]));
    const std::size_t half = codes.size() / 2;
    return balanced_product(system, codes.first(half)) * balanced_product(system, codes.subspan(half));
}

}  // namespace

Mat2 word_matrix(const SchottkySystem& system, std::span<const int> codes) {
    for (int c : codes)
        if (c < 0 || c >= system.letters()) throw std::invalid_argument("letter outside the group's alphabet");
    return balanced_product(system, codes);
}

Mat2 word_matrix(const SchottkySystem& system, const core::GeneratorWord& word) {
    const std::vector<int> codes = word.codes();
    return word_matrix(system, codes);
}

double translation_length(const Mat2& m) {
    const double t = std::abs(m.trace());
    if (!(t > 2.0)) throw std::domain_error("non-hyperbolic element");
    return 2.0 * std::acosh(0.5 * t);
}

GeodesicAxis axis_of(const Mat2& m) {
    GeodesicAxis axis;
    axis.translation_length = translation_length(m);
    const double tr = m.trace();
    if (m.c == 0.0) {
        const double finite = m.b / (m.d - m.a);
        if (std::abs(m.a) > std::abs(m.d)) {
            axis.attracting = kInf;
            axis.repelling = finite;
        } else {
            axis.attracting = finite;
            axis.repelling = kInf;
        }
        return axis;
    }
    const double disc = std::sqrt(tr * tr - 4.0);
    const double z1 = (m.a - m.d + disc) / (2.0 * m.c);
    const double z2 = (m.a - m.d - disc) / (2.0 * m.c);
    // Multiplier at a fixed point z is 1/(cz + d)^2; attracting when |cz + d| > 1.
    if (std::abs(m.c * z1 + m.d) > std::abs(m.c * z2 + m.d)) {
        axis.attracting = z1;
        axis.repelling = z2;
    } else {
        axis.attracting = z2;
        axis.repelling = z1;
    }
    return axis;
}

AxisPoint point_on_axis(const GeodesicAxis& axis, double s) {
    using namespace std::complex_literals;
    if (std::isinf(axis.attracting)) return {axis.repelling + 1i * std::exp(s), 1i};
    if (std::isinf(axis.repelling)) return {axis.attracting + 1i * std::exp(-s), -1i};
    const double mid = 0.5 * (axis.attracting + axis.repelling);
    const double rad = 0.5 * std::abs(axis.attracting - axis.repelling);
    const double sigma = axis.attracting > axis.repelling ? 1.0 : -1.0;
    const double sech = 1.0 / std::cosh(s);
    const double th = std::tanh(s);
    return {std::complex<double>(mid + sigma * rad * th, rad * sech), std::complex<double>(sigma * sech, -th)};
}

double hyperbolic_distance(std::complex<double> z, std::complex<double> w) {
    return 2.0 * std::asinh(std::abs(z - w) / (2.0 * std::sqrt(z.imag() * w.imag())));
}

}  // namespace geothermo::fuchsian
