#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "geothermo/core/word.hpp"

namespace geothermo::fuchsian {

// 2x2 real matrix acting on the upper half-plane by Mobius transformations.
struct Mat2 {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static Mat2 identity() { return {}; }
    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
    // Closed-form inverse for det = 1 (swap diagonal, negate off-diagonal).
    Mat2 inverse() const { return {d, -b, -c, a}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    std::complex<double> apply(std::complex<double> z) const { return (a * z + b) / (c * z + d); }
};

// Closed disk in the Riemann sphere bounded by a circle centred on the real
// axis. With `contains_infinity` the disk is {|z - center| >= radius} + inf.
struct Disk {
    double center = 0.0;
    double radius = 1.0;
    bool contains_infinity = false;
};

// Classical Schottky group on k generators. Disk for letter code x lives at
// disks[x]: generator g maps the exterior of D(g^-1) onto the interior of D(g).
class SchottkySystem {
public:
    // Throws std::invalid_argument if a generator has |det - 1| > 1e-12, the
    // disks are not pairwise disjoint, or a generator does not pair its disks.
    SchottkySystem(std::vector<Mat2> generators, std::vector<Disk> disks);

    // Two-generator group shipped as the default configuration.
    static SchottkySystem default_group();

    // Generator mapping the exterior of `from` onto the interior of `to`.
    static Mat2 pairing(const Disk& from, const Disk& to);

    int rank() const { return static_cast<int>(generators_.size()); }
    int letters() const { return 2 * rank(); }
    const Mat2& generator(int i) const { return generators_[static_cast<std::size_t>(i)]; }
    const std::vector<Mat2>& generators() const { return generators_; }
    const std::vector<Disk>& disks() const { return disks_; }
    const Disk& disk(core::Letter l) const { return disks_[static_cast<std::size_t>(l.code())]; }
    Mat2 letter_matrix(core::Letter l) const;

    // Hyperbolic distance between the boundary geodesics of D(x) and D(y), x != y.
    double boundary_distance(core::Letter x, core::Letter y) const;

private:
    std::vector<Mat2> generators_;
    std::vector<Disk> disks_;
};

struct GeodesicAxis {
    // Boundary fixed points; either may be +infinity.
    double repelling = 0.0;
    double attracting = 0.0;
    double translation_length = 0.0;
};

// Ordered product of the letter matrices, multiplied as a balanced tree.
Mat2 word_matrix(const SchottkySystem& system, const core::GeneratorWord& word);
Mat2 word_matrix(const SchottkySystem& system, std::span<const int> codes);

// 2 arccosh(|tr|/2). Throws std::domain_error("non-hyperbolic element") when |tr| <= 2.
double translation_length(const Mat2& m);

GeodesicAxis axis_of(const Mat2& m);

// Unit-speed point on the axis oriented from repelling to attracting fixed
// point; s = 0 is the apex of the semicircle (or height 1 on a vertical axis).
struct AxisPoint {
    std::complex<double> point;
    std::complex<double> direction;
};
AxisPoint point_on_axis(const GeodesicAxis& axis, double s);

double hyperbolic_distance(std::complex<double> z, std::complex<double> w);

}  // namespace geothermo::fuchsian
