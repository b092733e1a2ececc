#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "geothermo/core/word.hpp"
#include "geothermo/fuchsian/enumerate.hpp"
#include "geothermo/fuchsian/schottky.hpp"

using namespace geothermo;
using namespace geothermo::fuchsian;
using core::canonicalize;
using core::GeneratorWord;
using core::Potential;

namespace {

// Cyclic group generated by z -> 4z.
SchottkySystem dilation() {
    return SchottkySystem({{2.0, 0.0, 0.0, 0.5}}, {{0.0, 4.0, true}, {0.0, 1.0, false}});
}

Mat2 naive_product(const SchottkySystem& s, const std::vector<int>& codes) {
    Mat2 m;
    for (int c : codes) m = m * s.letter_matrix(core::Letter::from_code(c));
    return m;
}

// Primitive classes per word length from class_count: subtract the proper powers.
std::map<int, std::uint64_t> primitive_counts(int max_n) {
    std::map<int, std::uint64_t> prim;
    for (int n = 1; n <= max_n; ++n) {
        std::uint64_t c = core::class_count(2, n, true);
        for (int d = 1; d < n; ++d)
            if (n % d == 0) c -= prim[d];
        prim[n] = c;
    }
    return prim;
}

}  // namespace

TEST_SUITE("fuchsian") {
    TEST_CASE("matrix examples") {
        const Mat2 a{2.0, 0.0, 0.0, 0.5};
        const Mat2 b{5.0 / 3.0, 4.0 / 3.0, 4.0 / 3.0, 5.0 / 3.0};
        const Mat2 ab = a * b;
        CHECK(ab.a == doctest::Approx(10.0 / 3.0));
        CHECK(ab.b == doctest::Approx(8.0 / 3.0));
        CHECK(ab.c == doctest::Approx(2.0 / 3.0));
        CHECK(ab.d == doctest::Approx(5.0 / 6.0));
        CHECK(translation_length(a) == doctest::Approx(1.386294).epsilon(1e-6));
        CHECK(translation_length({2.0, 1.0, 1.0, 1.0}) == doctest::Approx(1.924847).epsilon(1e-6));
        CHECK_THROWS_WITH(translation_length({1.0, 1.0, 0.0, 1.0}), "non-hyperbolic element");
        const Mat2 prod = b * b.inverse();
        CHECK(prod.a == doctest::Approx(1.0));
        CHECK(prod.b == doctest::Approx(0.0));
    }

    TEST_CASE("construction checks") {
        const Disk d1{1.25, 1.0}, d2{-1.25, 1.0};
        CHECK_NOTHROW(SchottkySystem({SchottkySystem::pairing(d2, d1)}, {d1, d2}));
        CHECK_THROWS_AS(SchottkySystem({{2.0, 0.0, 0.0, 0.6}}, {{0.0, 4.0, true}, {0.0, 1.0, false}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(SchottkySystem({SchottkySystem::pairing(d2, d1)}, {d1, {0.0, 1.0}}), std::invalid_argument);
        // Right disks, generator pointing the wrong way.
        CHECK_THROWS_AS(SchottkySystem({SchottkySystem::pairing(d1, d2)}, {d1, d2}), std::invalid_argument);
    }

    TEST_CASE("word matrices and traces") {
        const SchottkySystem s = SchottkySystem::default_group();
        CHECK(word_matrix(s, GeneratorWord()).a == 1.0);
        for (const char* text : {"a", "ab", "aBBa", "abAB", "aabABab", "abababAbaB"}) {
            const GeneratorWord w = GeneratorWord::parse(text);
            const std::vector<int> codes = w.codes();
            const Mat2 m = word_matrix(s, w);
            const Mat2 naive = naive_product(s, codes);
            CHECK(m.trace() == doctest::Approx(naive.trace()).epsilon(1e-12));
            CHECK(std::abs(m.det() - 1.0) < 1e-9);
            for (std::size_t r = 1; r < codes.size(); ++r) {
                std::vector<int> rot(codes.begin() + static_cast<long>(r), codes.end());
                rot.insert(rot.end(), codes.begin(), codes.begin() + static_cast<long>(r));
                CHECK(std::abs(word_matrix(s, rot).trace() - m.trace()) <= 1e-9 * std::abs(m.trace()));
            }
            CHECK(word_matrix(s, w.inverse()).trace() == doctest::Approx(m.trace()));
        }
    }

    TEST_CASE("axis and fixed points") {
        const SchottkySystem s = SchottkySystem::default_group();
        for (const char* text : {"a", "b", "aB", "abAb"}) {
            const Mat2 m = word_matrix(s, GeneratorWord::parse(text));
            const GeodesicAxis ax = axis_of(m);
            for (double z : {ax.attracting, ax.repelling}) CHECK(std::abs(m.apply(z) - z) < 1e-9 * (1.0 + std::abs(z)));
            // Points advance by the translation length.
            const AxisPoint p = point_on_axis(ax, 0.3);
            CHECK(hyperbolic_distance(p.point, m.apply(p.point)) == doctest::Approx(ax.translation_length));
            CHECK(std::abs(m.apply(p.point) - point_on_axis(ax, 0.3 + ax.translation_length).point) < 1e-6 * (1.0 + std::abs(p.point)));
            CHECK(std::abs(std::abs(p.direction) - 1.0) < 1e-12);
        }
    }

    TEST_CASE("class counts by word length match brute force") {
        const SchottkySystem s = SchottkySystem::default_group();
        const auto table = enumerate_classes_by_word_length(s, 8, {}, 2);
        std::map<int, std::uint64_t> got;
        std::set<std::string> labels;
        for (const auto& o : table.orbits()) {
            ++got[static_cast<int>(o.code.size())];
            CHECK(labels.insert(o.label).second);
            const auto cls = canonicalize(GeneratorWord::parse(o.label), true);
            CHECK(cls.canonical.to_string() == o.label);
            CHECK(cls.primitive());
        }
        const auto expected = primitive_counts(8);
        for (int n = 1; n <= 8; ++n) CHECK(got[n] == expected.at(n));
    }

    TEST_CASE("length pruning is conservative") {
        const SchottkySystem s = SchottkySystem::default_group();
        const auto pruned = enumerate_classes(s, 8.0, {}, 1);
        const auto full = enumerate_classes_by_word_length(s, 11, {}, 2);
        REQUIRE(full.count_up_to(8.0) == pruned.size());
        for (std::size_t i = 0; i < pruned.size(); ++i) CHECK(pruned[i].label == full[i].label);
        // Longest admissible word at t = 8 is well below 11 letters.
        for (const auto& o : pruned.orbits()) CHECK(o.code.size() < 11);
    }

    TEST_CASE("enumeration edge cases and hyperbolicity") {
        const SchottkySystem s = SchottkySystem::default_group();
        const double la = translation_length(s.generator(0));
        CHECK(enumerate_classes(s, 0.5 * la).empty());
        // a and b have the same translation length, so both appear together.
        const auto first = enumerate_classes(s, la + 1e-9);
        REQUIRE(first.size() == 2);
        CHECK(first[0].label == "a");
        CHECK(first[1].label == "b");
        const auto table = enumerate_classes(s, 12.0);
        for (const auto& o : table.orbits()) {
            const GeneratorWord w = GeneratorWord::parse(o.label);
            CHECK(std::abs(word_matrix(s, w).trace()) > 2.0);
            CHECK(class_length(s, canonicalize(w.inverse(), false)) == doctest::Approx(o.length).epsilon(1e-12));
        }
    }

    TEST_CASE("segment times partition the period") {
        const SchottkySystem s = SchottkySystem::default_group();
        const auto table = enumerate_classes(s, 9.0);
        for (const auto& o : table.orbits()) {
            const auto times = segment_times(s, o.code);
            double sum = 0.0;
            for (double t : times) {
                CHECK(t > 0.0);
                sum += t;
            }
            CHECK(sum == doctest::Approx(o.length).epsilon(1e-9));
        }
        // Letter indicators of depth 1 add up to the constant 1.
        const auto ind = letter_indicators(s, 1);
        REQUIRE(ind.size() == 4);
        const auto cls = canonicalize(GeneratorWord::parse("abAAb"), true);
        double total = 0.0;
        for (const auto& g : ind) total += orbit_integral(s, cls, g.potential);
        CHECK(total == doctest::Approx(class_length(s, cls)).epsilon(1e-9));
        // Rotation invariance: integrals do not depend on the representative.
        const auto rotated = canonicalize(GeneratorWord::parse("bAAba"), true);
        CHECK(orbit_integral(s, rotated, ind[0].potential) == doctest::Approx(orbit_integral(s, cls, ind[0].potential)));
    }

    TEST_CASE("constant and power consistency") {
        const SchottkySystem s = SchottkySystem::default_group();
        const auto root = canonicalize(GeneratorWord::parse("aB"), true);
        const auto square = canonicalize(GeneratorWord::parse("aBaB"), true);
        CHECK(square.power == 2);
        CHECK(class_length(s, square) == 2.0 * class_length(s, root));
        for (double c : {1.0, -1.0, 0.25}) {
            CHECK(orbit_integral(s, root, Potential::constant(c)) == c * class_length(s, root));
            CHECK(orbit_integral(s, square, Potential::constant(c)) == 2.0 * orbit_integral(s, root, Potential::constant(c)));
        }
        // Sampled potential invariant under z -> 4z.
        const SchottkySystem dil = dilation();
        const double l = std::log(4.0);
        const Potential inv = Potential::sampled([l](const core::TangentVector& v) {
            const double c = std::cos(2.0 * M_PI * std::log(std::abs(v.point)) / l);
            return c * c;
        });
        const auto a1 = canonicalize(GeneratorWord::parse("a"), true);
        const auto a2 = canonicalize(GeneratorWord::parse("aa"), true);
        CHECK(orbit_integral(dil, a1, inv) == doctest::Approx(0.5 * l).epsilon(1e-9));
        CHECK(orbit_integral(dil, a2, inv) == doctest::Approx(2.0 * orbit_integral(dil, a1, inv)).epsilon(1e-9));
    }

    TEST_CASE("sampled bump against closed form") {
        const SchottkySystem dil = dilation();
        const Potential bump = Potential::sampled(
            [](const core::TangentVector& v) {
                const double x = std::log(v.point.imag()) - 0.7;
                return std::exp(-x * x);
            },
            1e-4);
        const double l = 2.0 * std::log(2.0);
        const double exact = 0.5 * std::sqrt(M_PI) * (std::erf(l - 0.7) - std::erf(-0.7));
        const double got = orbit_integral(dil, canonicalize(GeneratorWord::parse("a"), true), bump);
        CHECK(std::abs(got - exact) < 1e-6);
    }

    TEST_CASE("parallel enumeration is deterministic") {
        const SchottkySystem s = SchottkySystem::default_group();
        const auto one = enumerate_classes(s, 13.0, {}, 1);
        const auto many = enumerate_classes(s, 13.0, {}, 4);
        REQUIRE(one.size() == many.size());
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(one[i].label == many[i].label);
            CHECK(one[i].length == many[i].length);
        }
    }
}
