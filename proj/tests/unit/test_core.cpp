#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "geothermo/core/errors.hpp"
#include "geothermo/core/logsum.hpp"
#include "geothermo/core/necklace.hpp"
#include "geothermo/core/orbit.hpp"
#include "geothermo/core/potential.hpp"
#include "geothermo/core/word.hpp"

using namespace geothermo;
using namespace geothermo::core;

namespace {

ClosedOrbit orbit(std::string label, double length, std::vector<double> integrals) {
    ClosedOrbit o;
    o.label = std::move(label);
    o.length = length;
    o.integrals = std::move(integrals);
    return o;
}

// Random table with integrals of f and of f + c for a few constants.
OrbitTable random_table(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> len(0.5, 20.0), val(-5.0, 5.0);
    std::vector<ClosedOrbit> orbits;
    for (std::size_t i = 0; i < n; ++i) {
        const double l = len(rng);
        const double f = val(rng);
        orbits.push_back(orbit("o" + std::to_string(i), l, {f, f + 0.5 * l, f + 2.0 * l}));
    }
    return OrbitTable(std::move(orbits), {"f", "f+0.5", "f+2"});
}

// Brute-force primitive necklaces: words that are strictly smaller than all
// their nontrivial rotations.
std::size_t brute_lyndon(int k, int n) {
    std::size_t count = 0;
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    for (;;) {
        bool lyndon = true;
        for (int r = 1; r < n && lyndon; ++r) {
            std::vector<int> rot(w.begin() + r, w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + r);
            if (!(w < rot)) lyndon = false;
        }
        count += lyndon ? 1 : 0;
        int i = n - 1;
        while (i >= 0 && w[static_cast<std::size_t>(i)] == k - 1) w[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
        ++w[static_cast<std::size_t>(i)];
    }
    return count;
}

}  // namespace

TEST_SUITE("core") {
    TEST_CASE("potential algebra") {
        const Potential f = Potential::per_symbol({1.0, 0.0});
        const Potential g = f + Potential::constant(2.0);
        const auto cyl = g.as_cylinder(2, 2);
        CHECK(cyl.depth == 2);
        CHECK(cyl.at(std::vector<int>{0, 1}) == doctest::Approx(3.0));
        CHECK(cyl.at(std::vector<int>{1, 0}) == doctest::Approx(2.0));
        CHECK(*f.scaled(-3.0).sup_norm() == doctest::Approx(3.0));
        CHECK(*Potential::indicator(2, std::vector<int>{0, 1}).sup_norm() == 1.0);
        CHECK_FALSE(Potential::sampled([](const TangentVector&) { return 1.0; }).sup_norm().has_value());
        CHECK_THROWS_AS(Potential::cylinder(2, 2, {1.0, 2.0}), std::invalid_argument);
    }

    TEST_CASE("orbit table ordering and slots") {
        OrbitTable t({orbit("b", 2.0, {1.0}), orbit("a", 2.0, {2.0}), orbit("c", 1.0, {3.0})}, {"f"});
        CHECK(t[0].label == "c");
        CHECK(t[1].label == "a");
        CHECK(t.count_up_to(1.5) == 1);
        CHECK(t.count_up_to(2.0) == 3);
        CHECK(t.window(1.0, 2.0) == std::pair<std::size_t, std::size_t>{1, 3});
        CHECK(t.integral(1, "f") == 2.0);
        CHECK_THROWS_AS(t.slot("g"), std::out_of_range);
        t.add_integrals("g", std::vector<double>{7.0, 8.0, 9.0});
        CHECK(t.integral(2, "g") == 9.0);
    }

    TEST_CASE("weighted_orbit_sum examples") {
        const OrbitTable one({orbit("x", 2.0, {0.5})}, {"f"});
        CHECK(weighted_orbit_sum(one, "f", 3.0) == doctest::Approx(0.5).epsilon(1e-15));
        const OrbitTable two({orbit("x", 1.0, {0.0}), orbit("y", 2.0, {0.0})}, {"f"});
        CHECK(weighted_orbit_sum(two, "f", 3.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
        CHECK(weighted_orbit_sum(two, "f", 1.5, SumMode::window(1.0)) == doctest::Approx(0.0));
        CHECK_THROWS_WITH_AS(weighted_orbit_sum(two, "f", 0.5), "empty orbit window", EmptySelection);
        CHECK_THROWS_AS(weighted_orbit_sum(two, "f", 3.0, SumMode::window(1.0)), EmptySelection);
    }

    TEST_CASE("log-sum-exp merge over random partitions") {
        std::mt19937_64 rng(7);
        std::normal_distribution<double> x(0.0, 300.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> xs(200);
            for (double& v : xs) v = x(rng);
            const double single = log_sum_exp(xs).value();
            std::vector<LogSumExp> parts(1 + trial % 7);
            std::uniform_int_distribution<std::size_t> pick(0, parts.size() - 1);
            for (double v : xs) parts[pick(rng)].add(v);
            LogSumExp merged;
            for (const auto& p : parts) merged.merge(p);
            CHECK(std::abs(merged.value() - single) <= 1e-10 * std::max(1.0, std::abs(single)));
        }
        CHECK(std::isinf(LogSumExp().value()));
    }

    TEST_CASE("parallel sum agrees with serial") {
        std::mt19937_64 rng(11);
        const OrbitTable t = random_table(rng, 5000);
        for (unsigned threads : {1u, 2u, 3u, 8u}) {
            for (double tt : {5.0, 12.0, 18.5}) {
                CHECK(std::abs(weighted_orbit_sum_parallel(t, "f", tt, {}, threads) - weighted_orbit_sum(t, "f", tt)) <=
                      1e-10);
                CHECK(std::abs(weighted_orbit_sum_parallel(t, "f", tt, SumMode::window(1.0), threads) -
                               weighted_orbit_sum(t, "f", tt, SumMode::window(1.0))) <= 1e-10);
            }
        }
    }

    TEST_CASE("monotonicity and bracket shift") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            const OrbitTable t = random_table(rng, 300);
            for (double tt : {3.0, 8.0, 15.0, 20.0}) {
                const double base = weighted_orbit_sum(t, "f", tt);
                const std::size_t n = t.count_up_to(tt);
                double lmin = INFINITY;
                for (std::size_t i = 0; i < n; ++i) lmin = std::min(lmin, t[i].length);
                for (auto [id, c] : {std::pair{"f+0.5", 0.5}, std::pair{"f+2", 2.0}}) {
                    const double shifted = weighted_orbit_sum(t, id, tt);
                    CHECK(shifted >= base);
                    CHECK(base + c * lmin <= shifted * (1.0 + 1e-15) + 1e-12);
                    CHECK(shifted <= base + c * tt + 1e-12);
                }
            }
        }
    }

    TEST_CASE("necklace search counts Lyndon words") {
        for (int k : {2, 3}) {
            NecklaceSearch s;
            s.alphabet = k;
            s.max_length = k == 2 ? 10 : 7;
            auto words = s.run(2, [](std::span<const int> w, double) {
                return std::optional<std::vector<int>>(std::vector<int>(w.begin(), w.end()));
            });
            std::vector<std::size_t> per_length(static_cast<std::size_t>(s.max_length) + 1, 0);
            std::set<std::vector<int>> unique(words.begin(), words.end());
            CHECK(unique.size() == words.size());
            for (const auto& w : words) ++per_length[w.size()];
            for (int n = 1; n <= s.max_length; ++n) CHECK(per_length[static_cast<std::size_t>(n)] == brute_lyndon(k, n));
        }
        NecklaceSearch six;
        six.alphabet = 2;
        six.max_length = 6;
        const auto w6 = six.run(1, [](std::span<const int> w, double) { return std::optional<int>(static_cast<int>(w.size())); });
        CHECK(w6.size() == 23);
    }

    TEST_CASE("necklace search respects adjacency and budget") {
        NecklaceSearch s;
        s.alphabet = 2;
        s.max_length = 12;
        s.allowed = {1, 1, 1, 0};  // golden mean: 11 forbidden
        s.step_cost = {1.0, 1.0, 1.0, 1.0};
        s.closing_cost = s.step_cost;
        s.budget = 8.0;
        const auto words = s.run(1, [](std::span<const int> w, double cost) {
            return std::optional<std::pair<std::vector<int>, double>>({{w.begin(), w.end()}, cost});
        });
        for (const auto& [w, cost] : words) {
            CHECK(cost == doctest::Approx(static_cast<double>(w.size())));
            CHECK(w.size() <= 8);
            for (std::size_t i = 0; i < w.size(); ++i) CHECK(!(w[i] == 1 && w[(i + 1) % w.size()] == 1));
        }
        // Admissible primitive necklaces of the golden mean shift, lengths 1..8:
        // (1/n) sum_{d|n} mu(n/d) tr(A^d) with tr(A^d) = Lucas numbers.
        const std::vector<std::size_t> expected = {0, 1, 1, 1, 1, 2, 2, 4, 5};
        std::vector<std::size_t> got(9, 0);
        for (const auto& [w, cost] : words) ++got[w.size()];
        CHECK(got == expected);
    }
}
