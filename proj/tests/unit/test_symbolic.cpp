#include <cmath>
#include <random>

#include "doctest.h"
#include "geothermo/core/logsum.hpp"
#include "geothermo/symbolic/oracle.hpp"
#include "geothermo/symbolic/shift.hpp"

using namespace geothermo;
using namespace geothermo::symbolic;
using core::Potential;

namespace {

const double kLog2 = std::log(2.0);
const double kPhi = 0.5 * (1.0 + std::sqrt(5.0));

// Random Markov measure supported on the adjacency of `shift`.
MarkovMeasure random_markov(const ShiftSystem& shift, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::bernoulli_distribution sparse(0.3);
    const int m = shift.alphabet();
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
    for (;;) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) q(i, j) = shift.allowed(i, j) ? e(rng) * (sparse(rng) ? 1e-3 : 1.0) : 0.0;
            q.row(i) /= q.row(i).sum();
        }
        try {
            return MarkovMeasure::from_transition(shift, q);
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace

TEST_SUITE("symbolic") {
    TEST_CASE("construction errors") {
        CHECK_THROWS_WITH(ShiftSystem({{1, 1}, {1}}, {1, 1}), "adjacency must be square");
        CHECK_THROWS_WITH(ShiftSystem({{1, 2}, {1, 1}}, {1, 1}), "adjacency entries must be 0 or 1");
        CHECK_THROWS_WITH(ShiftSystem({{1, 1}, {0, 1}}, {1, 1}), "adjacency must be irreducible");
        CHECK_THROWS_WITH(ShiftSystem({{1, 1}, {1, 1}}, {1, 0}), "roof must be positive");
        CHECK_THROWS_WITH(ShiftSystem({{1, 1}, {1, 1}}, {1}), "roof must have one entry per symbol");
    }

    TEST_CASE("enumerate_orbits examples") {
        const auto full = enumerate_orbits(ShiftSystem::full(2), 2);
        REQUIRE(full.size() == 3);
        CHECK(full[0].label == "0");
        CHECK(full[1].label == "1");
        CHECK(full[2].label == "01");
        CHECK(full[2].length == 2.0);

        const auto golden = enumerate_orbits(ShiftSystem::golden_mean(), 3);
        REQUIRE(golden.size() == 3);
        CHECK(golden[0].label == "0");
        CHECK(golden[1].label == "01");
        CHECK(golden[2].label == "001");

        const ShiftSystem roofed = ShiftSystem::full(2, {1.0, 2.0});
        CHECK(orbit_length(roofed, std::vector<int>{0, 1}) == 3.0);
    }

    TEST_CASE("orbit counts match brute force up to length 10") {
        const ShiftSystem full = ShiftSystem::full(2);
        const auto table = enumerate_orbits(full, 10, {}, 2);
        // Brute force: count binary strings whose rotations are all distinct
        // and strictly larger, grouped by length.
        std::vector<std::size_t> brute(11, 0), got(11, 0);
        for (int n = 1; n <= 10; ++n) {
            for (int bits = 0; bits < (1 << n); ++bits) {
                bool least = true;
                for (int r = 1; r < n && least; ++r) {
                    const int rot = ((bits << r) | (bits >> (n - r))) & ((1 << n) - 1);
                    if (rot <= bits) least = false;
                }
                brute[static_cast<std::size_t>(n)] += least ? 1 : 0;
            }
        }
        for (const auto& o : table.orbits()) ++got[o.code.size()];
        CHECK(got == brute);
        CHECK(enumerate_orbits_up_to(full, 6.0).size() == 23);
    }

    TEST_CASE("time-limited enumeration with variable roof") {
        const ShiftSystem s = ShiftSystem::full(2, {1.0, 2.0});
        const auto by_len = enumerate_orbits(s, 12);
        const auto by_time = enumerate_orbits_up_to(s, 9.0);
        CHECK(by_time.size() == by_len.count_up_to(9.0));
        for (std::size_t i = 0; i < by_time.size(); ++i) CHECK(by_time[i].label == by_len[i].label);
    }

    TEST_CASE("orbit integrals") {
        const ShiftSystem s = ShiftSystem::full(2, {1.0, 2.0});
        const Potential f = Potential::per_symbol({1.0, 0.5});
        CHECK(orbit_integral(s, std::vector<int>{0, 1}, f) == doctest::Approx(1.0 + 1.0));
        const Potential pair = Potential::indicator(2, std::vector<int>{1, 0});
        CHECK(orbit_integral(s, std::vector<int>{0, 1, 1}, pair) == doctest::Approx(2.0));
        CHECK(orbit_integral(s, std::vector<int>{0, 1, 1}, Potential::constant(3.0)) == doctest::Approx(15.0));
        const auto cyl = cylinder_indicators(ShiftSystem::golden_mean(), 2);
        REQUIRE(cyl.size() == 5);
        CHECK(cyl[0].name == "[0]");
        CHECK(cyl[4].name == "[10]");
    }

    TEST_CASE("bowen pressure examples") {
        CHECK(bowen_pressure(ShiftSystem::full(2), Potential::constant(0.0)) == doctest::Approx(0.693147).epsilon(1e-6));
        CHECK(bowen_pressure(ShiftSystem::full(2), Potential::per_symbol({1.0, 0.0})) ==
              doctest::Approx(1.313262).epsilon(1e-6));
        CHECK(bowen_pressure(ShiftSystem::full(2, {1.0, 2.0}), Potential::constant(0.0)) ==
              doctest::Approx(0.481212).epsilon(1e-6));
        // Closed forms at full precision.
        CHECK(std::abs(bowen_pressure(ShiftSystem::full(2), Potential::constant(0.0)) - kLog2) < 1e-12);
        CHECK(std::abs(bowen_pressure(ShiftSystem::full(2, {1.0, 2.0}), Potential::constant(0.0)) - std::log(kPhi)) <
              1e-12);
        CHECK(std::abs(bowen_pressure(ShiftSystem::golden_mean(), Potential::constant(0.0)) - std::log(kPhi)) < 1e-12);
    }

    TEST_CASE("pressure shift by constants") {
        for (const ShiftSystem& s : {ShiftSystem::full(2), ShiftSystem::full(3, {1.0, 0.5, 2.0}),
                                     ShiftSystem::golden_mean({1.0, 1.5})}) {
            const Potential f = Potential::per_symbol(std::vector<double>(static_cast<std::size_t>(s.alphabet()), 0.3));
            const Potential g = Potential::per_symbol([&] {
                std::vector<double> w;
                for (int i = 0; i < s.alphabet(); ++i) w.push_back(0.7 * i - 0.2);
                return w;
            }());
            for (const Potential& base : {f, g}) {
                const double p = bowen_pressure(s, base);
                for (double c : {-1.0, 0.5, 2.0})
                    CHECK(std::abs(bowen_pressure(s, base + Potential::constant(c)) - (p + c)) <= 1e-10);
            }
        }
    }

    TEST_CASE("gibbs equilibrium examples") {
        const ShiftSystem full = ShiftSystem::full(2);
        const MarkovMeasure half = gibbs_equilibrium(full, Potential::constant(0.0));
        CHECK(half.stationary()(0) == doctest::Approx(0.5));
        CHECK(half.transition()(1, 0) == doctest::Approx(0.5));
        const MarkovMeasure tilted = gibbs_equilibrium(full, Potential::per_symbol({1.0, 0.0}));
        CHECK(tilted.stationary()(0) == doctest::Approx(0.731059).epsilon(1e-6));
        CHECK(tilted.transition()(1, 0) == doctest::Approx(std::exp(1.0) / (1.0 + std::exp(1.0))));
        // Parry measure: p_0 = phi^2 / (phi^2 + 1).
        const MarkovMeasure parry = gibbs_equilibrium(ShiftSystem::golden_mean(), Potential::constant(0.0));
        CHECK(parry.stationary()(0) == doctest::Approx(kPhi * kPhi / (kPhi * kPhi + 1.0)).epsilon(1e-12));
    }

    TEST_CASE("flow evaluation and entropy examples") {
        const ShiftSystem unit = ShiftSystem::full(2);
        const ShiftSystem roofed = ShiftSystem::full(2, {1.0, 2.0});
        const MarkovMeasure b = MarkovMeasure::bernoulli(unit, Eigen::Vector2d(0.5, 0.5));
        const MarkovMeasure b2 = MarkovMeasure::bernoulli(roofed, Eigen::Vector2d(0.5, 0.5));
        CHECK(flow_measure_eval(b, unit, Potential::per_symbol({0.3, 0.9})) == doctest::Approx(0.6));
        CHECK(flow_measure_eval(b2, roofed, Potential::constant(1.0)) == 1.0);
        CHECK(flow_measure_eval(b2, roofed, Potential::per_symbol({1.0, 0.0})) == doctest::Approx(1.0 / 3.0));
        CHECK(flow_entropy(b, unit) == doctest::Approx(kLog2));
        CHECK(flow_entropy(b2, roofed) == doctest::Approx(0.462098).epsilon(1e-6));
        Eigen::Matrix2d swap;
        swap << 0, 1, 1, 0;
        CHECK(flow_entropy(MarkovMeasure::from_transition(unit, swap), unit) == 0.0);
        // Depth-2 evaluation: P([01]) = p_0 Q_01.
        const MarkovMeasure m = MarkovMeasure::bernoulli(unit, Eigen::Vector2d(0.9, 0.1));
        CHECK(flow_measure_eval(m, unit, Potential::indicator(2, std::vector<int>{0, 1})) == doctest::Approx(0.09));
    }

    TEST_CASE("Markov measure validation") {
        const ShiftSystem golden = ShiftSystem::golden_mean();
        Eigen::Matrix2d bad;
        bad << 0.5, 0.5, 0.5, 0.5;
        CHECK_THROWS_AS(MarkovMeasure::from_transition(golden, bad), std::invalid_argument);
        CHECK_THROWS_AS(MarkovMeasure(ShiftSystem::full(2), Eigen::Vector2d(0.3, 0.7), Eigen::Matrix2d::Identity() * 0.5 +
                                                                                               Eigen::Matrix2d::Constant(0.25)),
                        std::invalid_argument);
    }

    TEST_CASE("variational principle on random Markov measures") {
        std::mt19937_64 rng(2024);
        const std::vector<ShiftSystem> systems = {ShiftSystem::full(2), ShiftSystem::full(2, {1.0, 2.0}),
                                                  ShiftSystem::golden_mean({0.7, 1.3}), ShiftSystem::full(3, {1.0, 0.5, 2.0})};
        for (const auto& s : systems) {
            std::vector<double> w;
            for (int i = 0; i < s.alphabet(); ++i) w.push_back(std::sin(1.0 + i));
            const Potential f = Potential::per_symbol(w);
            const double p = bowen_pressure(s, f);
            for (int k = 0; k < 200; ++k) {
                const MarkovMeasure m = random_markov(s, rng);
                CHECK(flow_entropy(m, s) + flow_measure_eval(m, s, f) <= p + 1e-9);
            }
            const MarkovMeasure g = gibbs_equilibrium(s, f);
            CHECK(std::abs(flow_entropy(g, s) + flow_measure_eval(g, s, f) - p) <= 1e-9);
        }
    }
}
