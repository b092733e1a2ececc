#pragma once

#include <span>
#include <string>
#include <vector>

#include "geothermo/core/orbit.hpp"
#include "geothermo/core/potential.hpp"
#include "geothermo/core/word.hpp"
#include "geothermo/fuchsian/schottky.hpp"

namespace geothermo::fuchsian {

// Length of the closed geodesic of a class: power x translation length of
// the primitive root. Throws std::domain_error("non-hyperbolic element").
double class_length(const SchottkySystem& system, const core::ConjugacyClass& cls);

// Time the closed geodesic of a cyclically reduced word spends in each
// translate of the fundamental domain. Entry i is the segment of the axis of
// the rotation starting at letter i between the circles of D(g_{i-1}^-1)
// and D(g_i); the entries sum to the translation length of the word.
std::vector<double> segment_times(const SchottkySystem& system, std::span<const int> codes);

// Integral of f over the closed geodesic of the class:
//  - constant c: c x length;
//  - cylinder weights over the 2k letters (codes): sum_i w(g_i g_{i+1} ..) x segment_times[i];
//  - sampled: composite midpoint rule along the axis of the canonical
//    representative, step = quadrature_step (default min(length/1024, 1e-2)),
//    shrunk so it divides the period evenly.
double orbit_integral(const SchottkySystem& system, const core::ConjugacyClass& cls, const core::Potential& f);

// Primitive classes (orientation collapsed) with length <= t_max, sorted by
// (length, canonical word). Words are pruned with the lower bound
// length >= sum of distances between consecutive boundary geodesics, which
// is exact for classical Schottky groups.
core::OrbitTable enumerate_classes(const SchottkySystem& system, double t_max,
                                   std::span<const core::NamedPotential> potentials = {}, unsigned threads = 0);

// Primitive classes (orientation collapsed) of word length <= n, no length filter.
core::OrbitTable enumerate_classes_by_word_length(const SchottkySystem& system, int max_word_length,
                                                  std::span<const core::NamedPotential> potentials = {},
                                                  unsigned threads = 0);

void attach_potential(const SchottkySystem& system, core::OrbitTable& table, const core::NamedPotential& f);

// Letter-cylinder indicators over the coding (depth 1: "[a]", depth 2: "[aB]").
std::vector<core::NamedPotential> letter_indicators(const SchottkySystem& system, int max_depth);

}  // namespace geothermo::fuchsian
