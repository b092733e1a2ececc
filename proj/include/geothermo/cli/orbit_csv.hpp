#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geothermo/core/orbit.hpp"

namespace geothermo::cli {

// Shortest decimal form that reads back to the same double (17 significant digits).
std::string format_double(double x);

// Header `class,length,primitive,integral_<name>...`, one row per orbit in table order.
void write_orbits_csv(std::ostream& out, const core::OrbitTable& table);

// Rebuilds the code of an orbit from its label.
using LabelDecoder = std::function<std::vector<int>(std::string_view)>;
std::vector<int> decode_symbolic_label(std::string_view label);
std::vector<int> decode_schottky_label(std::string_view label);

// Inverse of write_orbits_csv. Throws std::runtime_error on malformed input.
core::OrbitTable read_orbits_csv(std::istream& in, const LabelDecoder& decode);

}  // namespace geothermo::cli
