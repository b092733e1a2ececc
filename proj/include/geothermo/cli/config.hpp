#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "geothermo/core/potential.hpp"
#include "geothermo/engine/deviation.hpp"
#include "geothermo/fuchsian/schottky.hpp"
#include "geothermo/symbolic/shift.hpp"

namespace geothermo::cli {

// Invalid or inconsistent configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

struct DeviationSpec {
    std::string observable;
    engine::Direction direction = engine::Direction::at_least;
    double threshold = 0.0;
};

using System = std::variant<symbolic::ShiftSystem, fuchsian::SchottkySystem>;

struct RunConfig {
    System system;
    std::vector<core::NamedPotential> potentials;
    std::string target;
    std::optional<double> t_max;
    std::optional<GridSpec> t_grid;
    double window = 1.0;
    int basis_depth = 2;
    int basis_k = 16;
    double ball_radius = 0.1;
    std::optional<DeviationSpec> deviation;
    std::filesystem::path outputs = ".";

    bool is_shift() const { return std::holds_alternative<symbolic::ShiftSystem>(system); }
    const core::NamedPotential& potential(const std::string& name) const;
    // t_max if given, else t_grid.stop + window. Throws ConfigError if neither applies.
    double enumeration_horizon() const;
    std::vector<double> grid() const;
};

// Every failure is reported as ConfigError with the violated invariant.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace geothermo::cli
