#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "geothermo/cli/config.hpp"
#include "geothermo/core/orbit.hpp"
#include "json.hpp"

namespace geothermo::cli {

struct RunOptions {
    unsigned threads = 0;  // 0 = GEOTHERMO_THREADS or hardware concurrency
    std::uint64_t seed = 1;
    std::optional<std::filesystem::path> out;  // overrides config.outputs
};

// Orbit table up to `horizon` with every declared potential attached, plus
// the basis indicators when `with_basis` is set.
core::OrbitTable enumerate_for(const RunConfig& cfg, double horizon, bool with_basis, unsigned threads);

// Each command writes its files into the output directory, prints a short
// summary to `log`, and returns the JSON report (enumerate: counts).
nlohmann::json cmd_enumerate(const RunConfig& cfg, const RunOptions& opt, std::ostream& log);
nlohmann::json cmd_pressure(const RunConfig& cfg, const RunOptions& opt, std::ostream& log);
nlohmann::json cmd_equidist(const RunConfig& cfg, const RunOptions& opt, std::ostream& log);
nlohmann::json cmd_deviation(const RunConfig& cfg, const RunOptions& opt, std::ostream& log);

// Exit codes: 0 success, 1 unexpected failure, 2 config, 3 grid, 4 empty event.
int exit_code_for(const std::exception& e);

}  // namespace geothermo::cli
