#include "geothermo/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "geothermo/engine/pressure.hpp"

namespace geothermo::cli {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::vector<double> numbers(const json& j, const std::string& what) {
    if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError(what + " must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

symbolic::ShiftSystem parse_shift(const json& j) {
    if (!j.contains("adjacency") || !j.at("adjacency").is_array())
        throw ConfigError("shift.adjacency must be an array of rows");
    std::vector<std::vector<int>> adj;
    for (const auto& row : j.at("adjacency")) {
        if (!row.is_array()) throw ConfigError("adjacency must be square");
        std::vector<int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw ConfigError("adjacency entries must be 0 or 1");
            r.push_back(x.get<int>());
        }
        adj.push_back(std::move(r));
    }
    std::vector<double> roof;
    if (j.contains("roof")) roof = numbers(j.at("roof"), "shift.roof");
    else roof.assign(adj.size(), 1.0);
    return symbolic::ShiftSystem(std::move(adj), std::move(roof));
}

fuchsian::SchottkySystem parse_schottky(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "default") throw ConfigError("schottky must be \"default\" or an object");
        return fuchsian::SchottkySystem::default_group();
    }
    if (!j.contains("generators") || !j.contains("disks"))
        throw ConfigError("schottky needs 'generators' and 'disks'");
    std::vector<fuchsian::Mat2> gens;
    for (const auto& g : j.at("generators")) {
        const std::vector<double> v = numbers(g, "generator");
        if (v.size() != 4) throw ConfigError("generator must be [a, b, c, d]");
        gens.push_back({v[0], v[1], v[2], v[3]});
    }
    std::vector<fuchsian::Disk> disks;
    for (const auto& d : j.at("disks")) {
        fuchsian::Disk disk;
        disk.center = number(d, "center");
        disk.radius = number(d, "radius");
        disk.contains_infinity = d.value("contains_infinity", false);
        disks.push_back(disk);
    }
    return fuchsian::SchottkySystem(std::move(gens), std::move(disks));
}

int alphabet_of(const System& s) {
    if (const auto* sh = std::get_if<symbolic::ShiftSystem>(&s)) return sh->alphabet();
    return std::get<fuchsian::SchottkySystem>(s).letters();
}

core::NamedPotential parse_potential(const json& j, int alphabet) {
    if (!j.contains("name") || !j.at("name").is_string()) throw ConfigError("potential needs a string 'name'");
    const std::string name = j.at("name").get<std::string>();
    if (name.empty() || name.front() == '[') throw ConfigError("potential name '" + name + "' is reserved");
    if (name.find(',') != std::string::npos) throw ConfigError("potential name must not contain ','");
    if (j.contains("constant")) return {name, core::Potential::constant(number(j, "constant"))};
    if (j.contains("symbol")) {
        std::vector<double> w = numbers(j.at("symbol"), "potential '" + name + "'");
        if (static_cast<int>(w.size()) != alphabet)
            throw ConfigError("potential '" + name + "' needs one weight per symbol");
        return {name, core::Potential::per_symbol(std::move(w))};
    }
    if (j.contains("cylinder")) {
        const json& c = j.at("cylinder");
        const int depth = static_cast<int>(number(c, "depth"));
        if (depth < 1) throw ConfigError("cylinder depth must be >= 1");
        std::vector<double> w = numbers(c.at("weights"), "potential '" + name + "'");
        if (static_cast<double>(w.size()) != std::pow(alphabet, depth))
            throw ConfigError("potential '" + name + "' needs alphabet^depth weights");
        return {name, core::Potential::cylinder(alphabet, depth, std::move(w))};
    }
    throw ConfigError("potential '" + name + "' needs one of 'constant', 'symbol', 'cylinder'");
}

RunConfig parse_unchecked(const json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("schema") || j.at("schema") != 1) throw ConfigError("config schema must be 1");
    if (!j.contains("system")) throw ConfigError("missing field 'system'");
    const json& sys = j.at("system");

    std::optional<System> system;
    if (sys.contains("shift")) system.emplace(parse_shift(sys.at("shift")));
    else if (sys.contains("schottky")) system.emplace(parse_schottky(sys.at("schottky")));
    else throw ConfigError("system must be 'shift' or 'schottky'");

    RunConfig cfg{std::move(*system), {}, "", {}, {}, 1.0, 2, 16, 0.1, {}, "."};
    const int alphabet = alphabet_of(cfg.system);

    std::set<std::string> names;
    if (j.contains("potentials")) {
        for (const auto& p : j.at("potentials")) {
            cfg.potentials.push_back(parse_potential(p, alphabet));
            if (!names.insert(cfg.potentials.back().name).second)
                throw ConfigError("duplicate potential name '" + cfg.potentials.back().name + "'");
        }
    }
    if (cfg.potentials.empty()) {
        cfg.potentials.push_back({"zero", core::Potential::constant(0.0)});
        names.insert("zero");
    }
    cfg.target = j.value("target", cfg.potentials.front().name);
    if (!names.count(cfg.target)) throw ConfigError("target '" + cfg.target + "' is not a declared potential");

    if (j.contains("t_max")) {
        cfg.t_max = number(j, "t_max");
        if (!(*cfg.t_max > 0.0)) throw ConfigError("t_max must be positive");
    }
    if (j.contains("t_grid")) {
        const json& g = j.at("t_grid");
        GridSpec grid{number(g, "start"), number(g, "stop"), number(g, "step")};
        if (!(grid.start < grid.stop)) throw ConfigError("t_grid.start must be < t_grid.stop");
        if (!(grid.step > 0.0)) throw ConfigError("t_grid.step must be positive");
        cfg.t_grid = grid;
    }
    if (j.contains("window")) {
        cfg.window = number(j, "window");
        if (!(cfg.window > 0.0)) throw ConfigError("window must be positive");
    }
    if (j.contains("basis")) {
        const json& b = j.at("basis");
        if (b.contains("depth")) cfg.basis_depth = static_cast<int>(number(b, "depth"));
        if (b.contains("K")) cfg.basis_k = static_cast<int>(number(b, "K"));
        if (cfg.basis_depth < 1 || cfg.basis_depth > 4) throw ConfigError("basis.depth must be in 1..4");
        if (cfg.basis_k < 1) throw ConfigError("basis.K must be >= 1");
    }
    if (j.contains("ball_radius")) {
        cfg.ball_radius = number(j, "ball_radius");
        if (!(cfg.ball_radius > 0.0)) throw ConfigError("ball_radius must be positive");
    }
    if (j.contains("deviation")) {
        const json& d = j.at("deviation");
        DeviationSpec spec;
        if (!d.contains("observable") || !d.at("observable").is_string())
            throw ConfigError("deviation.observable must be a string");
        spec.observable = d.at("observable").get<std::string>();
        const std::string dir = d.value("direction", "at_least");
        if (dir == "at_least") spec.direction = engine::Direction::at_least;
        else if (dir == "at_most") spec.direction = engine::Direction::at_most;
        else throw ConfigError("deviation.direction must be 'at_least' or 'at_most'");
        spec.threshold = number(d, "threshold");
        cfg.deviation = spec;
    }
    if (j.contains("outputs")) cfg.outputs = j.at("outputs").get<std::string>();
    return cfg;
}

}  // namespace

const core::NamedPotential& RunConfig::potential(const std::string& name) const {
    for (const auto& p : potentials)
        if (p.name == name) return p;
    throw ConfigError("unknown potential '" + name + "'");
}

double RunConfig::enumeration_horizon() const {
    if (t_max) return *t_max;
    if (t_grid) return t_grid->stop + window;
    throw ConfigError("config needs 't_max' or 't_grid'");
}

std::vector<double> RunConfig::grid() const {
    if (!t_grid) throw ConfigError("config needs 't_grid'");
    return engine::make_grid(t_grid->start, t_grid->stop, t_grid->step);
}

RunConfig parse_config(const json& j) {
    try {
        return parse_unchecked(j);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace geothermo::cli
