#include "geothermo/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "geothermo/cli/orbit_csv.hpp"
#include "geothermo/core/errors.hpp"
#include "geothermo/engine/deviation.hpp"
#include "geothermo/engine/measure.hpp"
#include "geothermo/engine/pressure.hpp"
#include "geothermo/fuchsian/enumerate.hpp"
#include "geothermo/symbolic/oracle.hpp"

namespace geothermo::cli {

using nlohmann::json;

namespace {

constexpr double kDeviationSlack = 0.1;

std::filesystem::path output_dir(const RunConfig& cfg, const RunOptions& opt) {
    std::filesystem::path dir = opt.out.value_or(cfg.outputs);
    std::filesystem::create_directories(dir);
    return dir;
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write '" + p.string() + "'");
    return out;
}

void write_json(const std::filesystem::path& p, const json& j) { open_out(p) << j.dump(2) << '\n'; }

std::vector<core::NamedPotential> basis_observables(const RunConfig& cfg) {
    if (const auto* shift = std::get_if<symbolic::ShiftSystem>(&cfg.system))
        return symbolic::cylinder_indicators(*shift, cfg.basis_depth);
    return fuchsian::letter_indicators(std::get<fuchsian::SchottkySystem>(cfg.system), cfg.basis_depth);
}

json nullable(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string csv_value(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// Declared potential or basis indicator with this name.
core::Potential resolve_observable(const RunConfig& cfg, const std::string& name) {
    for (const auto& p : cfg.potentials)
        if (p.name == name) return p.potential;
    for (const auto& p : basis_observables(cfg))
        if (p.name == name) return p.potential;
    throw ConfigError("unknown observable '" + name + "'");
}

}  // namespace

core::OrbitTable enumerate_for(const RunConfig& cfg, double horizon, bool with_basis, unsigned threads) {
    std::vector<core::NamedPotential> pots = cfg.potentials;
    if (with_basis)
        for (auto& b : basis_observables(cfg)) pots.push_back(std::move(b));
    if (const auto* shift = std::get_if<symbolic::ShiftSystem>(&cfg.system))
        return symbolic::enumerate_orbits_up_to(*shift, horizon, pots, threads);
    return fuchsian::enumerate_classes(std::get<fuchsian::SchottkySystem>(cfg.system), horizon, pots, threads);
}

json cmd_enumerate(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
    const double horizon = cfg.enumeration_horizon();
    const core::OrbitTable table = enumerate_for(cfg, horizon, false, opt.threads);
    const auto dir = output_dir(cfg, opt);
    {
        auto out = open_out(dir / "orbits.csv");
        write_orbits_csv(out, table);
    }
    json summary = {{"t_max", horizon}, {"orbits", table.size()}};
    summary["min_length"] = table.empty() ? json(nullptr) : json(table.min_length());
    summary["max_length"] = table.empty() ? json(nullptr) : json(table.max_length());
    log << "enumerated " << table.size() << " orbits with length <= " << horizon << '\n';
    return summary;
}

json cmd_pressure(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
    const std::vector<double> grid = cfg.grid();
    const double horizon = std::max(cfg.enumeration_horizon(), grid.back() + cfg.window);
    const core::OrbitTable table = enumerate_for(cfg, horizon, false, opt.threads);
    const engine::PressureEstimate est = engine::estimate_pressure(table, cfg.target, grid, cfg.window);

    const auto dir = output_dir(cfg, opt);
    {
        auto out = open_out(dir / "pressure.csv");
        out << "t,cumulative_logsum,window_logsum,slope\n";
        for (std::size_t i = 0; i < est.t_grid.size(); ++i)
            out << format_double(est.t_grid[i]) << ',' << csv_value(est.cumulative_logsums[i]) << ','
                << csv_value(est.window_logsums[i]) << ',' << csv_value(est.slopes[i]) << '\n';
    }
    std::optional<double> oracle;
    if (const auto* shift = std::get_if<symbolic::ShiftSystem>(&cfg.system))
        oracle = symbolic::bowen_pressure(*shift, cfg.potential(cfg.target).potential);

    json report = {
        {"target", cfg.target},
        {"final", est.final},
        {"half_width", est.half_width},
        {"window_final", est.window_final},
        {"window_half_width", est.window_half_width},
        {"cauchy_spread", std::abs(est.final - est.window_final)},
        {"oracle", nullable(oracle)},
        {"gap", oracle ? json(std::abs(est.final - *oracle)) : json(nullptr)},
    };
    write_json(dir / "pressure.json", report);
    log << "pressure estimate " << format_double(est.final) << " (half width " << format_double(est.half_width)
        << ")";
    if (oracle) log << ", oracle " << format_double(*oracle);
    log << '\n';
    return report;
}

json cmd_equidist(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
    const std::vector<double> grid = cfg.grid();
    const double horizon = std::max(cfg.enumeration_horizon(), grid.back());
    const core::OrbitTable table = enumerate_for(cfg, horizon, true, opt.threads);
    const engine::ObservableBasis basis(basis_observables(cfg), cfg.basis_k);

    std::optional<engine::MeasureEval> oracle;
    std::vector<double> center;
    const auto* shift = std::get_if<symbolic::ShiftSystem>(&cfg.system);
    std::optional<symbolic::MarkovMeasure> gibbs;
    if (shift) {
        gibbs.emplace(symbolic::gibbs_equilibrium(*shift, cfg.potential(cfg.target).potential));
        oracle = [&](const core::NamedPotential& g) { return symbolic::flow_measure_eval(*gibbs, *shift, g.potential); };
        for (int k = 0; k < basis.size(); ++k) center.push_back((*oracle)(basis.observables()[static_cast<std::size_t>(k)]));
    } else {
        const engine::EmpiricalMeasure last = engine::mu_t(table, cfg.target, grid.back());
        for (int k = 0; k < basis.size(); ++k) center.push_back(last(basis.observables()[static_cast<std::size_t>(k)].name));
    }
    const engine::EquidistributionReport rep =
        engine::equidistribution_report(table, cfg.target, basis, grid, oracle);

    json escape = nullptr;
    try {
        const auto prof = engine::escape_profile(
            table, cfg.target, engine::within_ball(basis, center, cfg.ball_radius), grid);
        escape = {{"radius", cfg.ball_radius}, {"outside", prof.outside}, {"rate", prof.rate}};
    } catch (const InsufficientGrid&) {
        escape = {{"radius", cfg.ball_radius}, {"outside", nullptr}, {"rate", nullptr}};
    }

    const auto dir = output_dir(cfg, opt);
    json report = {{"target", cfg.target},
                   {"t_grid", rep.t_grid},
                   {"decreasing", rep.decreasing},
                   {"truncation_bound", rep.truncation_bound},
                   {"basis_size", basis.size()},
                   {"escape", escape}};
    {
        auto out = open_out(dir / "equidist.csv");
        if (oracle) {
            out << "t,distance\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                out << format_double(grid[i]) << ',' << format_double(rep.distances[i]) << '\n';
            report["distances"] = rep.distances;
        } else {
            out << "t";
            for (double t : grid) out << ',' << format_double(t);
            out << '\n';
            for (std::size_t i = 0; i < grid.size(); ++i) {
                out << format_double(grid[i]);
                for (double d : rep.cauchy[i]) out << ',' << format_double(d);
                out << '\n';
            }
            report["cauchy"] = rep.cauchy;
        }
    }
    write_json(dir / "equidist.json", report);
    log << "equidistribution: " << (oracle ? "distance to equilibrium " : "Cauchy distance ")
        << format_double(oracle ? rep.distances.back() : rep.cauchy[grid.size() - 2][grid.size() - 1])
        << (rep.decreasing ? " (decreasing)" : " (not decreasing)") << '\n';
    return report;
}

json cmd_deviation(const RunConfig& cfg, const RunOptions& opt, std::ostream& log) {
    if (!cfg.deviation) throw ConfigError("config needs 'deviation'");
    const DeviationSpec& spec = *cfg.deviation;
    const core::Potential observable = resolve_observable(cfg, spec.observable);
    const std::vector<double> grid = cfg.grid();
    const double horizon = std::max(cfg.enumeration_horizon(), grid.back());
    const core::OrbitTable table = enumerate_for(cfg, horizon, true, opt.threads);

    const auto prof = engine::deviation_rate(
        table, cfg.target, engine::half_space_predicate(spec.observable, spec.direction, spec.threshold), grid);

    std::optional<double> rho_k, rho_k_search;
    if (const auto* shift = std::get_if<symbolic::ShiftSystem>(&cfg.system)) {
        const engine::HalfSpace k{observable, spec.direction, spec.threshold};
        const core::Potential& f = cfg.potential(cfg.target).potential;
        try {
            rho_k = engine::rho_of_set(*shift, f, k).value;
            rho_k_search = engine::rho_of_set_search(*shift, f, k, 50, opt.seed);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("deviation observable unusable by the oracle: ") + e.what());
        }
    }

    const auto dir = output_dir(cfg, opt);
    {
        auto out = open_out(dir / "deviation.csv");
        out << "t,nu_t,log_nu_t\n";
        for (std::size_t i = 0; i < grid.size(); ++i)
            out << format_double(grid[i]) << ',' << format_double(prof.nu[i]) << ','
                << (prof.nu[i] > 0.0 ? format_double(std::log(prof.nu[i])) : std::string("-inf")) << '\n';
    }
    auto finite_or_null = [](const std::optional<double>& v) {
        return v && std::isfinite(*v) ? json(*v) : json(nullptr);
    };
    json report = {
        {"target", cfg.target},
        {"observable", spec.observable},
        {"direction", spec.direction == engine::Direction::at_least ? "at_least" : "at_most"},
        {"threshold", spec.threshold},
        {"measured_rate", prof.rate},
        {"rho_K", finite_or_null(rho_k)},
        {"rho_K_search", finite_or_null(rho_k_search)},
        {"slack", kDeviationSlack},
        {"bound_satisfied", rho_k ? json(prof.rate <= -*rho_k + kDeviationSlack) : json(nullptr)},
    };
    write_json(dir / "deviation.json", report);
    log << "deviation rate " << format_double(prof.rate);
    if (rho_k) log << ", rho(K) " << format_double(*rho_k);
    log << '\n';
    return report;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const InsufficientGrid*>(&e)) return 3;
    if (dynamic_cast<const EmptySelection*>(&e)) return 3;
    if (dynamic_cast<const EventNeverRealized*>(&e)) return 4;
    return 1;
}

}  // namespace geothermo::cli
