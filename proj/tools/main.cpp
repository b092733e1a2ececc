#include <iostream>

#include "CLI11.hpp"
#include "geothermo/cli/commands.hpp"

using namespace geothermo::cli;

int main(int argc, char** argv) {
    CLI::App app{"Orbit sums, pressure and equidistribution diagnostics for geodesic flows"};
    app.require_subcommand(1);

    std::string config_path;
    RunOptions opt;
    std::string out_dir;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--threads", opt.threads, "worker threads (0 = auto)");
    app.add_option("--out", out_dir, "output directory (overrides config.outputs)");
    app.add_option("--seed", opt.seed, "seed for randomized cross-checks");
    app.fallthrough();

    auto* enumerate = app.add_subcommand("enumerate", "write orbits.csv");
    auto* pressure = app.add_subcommand("pressure", "write pressure.csv and pressure.json");
    auto* equidist = app.add_subcommand("equidist", "write equidist.csv and equidist.json");
    auto* deviation = app.add_subcommand("deviation", "write deviation.csv and deviation.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!out_dir.empty()) opt.out = out_dir;

    try {
        const RunConfig cfg = load_config(config_path);
        if (enumerate->parsed()) cmd_enumerate(cfg, opt, std::cout);
        else if (pressure->parsed()) cmd_pressure(cfg, opt, std::cout);
        else if (equidist->parsed()) cmd_equidist(cfg, opt, std::cout);
        else if (deviation->parsed()) cmd_deviation(cfg, opt, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    }
    return 0;
}
