// qcsim: command-line front end of the EPR key-distribution simulator.
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcsim/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo simulator of key distribution with bright EPR beams"};
    app.require_subcommand(1);

    qcsim::RunOptions run;
    std::uint64_t run_seed = 0;
    std::string run_out = ".";
    auto* run_cmd = app.add_subcommand("run", "run one protocol session");
    run_cmd->add_option("--config", run.config, "session config file")->required()->check(CLI::ExistingFile);
    auto* run_seed_opt = run_cmd->add_option("--seed", run_seed, "master seed (overrides protocol.seed)");
    run_cmd->add_option("--out", run_out, "output directory");
    run_cmd->add_flag("--spectrum", run.spectrum, "also write spectrum.csv");
    run_cmd->add_option("--set", run.overrides, "override a config value, section.key=value");

    qcsim::SweepOptions sweep;
    std::uint64_t sweep_seed = 0;
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter over a grid");
    sweep_cmd->add_option("--config", sweep.config, "session config file")->required()->check(CLI::ExistingFile);
    sweep_cmd->add_option("--param", sweep.param, "r, tau, eta, sigma_m, fake_r or margin")->required();
    sweep_cmd->add_option("--grid", sweep.grid, "start:stop:step")->required();
    sweep_cmd->add_option("--out", sweep_out, "output CSV")->required();
    auto* sweep_seed_opt = sweep_cmd->add_option("--seed", sweep_seed, "master seed (overrides protocol.seed)");
    sweep_cmd->add_option("--set", sweep.overrides, "override a config value, section.key=value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qcsim::kExitUsage;
    }

    if (*run_cmd) {
        if (*run_seed_opt) run.seed = run_seed;
        run.out_dir = run_out;
        return qcsim::cmd_run(run, std::cout, std::cerr);
    }
    if (*sweep_seed_opt) sweep.seed = sweep_seed;
    sweep.out = sweep_out;
    return qcsim::cmd_sweep(sweep, std::cout, std::cerr);
}
