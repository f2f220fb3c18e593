// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <iostream>

#include "isacpn/errors.hpp"
#include "isacpn/experiments.hpp"

int main(int argc, char** argv) {
    CLI::App app{"OFDM ISAC phase-noise simulator"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run one experiment");
    std::string experiment;
    isacpn::ExperimentOptions opt;
    std::string config;
    std::uint64_t seed = 0;
    std::size_t realizations = 0;
    run->add_option("experiment", experiment, "experiment name")->required()->check(CLI::IsMember(isacpn::experiment_names()));
    run->add_option("--config", config, "scenario YAML overriding the experiment defaults")->check(CLI::ExistingFile);
    auto* seed_opt = run->add_option("--seed", seed, "base RNG seed");
    auto* real_opt = run->add_option("--realizations", realizations, "Monte Carlo realizations")->check(CLI::PositiveNumber);
    run->add_option("--out", opt.out_dir, "output directory");
    run->add_option("--scale", opt.scale, "divide M and realization counts by K")->check(CLI::PositiveNumber);
    run->add_flag("--plots", opt.plots, "also write a matplotlib script");

    auto* list = app.add_subcommand("list", "list experiments");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& n : isacpn::experiment_names()) std::cout << n << "\t" << isacpn::experiment_anchor(n) << "\n";
        return 0;
    }

    if (!config.empty()) opt.config_file = config;
    if (*seed_opt) opt.seed = seed;
    if (*real_opt) opt.realizations = realizations;
    try {
        for (const auto& f : isacpn::run_experiment(experiment, opt)) std::cout << f << "\n";
    } catch (const isacpn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
