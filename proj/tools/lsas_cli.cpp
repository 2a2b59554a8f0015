// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 lsas-sched contributors
//
// Command-line front end: loads a flat key=value config (all keys optional),
// applies flag overrides, runs the requested study and writes CSV files into
// the output directory. Exit code 0 on success; any failure prints a single
// "error: ..." line on stderr and exits nonzero.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lsas/experiment.hpp"

namespace {

std::vector<std::string> default_schemes(int table_id) {
    if (table_id == 5) return {"proposed", "asymptotic"};
    return {"proposed", "random_optimal", "random_equal"};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Latency-optimal static uplink scheduling for large-scale antenna systems"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::string solver;
    std::string receiver;
    app.add_option("--config", config_path, "Path to key = value config file");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory for CSV files");
    auto* seed_opt = app.add_option("--seed", seed, "Root seed override");
    app.add_option("--solver", solver, "Partition solver override")
        ->check(CLI::IsMember({"lp", "dp"}));
    app.add_option("--receiver", receiver, "Receiver override")
        ->check(CLI::IsMember({"zf", "mrc"}));

    auto* cmd_optimize = app.add_subcommand("optimize", "Optimal policy for the configured population");
    auto* cmd_asymptotic = app.add_subcommand("asymptotic", "Large-system design and regime report");
    auto* cmd_baseline = app.add_subcommand("baseline", "Random-grouping baselines");
    auto* cmd_montecarlo = app.add_subcommand("montecarlo", "Rate-model accuracy study");
    int table_id = 0;
    auto* cmd_table = app.add_subcommand("table", "Reproduce a results table (3, 4 or 5)");
    cmd_table->add_option("id", table_id, "Table number")->required();
    int figure_id = 0;
    auto* cmd_figure = app.add_subcommand("figure", "Reproduce a figure dataset (3..8)");
    cmd_figure->add_option("id", figure_id, "Figure number")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        lsas::ExperimentConfig cfg =
            config_path.empty() ? lsas::ExperimentConfig{} : lsas::parse_config_file(config_path);
        if (seed_opt->count()) cfg.seed = seed;
        if (!solver.empty()) cfg.solver = lsas::detail::parse_solver(solver);
        if (!receiver.empty()) cfg.receiver = lsas::detail::parse_receiver(receiver);
        if (out_opt->count()) cfg.out_dir = out_dir;
        cfg.validate();

        std::vector<lsas::CsvTable> outputs;
        if (*cmd_optimize) {
            auto [summary, assignment] = lsas::run_optimize(cfg);
            outputs.push_back(std::move(summary));
            outputs.push_back(std::move(assignment));
        } else if (*cmd_asymptotic) {
            outputs.push_back(lsas::run_asymptotic(cfg));
        } else if (*cmd_baseline) {
            outputs.push_back(lsas::run_baseline(cfg));
        } else if (*cmd_montecarlo) {
            outputs.push_back(lsas::run_montecarlo(cfg));
        } else if (*cmd_table) {
            outputs.push_back(lsas::run_table(cfg, table_id, default_schemes(table_id)));
        } else if (*cmd_figure) {
            outputs.push_back(lsas::run_figure(cfg, figure_id));
        }
        for (const auto& table : outputs)
            std::cout << "wrote " << lsas::write_csv(table, cfg.out_dir) << "\n";
        return 0;
    } catch (const lsas::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
