// vsheet_cli.cpp — command-line entry point.
//
// Subcommands:
//   solve     solve at the single epsilon listed in the config
//   continue  continuation over the config's full epsilon list
//   validate  reload a solution record, recompute, and compare
//
// Exit codes: 0 success, 2 bad config/record, 3 solve failure (partial
// artifacts retained), 4 oracle/validation failure.

#include <clocale>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vsheet/io.hpp"

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"vortex-sheet relative equilibria: spectral Newton solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string emit_list;
    std::string record_path;

    const auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "config file (key = value, [sections], #-comments)")
            ->required();
        cmd->add_option("--out", out_dir, "output directory (overrides the config)");
        cmd->add_option("--emit", emit_list,
                        "artifacts to write: comma-separated from coeffs,curves,report,svg");
    };

    CLI::App* solve =
        app.add_subcommand("solve", "solve at the single epsilon in the config");
    add_run_options(solve);
    CLI::App* cont =
        app.add_subcommand("continue", "walk the config's epsilon list with continuation");
    add_run_options(cont);
    CLI::App* validate = app.add_subcommand("validate", "re-check a solution record");
    validate->add_option("--record", record_path, "solution record JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (validate->parsed()) return vsheet::validate_record(record_path);

    vsheet::RunConfig config;
    try {
        config = vsheet::parse_config(config_path);
        if (!emit_list.empty()) config.emit = vsheet::parse_emit_flags(emit_list);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return vsheet::kExitConfig;
    }
    if (!out_dir.empty()) config.output_dir = out_dir;

    try {
        return vsheet::run(config, solve->parsed());
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return vsheet::kExitSolve;
    }
}
