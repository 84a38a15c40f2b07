// Command-line front end: constants | solve | sweep | witness | gn.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bnls/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Normalized-solution toolkit for the fourth-order equation "
                 "D^2 u + mu D u - lambda u = |u|^{p-2} u on the mass sphere"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long long seed = -1;
    int workers = 0;
    app.add_option("--config", config_path, "path to key = value configuration")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--seed", seed, "random seed (overrides seed)");
    app.add_option("--workers", workers, "sweep worker count (overrides workers)");

    auto* c_constants = app.add_subcommand("constants", "closed-form layer report");
    auto* c_solve = app.add_subcommand("solve", "run one solver branch");
    std::string branch;
    c_solve->add_option("--branch", branch, "ground | mp | limit")->required();
    auto* c_sweep = app.add_subcommand("sweep", "parameter sweep");
    std::string axis;
    std::vector<double> values;
    c_sweep->add_option("--axis", axis, "mu | a")->required();
    c_sweep->add_option("--values", values, "sweep values")->delimiter(',');
    auto* c_witness = app.add_subcommand("witness", "Bessel test-function bound");
    auto* c_gn = app.add_subcommand("gn", "Gagliardo-Nirenberg constant estimate");

    CLI11_PARSE(app, argc, argv);

    return bnls::run_command(
        [&]() -> int {
            bnls::RunConfig cfg = bnls::parse_config_file(config_path);
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
            if (workers > 0) cfg.workers = workers;

            if (c_constants->parsed()) return bnls::cmd_constants(cfg, std::cout);
            if (c_solve->parsed()) return bnls::cmd_solve(cfg, branch, std::cout);
            if (c_sweep->parsed()) return bnls::cmd_sweep(cfg, axis, values, std::cout);
            if (c_witness->parsed()) return bnls::cmd_witness(cfg, std::cout);
            if (c_gn->parsed()) return bnls::cmd_gn(cfg, std::cout);
            return 1;
        },
        std::cerr);
}
