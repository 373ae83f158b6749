// entnet command line: deterministic experiment runs and figure data.

#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "entnet/exp/runner.hpp"

namespace {

void report(const entnet::exp::RunManifest& manifest) {
    for (const auto& artifact : manifest.artifacts)
        std::printf("wrote %s\n", artifact.c_str());
    std::printf("done in %.3f s\n", manifest.wall_time_seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entnet: Hamilton-Jacobi learning dynamics, density-matrix evolution "
                 "and entanglement witnesses"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool no_plots = false;
    app.add_option("--config", config_path, "JSON config file (defaults apply otherwise)");
    app.add_option("--out", out_dir, "output directory override");
    app.add_option("--seed", seed, "master seed override")->each([&](const std::string&) {
        seed_set = true;
    });
    app.add_flag("--no-plots", no_plots, "skip SVG emission");

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the learning trajectory");
    CLI::App* potential =
        app.add_subcommand("potential", "ensemble-averaged learning potential V(t)");
    CLI::App* entangle =
        app.add_subcommand("entangle", "two-qubit evolution and witness series");
    CLI::App* canonical =
        app.add_subcommand("canonical", "pendulum canonical-transformation sweep");
    CLI::App* witness = app.add_subcommand("witness", "witness report for a csv of states");

    entnet::exp::CanonicalOptions canon_opt;
    canonical->add_option("--epsilons", canon_opt.epsilons, "perturbation strengths");
    canonical->add_option("--action", canon_opt.action, "action J of the solve");
    canonical->add_option("--order", canon_opt.order, "Fourier truncation order");
    canonical->add_option("--grid", canon_opt.grid, "torus grid size");
    canonical->add_option("--tol", canon_opt.tol, "fixed-point stop tolerance");
    canonical->add_option("--max-iter", canon_opt.max_iter, "fixed-point iteration cap");

    std::string witness_csv;
    witness->add_option("csv", witness_csv, "evolution-format csv of density matrices")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        entnet::exp::ExperimentConfig cfg = config_path.empty()
                                                ? entnet::exp::default_config()
                                                : entnet::exp::load_config(config_path);
        if (seed_set) cfg.net.seed = seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (no_plots) cfg.emit_plots = false;

        entnet::exp::RunManifest manifest;
        if (simulate->parsed()) manifest = entnet::exp::cmd_simulate(cfg);
        else if (potential->parsed()) manifest = entnet::exp::cmd_potential(cfg);
        else if (entangle->parsed()) manifest = entnet::exp::cmd_entangle(cfg);
        else if (canonical->parsed()) manifest = entnet::exp::cmd_canonical(cfg, canon_opt);
        else if (witness->parsed()) manifest = entnet::exp::cmd_witness(cfg, witness_csv);
        report(manifest);
        return 0;
    } catch (const entnet::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const entnet::NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
