#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "entnet/canonical/generator.hpp"
#include "entnet/exp/config.hpp"
#include "entnet/exp/csv.hpp"
#include "entnet/exp/svg.hpp"
#include "entnet/exp/version.hpp"
#include "entnet/hjnet/dynamics.hpp"
#include "entnet/qboltz/evolution.hpp"
#include "entnet/witness/witnesses.hpp"

namespace entnet::exp {

namespace fs = std::filesystem;

struct RunManifest {
    std::uint64_t config_hash = 0;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> artifacts;
    std::string tool_version = exp::tool_version;
    double wall_time_seconds = 0;
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline void require_artifacts(const RunManifest& manifest) {
    for (const auto& path : manifest.artifacts) {
        std::error_code ec;
        const auto size = fs::file_size(path, ec);
        if (ec || size == 0)
            throw NumericError("artifact missing or empty: " + path);
    }
}

inline void write_manifest(const fs::path& dir, const RunManifest& manifest) {
    require_artifacts(manifest);
    json doc{{"config_hash", manifest.config_hash},
             {"seeds", manifest.seeds},
             {"artifacts", manifest.artifacts},
             {"tool_version", manifest.tool_version},
             {"wall_time_seconds", manifest.wall_time_seconds}};
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw ConfigError("cannot write manifest in '" + dir.string() + "'");
    out << doc.dump(2) << '\n';
}

inline fs::path prepare_output_dir(const ExperimentConfig& cfg) {
    fs::path dir(cfg.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output dir '" + cfg.output_dir + "'");
    return dir;
}

// Reads a 4x4 complex matrix csv: four rows of eight numbers
// (re,im interleaved), '#' comments allowed.
inline qboltz::Matrix4c read_matrix4_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
    qboltz::Matrix4c m;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (row >= 4) throw ConfigError("matrix file '" + path + "' has more than 4 rows");
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 8)
            throw ConfigError("matrix file '" + path + "' row " + std::to_string(row) +
                              ": expected 8 numbers (re,im per entry)");
        for (int j = 0; j < 4; ++j)
            m(row, j) = qboltz::Complex(vals[2 * j], vals[2 * j + 1]);
        ++row;
    }
    if (row != 4) throw ConfigError("matrix file '" + path + "' has fewer than 4 rows");
    return m;
}

// Product-state file: four rows of four numbers (re,im interleaved 2x2),
// first two rows rho_A, last two rho_B.
inline qboltz::DensityMatrix read_product_state_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open product-state file '" + path + "'");
    qboltz::Matrix2c a, b;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (row >= 4)
            throw ConfigError("product-state file '" + path + "' has more than 4 rows");
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 4)
            throw ConfigError("product-state file '" + path + "' row " +
                              std::to_string(row) + ": expected 4 numbers");
        qboltz::Matrix2c& target = row < 2 ? a : b;
        const int r = row % 2;
        for (int j = 0; j < 2; ++j)
            target(r, j) = qboltz::Complex(vals[2 * j], vals[2 * j + 1]);
        ++row;
    }
    if (row != 4) throw ConfigError("product-state file '" + path + "' has fewer than 4 rows");
    return qboltz::product_state(a, b);
}

}  // namespace detail

inline qboltz::Matrix4c resolve_coupling_op(const CouplingConfig& coupling) {
    if (coupling.c_op == "zz") return qboltz::sigma_zz();
    if (coupling.c_op == "xx") return qboltz::sigma_xx();
    const qboltz::Matrix4c m = detail::read_matrix4_csv(coupling.c_op);
    if (qboltz::hermiticity_defect(m) > 1e-12)
        throw ConfigError("coupling operator from '" + coupling.c_op + "' is not Hermitian");
    return m;
}

inline qboltz::DensityMatrix resolve_rho0(const ExperimentConfig& cfg) {
    if (cfg.rho0 == "plus-plus") return qboltz::plus_plus_state();
    if (cfg.rho0 == "bell") return qboltz::bell_phi_plus();
    return detail::read_product_state_csv(cfg.rho0);
}

// Coupling series for one run: either derived from the learning trajectory
// or, in debug mode, held constant on the same grid.
inline qboltz::CouplingSeries build_coupling_series(const ExperimentConfig& cfg) {
    const qboltz::Matrix4c c_op = resolve_coupling_op(cfg.coupling);
    if (cfg.coupling.constant_g) {
        qboltz::CouplingSeries series;
        const long long steps = cfg.net.steps();
        series.times.reserve(static_cast<std::size_t>(steps) + 1);
        series.g.assign(static_cast<std::size_t>(steps) + 1, *cfg.coupling.constant_g);
        for (long long k = 0; k <= steps; ++k)
            series.times.push_back(static_cast<double>(k) * cfg.net.dt);
        series.gamma = cfg.coupling.gamma;
        series.c_op = c_op;
        return series;
    }
    const hjnet::Trajectory traj = hjnet::learning_run(cfg.net);
    return qboltz::coupling_signal(traj, cfg.coupling.scale, cfg.coupling.gamma, c_op);
}

// `simulate`: the hjnet trajectory alone.
inline RunManifest cmd_simulate(const ExperimentConfig& cfg) {
    cfg.validate();
    detail::Stopwatch watch;
    const fs::path dir = detail::prepare_output_dir(cfg);

    const hjnet::Trajectory traj = hjnet::learning_run(cfg.net);
    RunManifest manifest;
    manifest.config_hash = config_hash(cfg);
    manifest.seeds = {cfg.net.seed};

    const fs::path csv = dir / "trajectory.csv";
    write_trajectory_csv(csv.string(), traj, cfg.net);
    manifest.artifacts.push_back(csv.string());

    if (cfg.emit_plots) {
        const fs::path svg = dir / "trajectory.svg";
        emit_plot(csv.string(), {"t", {"E", "J", "H"}, "learning trajectory"}, svg.string());
        manifest.artifacts.push_back(svg.string());
    }
    manifest.wall_time_seconds = watch.seconds();
    detail::write_manifest(dir, manifest);
    return manifest;
}

// `potential`: seeded ensemble of runs, averaged interaction energy over
// time, emitted on the shifted time axis (training start at negative time).
inline RunManifest cmd_potential(const ExperimentConfig& cfg) {
    cfg.validate();
    detail::Stopwatch watch;
    const fs::path dir = detail::prepare_output_dir(cfg);

    RunManifest manifest;
    manifest.config_hash = config_hash(cfg);

    std::vector<hjnet::Trajectory> ensemble;
    ensemble.reserve(static_cast<std::size_t>(cfg.ensemble_size));
    for (int i = 0; i < cfg.ensemble_size; ++i) {
        hjnet::NetConfig member = cfg.net;
        member.seed = cfg.net.seed + static_cast<std::uint64_t>(i);
        manifest.seeds.push_back(member.seed);
        ensemble.push_back(hjnet::learning_run(member));
    }

    qboltz::PotentialSeries potential;
    if (ensemble.size() >= 2) {
        potential = qboltz::learning_potential(ensemble, cfg.coupling.scale);
    } else {
        const qboltz::CouplingSeries single =
            qboltz::coupling_signal(ensemble.front(), cfg.coupling.scale);
        potential.times = single.times;
        const double t_end = potential.times.back();
        for (double& t : potential.times) t -= t_end;
        potential.v = single.g;
    }

    const fs::path csv = dir / "potential.csv";
    write_potential_csv(csv.string(), potential.times, potential.v);
    manifest.artifacts.push_back(csv.string());

    if (cfg.emit_plots) {
        const fs::path svg = dir / "potential.svg";
        emit_plot(csv.string(), {"t", {"V"}, "learning potential"}, svg.string());
        manifest.artifacts.push_back(svg.string());
    }
    manifest.wall_time_seconds = watch.seconds();
    detail::write_manifest(dir, manifest);
    return manifest;
}

// `entangle`: learning run -> coupling signal -> density-matrix evolution ->
// witness per step. evolution.csv keeps every step; concurrence.csv drops
// the warm-up rows.
inline RunManifest cmd_entangle(const ExperimentConfig& cfg) {
    cfg.validate();
    detail::Stopwatch watch;
    const fs::path dir = detail::prepare_output_dir(cfg);

    RunManifest manifest;
    manifest.config_hash = config_hash(cfg);
    manifest.seeds = {cfg.net.seed};

    const qboltz::CouplingSeries series = build_coupling_series(cfg);
    const qboltz::DensityMatrix rho0 = resolve_rho0(cfg);
    const std::vector<qboltz::DensityMatrix> rhos = qboltz::run_evolution(series, rho0);

    std::vector<witness::WitnessReport> reports;
    reports.reserve(rhos.size());
    for (std::size_t k = 0; k < rhos.size(); ++k)
        reports.push_back(witness::witness_report(rhos[k], series.times[k]));

    const fs::path evolution = dir / "evolution.csv";
    write_evolution_csv(evolution.string(), series.times, rhos, reports);
    manifest.artifacts.push_back(evolution.string());

    const std::size_t cut =
        static_cast<std::size_t>(cfg.warmup_fraction * static_cast<double>(reports.size()));
    const std::vector<witness::WitnessReport> kept(reports.begin() +
                                                       static_cast<std::ptrdiff_t>(cut),
                                                   reports.end());
    const fs::path concurrence = dir / "concurrence.csv";
    write_witness_csv(concurrence.string(), kept);
    manifest.artifacts.push_back(concurrence.string());

    if (cfg.emit_plots) {
        const fs::path svg = dir / "concurrence.svg";
        emit_plot(concurrence.string(), {"t", {"concurrence", "negativity"}, "entanglement growth"},
                  svg.string());
        manifest.artifacts.push_back(svg.string());
    }
    manifest.wall_time_seconds = watch.seconds();
    detail::write_manifest(dir, manifest);
    return manifest;
}

struct CanonicalOptions {
    std::vector<double> epsilons{0.1, 0.08, 0.04, 0.02, 0.01, 0.005};
    double action = 1.0;
    int order = 1;   // first-order sweep: residual scales as epsilon^2
    int grid = canonical::default_grid;
    double tol = 1e-10;
    int max_iter = 64;
    int check_grid = 128;

    void validate() const {
        if (epsilons.empty()) throw ConfigError("canonical: epsilon list is empty");
        if (order < 1) throw ConfigError("canonical: order must be >= 1");
        if (grid < 2 * order + 2)
            throw ConfigError("canonical: grid must be >= 2*order+2 (got grid=" +
                              std::to_string(grid) + ", order=" + std::to_string(order) + ")");
        if (check_grid < 2) throw ConfigError("canonical: check grid must be >= 2");
        if (max_iter < 1) throw ConfigError("canonical: max_iter must be >= 1");
    }
};

// `canonical`: pendulum demo (H0 = I^2/2, V = cos phi) across an epsilon
// sweep; residual/symplectic tables plus per-epsilon generator exports.
// Resonance or non-convergence is recorded as a nan row and the sweep
// continues.
inline RunManifest cmd_canonical(const ExperimentConfig& cfg, const CanonicalOptions& opt) {
    cfg.validate();
    opt.validate();
    detail::Stopwatch watch;
    const fs::path dir = detail::prepare_output_dir(cfg);

    RunManifest manifest;
    manifest.config_hash = config_hash(cfg);

    Eigen::VectorXd action(1);
    action << opt.action;

    std::vector<CanonicalRow> rows;
    for (std::size_t i = 0; i < opt.epsilons.size(); ++i) {
        const double eps = opt.epsilons[i];
        CanonicalRow row;
        row.epsilon = eps;
        try {
            const canonical::PerturbedHamiltonian ph = canonical::pendulum_hamiltonian(eps);
            const canonical::GeneratorSeries g = canonical::solve_generator(
                ph, action, opt.order, opt.grid, opt.tol, opt.max_iter);
            row.residual = canonical::hj_residual(ph, g);
            row.symplectic_defect = canonical::symplectic_check(g, opt.check_grid);
            row.iterations = g.info.iterations;

            const fs::path gen_csv = dir / ("generator_" + std::to_string(i) + ".csv");
            write_generator_csv(gen_csv.string(), g, eps, row.residual);
            manifest.artifacts.push_back(gen_csv.string());
        } catch (const NumericError& e) {
            row.residual = std::nan("");
            row.symplectic_defect = std::nan("");
            row.iterations = 0;
            std::fprintf(stderr, "canonical: epsilon=%g failed: %s\n", eps, e.what());
        }
        rows.push_back(row);
    }

    const fs::path csv = dir / "canonical.csv";
    write_canonical_csv(csv.string(), rows);
    manifest.artifacts.push_back(csv.string());

    if (cfg.emit_plots) {
        const fs::path svg = dir / "canonical.svg";
        emit_plot(csv.string(), {"epsilon", {"residual"}, "Hamilton-Jacobi residual"},
                  svg.string());
        manifest.artifacts.push_back(svg.string());
    }
    manifest.wall_time_seconds = watch.seconds();
    detail::write_manifest(dir, manifest);
    return manifest;
}

// `witness <csv>`: per-row witness report for an evolution-format csv
// (t plus re/im of all 16 entries; extra columns ignored).
inline RunManifest cmd_witness(const ExperimentConfig& cfg, const std::string& rho_csv) {
    cfg.validate();
    detail::Stopwatch watch;
    const fs::path dir = detail::prepare_output_dir(cfg);

    const CsvTable table = read_csv(rho_csv);
    const int ti = table.column_index("t");
    if (ti < 0) throw ConfigError("witness: missing column 't' in " + rho_csv);
    int idx[4][4][2];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const std::string suffix = std::to_string(i) + std::to_string(j);
            idx[i][j][0] = table.column_index("re_rho_" + suffix);
            idx[i][j][1] = table.column_index("im_rho_" + suffix);
            if (idx[i][j][0] < 0 || idx[i][j][1] < 0)
                throw ConfigError("witness: missing rho columns for entry " + suffix);
        }

    std::vector<witness::WitnessReport> reports;
    reports.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        qboltz::Matrix4c m;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                m(i, j) = qboltz::Complex(row[static_cast<std::size_t>(idx[i][j][0])],
                                          row[static_cast<std::size_t>(idx[i][j][1])]);
        reports.push_back(witness::witness_report(qboltz::DensityMatrix(m), row[ti]));
    }

    RunManifest manifest;
    manifest.config_hash = config_hash(cfg);
    const fs::path csv = dir / "witness.csv";
    write_witness_csv(csv.string(), reports);
    manifest.artifacts.push_back(csv.string());

    if (cfg.emit_plots && !reports.empty()) {
        const fs::path svg = dir / "witness.svg";
        emit_plot(csv.string(), {"t", {"concurrence", "negativity"}, "entanglement witnesses"},
                  svg.string());
        manifest.artifacts.push_back(svg.string());
    }
    manifest.wall_time_seconds = watch.seconds();
    detail::write_manifest(dir, manifest);
    return manifest;
}

}  // namespace entnet::exp
