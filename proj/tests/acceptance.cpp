// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Runs against the same library surface the CLI uses.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "entnet/exp/runner.hpp"

#include "helpers.hpp"

using namespace entnet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void criterion(int id, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

fs::path work_dir() {
    const fs::path dir = fs::temp_directory_path() / "entnet_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// ----- criterion 1: witness exactness on Bell and product states -----
void witness_exactness() {
    const double c_bell = witness::concurrence(qboltz::bell_phi_plus());
    const double n_bell = witness::negativity(qboltz::bell_phi_plus());

    std::mt19937_64 rng(101);
    double worst_product = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto rho = qboltz::product_state(testing::random_qubit_state(rng),
                                               testing::random_qubit_state(rng));
        worst_product = std::max(worst_product, witness::concurrence(rho));
        worst_product = std::max(worst_product, witness::negativity(rho));
    }
    const bool ok = std::abs(c_bell - 1.0) <= 1e-9 && std::abs(n_bell - 0.5) <= 1e-9 &&
                    worst_product <= 1e-9;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "Bell C=%.12f N=%.12f, product max=%.2e", c_bell, n_bell, worst_product);
    criterion(1, "witness exactness", ok, detail);
}

// ----- criterion 2: Werner threshold against max(0,(3p-1)/2) -----
void werner_threshold() {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double p = i / 10.0;
        const auto rho = qboltz::werner_state(p);
        const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
        const double primary = witness::concurrence(rho);
        const double oracle = witness::concurrence_via_product_eigs(rho);
        worst = std::max({worst, std::abs(primary - expected), std::abs(oracle - expected)});
        if (std::abs(primary - expected) > 1e-6) ok = false;
        if (p <= 1.0 / 3.0 + 1e-12 && primary != 0.0) ok = false;
        if (p >= 0.34 && primary <= 0.0) ok = false;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |C - max(0,(3p-1)/2)| = %.2e", worst);
    criterion(2, "Werner threshold", ok, detail);
}

// ----- criterion 3: PPT equivalence on 1000 seeded random states -----
void ppt_equivalence() {
    std::mt19937_64 rng(2024);
    int disagreements = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto rho = testing::random_density_matrix(rng);
        const bool entangled_c = witness::concurrence(rho) > 1e-8;
        const bool entangled_n = witness::negativity(rho) > 1e-8;
        if (entangled_c != entangled_n) ++disagreements;
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "%d disagreements in 1000 states", disagreements);
    criterion(3, "PPT equivalence sweep", disagreements == 0, detail);
}

exp::ExperimentConfig debug_entangle_config(const fs::path& out) {
    exp::ExperimentConfig cfg = exp::default_config();
    cfg.net.n_neurons = 1;
    cfg.net.external_input = Eigen::VectorXd::Zero(1);
    cfg.net.thresholds = Eigen::VectorXd::Zero(1);
    cfg.net.target = Eigen::VectorXd::Zero(1);
    cfg.net.dt = 1e-4;
    cfg.net.epoch_length_T = std::numbers::pi;
    cfg.net.n_epochs = 1;
    cfg.coupling.constant_g = 1.0;
    cfg.coupling.gamma = 0.0;
    cfg.warmup_fraction = 0.0;
    cfg.output_dir = out.string();
    cfg.emit_plots = false;
    return cfg;
}

// ----- criterion 4: entangle debug mode against |sin 2gt| -----
void unitary_pipeline_oracle(const fs::path& base) {
    const exp::ExperimentConfig cfg = debug_entangle_config(base / "debug");
    exp::cmd_entangle(cfg);
    const exp::CsvTable table = exp::read_csv(cfg.output_dir + "/concurrence.csv");
    const int ti = table.column_index("t");
    const int ci = table.column_index("concurrence");
    double worst = 0.0;
    for (const auto& row : table.rows)
        worst = std::max(worst, std::abs(row[ci] - std::abs(std::sin(2.0 * row[ti]))));
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |C - |sin 2gt|| = %.2e over %zu steps", worst,
                  table.rows.size());
    criterion(4, "unitary-limit pipeline oracle", worst <= 1e-3, detail);
}

// ----- criterion 5: physicality of every emitted state in 4 and 7 -----
void physicality(const fs::path& base) {
    double worst_trace = 0.0, worst_herm = 0.0, worst_eig = 0.0;
    auto scan = [&](const exp::ExperimentConfig& cfg) {
        const qboltz::CouplingSeries series = exp::build_coupling_series(cfg);
        const auto rhos = qboltz::run_evolution(series, exp::resolve_rho0(cfg));
        for (const auto& rho : rhos) {
            worst_trace = std::max(worst_trace, rho.trace_defect());
            worst_herm = std::max(worst_herm, rho.hermiticity());
            worst_eig = std::min(worst_eig, rho.min_eigenvalue());
        }
    };
    scan(debug_entangle_config(base / "phys_a"));
    exp::ExperimentConfig flagship = exp::default_config();
    flagship.output_dir = (base / "phys_b").string();
    flagship.emit_plots = false;
    scan(flagship);
    const bool ok = worst_trace <= 1e-10 && worst_herm <= 1e-10 && worst_eig >= 0.0;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "|Tr-1|<=%.2e, herm<=%.2e, min eig=%.2e",
                  worst_trace, worst_herm, worst_eig);
    criterion(5, "physicality of emitted states", ok, detail);
}

// ----- criterion 6: Hamilton-Jacobi integrator checks -----
void hj_integrator() {
    hjnet::NetConfig cfg;
    cfg.n_neurons = 3;
    cfg.lambda = 0.8;
    cfg.omega = 1.3;
    cfg.weight_coupling = 0.4;
    cfg.epoch_length_T = 1.0;
    cfg.dt = 1e-3;
    cfg.n_epochs = 1;
    cfg.external_input = Eigen::Vector3d(0.2, -0.3, 0.1);
    cfg.thresholds = Eigen::Vector3d(0.05, 0.0, -0.05);
    cfg.target = Eigen::Vector3d(0.3, 0.1, -0.1);

    const double fd_step = 1e-6;
    double worst_grad = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        hjnet::NetState s = testing::random_net_state(rng, 3);
        s.t = 0.0;
        hjnet::Trajectory traj;
        traj.dt = cfg.dt;
        traj.epoch_length = cfg.epoch_length_T;
        traj.states.push_back(s);
        const hjnet::EpochTerms terms = hjnet::epoch_terms(traj, s.t, cfg);
        const hjnet::StateDerivative rhs = hjnet::characteristic_rhs(s, terms, cfg);
        auto h_of = [&](const hjnet::NetState& state) {
            return hjnet::extended_hamiltonian_H(state, terms, cfg);
        };
        auto scaled_err = [&](double analytic, double fd) {
            return std::abs(analytic - fd) / (1.0 + std::abs(fd));
        };
        for (int i = 0; i < 3; ++i) {
            hjnet::NetState up = s, dn = s;
            up.delta(i) += fd_step;
            dn.delta(i) -= fd_step;
            worst_grad = std::max(worst_grad,
                                  scaled_err(rhs.dy(i), (h_of(up) - h_of(dn)) / (2 * fd_step)));
            up = s;
            dn = s;
            up.y(i) += fd_step;
            dn.y(i) -= fd_step;
            worst_grad = std::max(
                worst_grad, scaled_err(rhs.ddelta(i), -(h_of(up) - h_of(dn)) / (2 * fd_step)));
            for (int j = 0; j < 3; ++j) {
                up = s;
                dn = s;
                up.m(i, j) += fd_step;
                dn.m(i, j) -= fd_step;
                worst_grad = std::max(
                    worst_grad, scaled_err(rhs.dw(i, j), (h_of(up) - h_of(dn)) / (2 * fd_step)));
                up = s;
                dn = s;
                up.w(i, j) += fd_step;
                dn.w(i, j) -= fd_step;
                worst_grad = std::max(
                    worst_grad,
                    scaled_err(rhs.dm(i, j), -(h_of(up) - h_of(dn)) / (2 * fd_step)));
            }
        }
    }

    // energy drift on a time-independent configuration
    hjnet::NetConfig cons = cfg;
    cons.n_neurons = 2;
    cons.weight_coupling = 0.3;
    cons.epoch_length_T = 11.0;
    cons.external_input = Eigen::Vector2d(0.5, -0.4);
    cons.thresholds = Eigen::Vector2d::Zero();
    cons.target = Eigen::Vector2d(0.3, 0.2);
    hjnet::NetState s = hjnet::NetState::zero(2);
    s.y = Eigen::Vector2d(0.2, -0.1);
    s.delta = Eigen::Vector2d(0.4, 0.3);
    s.m << 0.2, -0.1, 0.3, 0.4;
    hjnet::Trajectory traj;
    traj.dt = cons.dt;
    traj.epoch_length = cons.epoch_length_T;
    traj.states.push_back(s);
    const hjnet::EpochTerms terms = hjnet::epoch_terms(traj, 0.0, cons);
    const double h0 = hjnet::extended_hamiltonian_H(s, terms, cons);
    double drift = 0.0;
    hjnet::NetState cur = s;
    for (int k = 0; k < 10000; ++k) {
        cur = hjnet::rk4_step(cur, terms, cons, cons.dt);
        drift = std::max(drift,
                         std::abs(hjnet::extended_hamiltonian_H(cur, terms, cons) - h0));
    }
    const double rel_drift = drift / std::abs(h0);

    const bool ok = worst_grad <= 1e-5 && rel_drift < 1e-6;
    char detail[96];
    std::snprintf(detail, sizeof(detail), "gradient err=%.2e, energy drift=%.2e", worst_grad,
                  rel_drift);
    criterion(6, "Hamilton-Jacobi integrator", ok, detail);
}

// ----- criterion 7: figure reproductions -----
void figures(const fs::path& base) {
    // (a) potential: sign change and a unique interior global minimum
    exp::ExperimentConfig pot = exp::default_config();
    pot.output_dir = (base / "potential").string();
    pot.emit_plots = false;
    exp::cmd_potential(pot);
    const exp::CsvTable table = exp::read_csv(pot.output_dir + "/potential.csv");
    const int vi = table.column_index("V");
    std::vector<double> v;
    for (const auto& row : table.rows) v.push_back(row[vi]);

    int sign_changes = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k - 1] != 0.0 && v[k] != 0.0 && (v[k - 1] < 0.0) != (v[k] < 0.0)) ++sign_changes;
    const auto min_it = std::min_element(v.begin(), v.end());
    const std::size_t min_idx = static_cast<std::size_t>(min_it - v.begin());
    const bool interior = min_idx > 0 && min_idx + 1 < v.size();
    int ties = 0;
    for (double x : v)
        if (x == *min_it) ++ties;
    const bool a_ok = sign_changes >= 1 && interior && ties == 1;
    char detail_a[128];
    std::snprintf(detail_a, sizeof(detail_a),
                  "sign changes=%d, min at %zu/%zu (ties=%d), Vmin=%.3g", sign_changes,
                  min_idx, v.size(), ties, *min_it);
    criterion(7, "figure (a): learning potential shape", a_ok, detail_a);

    // (b) entangle: non-decreasing concurrence after the cut, final >= 0.5
    exp::ExperimentConfig ent = exp::default_config();
    ent.output_dir = (base / "entangle").string();
    ent.emit_plots = false;
    exp::cmd_entangle(ent);
    const exp::CsvTable series = exp::read_csv(ent.output_dir + "/concurrence.csv");
    const int ci = series.column_index("concurrence");
    bool monotone = true;
    double worst_dip = 0.0;
    for (std::size_t k = 1; k < series.rows.size(); ++k) {
        const double dip = series.rows[k - 1][ci] - series.rows[k][ci];
        worst_dip = std::max(worst_dip, dip);
        if (dip > 1e-12) monotone = false;
    }
    const double final_c = series.rows.back()[ci];
    const bool b_ok = monotone && final_c >= 0.5;
    char detail_b[128];
    std::snprintf(detail_b, sizeof(detail_b), "monotone=%s (worst dip %.2e), final C=%.4f",
                  monotone ? "yes" : "no", worst_dip, final_c);
    criterion(7, "figure (b): growing concurrence", b_ok, detail_b);
}

// ----- criterion 8: canonical solver -----
void canonical_solver() {
    Eigen::VectorXd action(1);
    action << 1.0;

    std::vector<double> epsilons{0.08, 0.04, 0.02, 0.01, 0.005};
    std::vector<double> residuals;
    for (double eps : epsilons) {
        const auto ph = canonical::pendulum_hamiltonian(eps);
        const auto g = canonical::solve_generator(ph, action, 1, canonical::default_grid);
        residuals.push_back(canonical::hj_residual(ph, g));
    }
    bool ratios_ok = true;
    double worst_ratio = residuals[0] / residuals[1];
    for (std::size_t k = 1; k < residuals.size(); ++k) {
        const double ratio = residuals[k - 1] / residuals[k];
        if (ratio < 2.5 || ratio > 6.0) ratios_ok = false;
    }
    const double res_001 = residuals[3];

    const auto ph_sym = canonical::pendulum_hamiltonian(0.1);
    const auto g_sym = canonical::solve_generator(ph_sym, action, 1, canonical::default_grid);
    const double defect = canonical::symplectic_check(g_sym, 128);

    // first-order generator for H0 = omega I: G = -(eps/omega) sin(phi)
    const double omega = 2.0, eps = 0.05;
    const auto ph_lin = canonical::linear_hamiltonian(omega, eps);
    const auto g_lin = canonical::solve_generator(ph_lin, action, 1, canonical::default_grid);
    double worst_gen = 0.0;
    for (int k = 0; k < 128; ++k) {
        const double phi = 2.0 * std::numbers::pi * k / 128;
        Eigen::VectorXd p(1);
        p << phi;
        worst_gen = std::max(worst_gen,
                             std::abs(g_lin.eval(p) - (-(eps / omega) * std::sin(phi))));
    }

    const bool ok = res_001 <= 1e-3 && ratios_ok && defect <= 1e-6 && worst_gen <= 1e-8;
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "res(0.01)=%.2e, ratio[0]=%.2f, defect(0.1)=%.2e, |G + (e/w)sin|=%.2e",
                  res_001, worst_ratio, defect, worst_gen);
    criterion(8, "canonical solver", ok, detail);
}

// ----- criterion 9: byte-identical repeated runs -----
void determinism(const fs::path& base) {
    exp::ExperimentConfig cfg = exp::default_config();
    cfg.net.epoch_length_T = 0.5;  // shortened run, same machinery
    cfg.net.n_epochs = 2;
    cfg.ensemble_size = 4;
    cfg.emit_plots = false;

    bool ok = true;
    std::string detail = "stable:";
    auto check = [&](const std::string& name, const std::string& subdir,
                     const std::function<void(const exp::ExperimentConfig&)>& run,
                     const std::vector<std::string>& artifacts) {
        exp::ExperimentConfig local = cfg;
        local.output_dir = (base / (subdir + "_1")).string();
        run(local);
        exp::ExperimentConfig again = cfg;
        again.output_dir = (base / (subdir + "_2")).string();
        run(again);
        for (const auto& artifact : artifacts) {
            const std::string a = slurp(local.output_dir + "/" + artifact);
            const std::string b = slurp(again.output_dir + "/" + artifact);
            if (a.empty() || a != b) ok = false;
        }
        detail += " " + name;
    };
    check("simulate", "det_sim", [](const exp::ExperimentConfig& c) { exp::cmd_simulate(c); },
          {"trajectory.csv"});
    check("potential", "det_pot",
          [](const exp::ExperimentConfig& c) { exp::cmd_potential(c); }, {"potential.csv"});
    check("entangle", "det_ent",
          [](const exp::ExperimentConfig& c) { exp::cmd_entangle(c); },
          {"evolution.csv", "concurrence.csv"});
    check("canonical", "det_can",
          [](const exp::ExperimentConfig& c) { exp::cmd_canonical(c, {}); },
          {"canonical.csv"});
    criterion(9, "byte-identical repeated runs", ok, detail);
}

}  // namespace

int main() {
    const fs::path base = work_dir();
    witness_exactness();
    werner_threshold();
    ppt_equivalence();
    unitary_pipeline_oracle(base);
    physicality(base);
    hj_integrator();
    figures(base);
    canonical_solver();
    determinism(base);
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
