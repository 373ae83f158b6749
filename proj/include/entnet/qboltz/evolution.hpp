#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "entnet/common/errors.hpp"
#include "entnet/hjnet/state.hpp"
#include "entnet/qboltz/density_matrix.hpp"

namespace entnet::qboltz {

// Scalar coupling g(t) on a uniform time grid, plus the damping rate and the
// fixed two-qubit operator the coupling multiplies.
struct CouplingSeries {
    std::vector<double> times;
    std::vector<double> g;
    double gamma = 0.0;
    Matrix4c c_op = sigma_zz();

    std::size_t size() const { return times.size(); }

    double dt() const {
        if (times.size() < 2) throw ConfigError("coupling series needs at least two samples");
        return times[1] - times[0];
    }

    void validate() const {
        if (times.size() != g.size())
            throw ConfigError("coupling series: times and g lengths differ");
        if (times.size() < 2) throw ConfigError("coupling series needs at least two samples");
        const double step = times[1] - times[0];
        for (std::size_t k = 1; k < times.size(); ++k) {
            const double s = times[k] - times[k - 1];
            if (!(s > 0) || std::abs(s - step) > 1e-9 * std::max(1.0, step))
                throw ConfigError("coupling series: time grid not uniform");
        }
        for (double v : g)
            if (!std::isfinite(v)) throw ConfigError("coupling series: non-finite g sample");
        if (gamma < 0) throw ConfigError("coupling series: gamma must be nonnegative");
        if (hermiticity_defect(c_op) > 1e-12)
            throw ConfigError("coupling series: c_op not Hermitian");
    }
};

// g(t) = scale * (sum_k delta_k(t) F_k(t) + E(t)), the instantaneous
// interaction Hamiltonian recorded along the trajectory.
inline CouplingSeries coupling_signal(const hjnet::Trajectory& traj, double scale,
                                      double gamma = 0.0,
                                      const Matrix4c& c_op = sigma_zz()) {
    if (traj.empty()) throw ConfigError("coupling_signal: empty trajectory");
    if (traj.interaction.size() != traj.size())
        throw ConfigError("coupling_signal: trajectory carries no interaction samples");
    CouplingSeries out;
    out.times.reserve(traj.size());
    out.g.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out.times.push_back(traj.states[k].t);
        out.g.push_back(scale * traj.interaction[k]);
    }
    out.gamma = gamma;
    out.c_op = c_op;
    return out;
}

// Forward-scattering generator contribution -i g [C, rho] (von Neumann
// convention). Traceless and Hermitian for Hermitian C, rho.
inline Matrix4c forward_scattering(const DensityMatrix& rho, double g,
                                   const Matrix4c& c_op) {
    const Matrix4c comm = c_op * rho.matrix() - rho.matrix() * c_op;
    return Complex(0.0, -g) * comm;
}

// Damping contribution -(gamma/2) g_now g_prev [C, [C, rho]]: the memory
// integral collapsed onto adjacent time steps.
inline Matrix4c damping_term(const DensityMatrix& rho, double g_now, double g_prev,
                             double gamma, const Matrix4c& c_op) {
    const Matrix4c inner = c_op * rho.matrix() - rho.matrix() * c_op;
    const Matrix4c outer = c_op * inner - inner * c_op;
    return -(gamma / 2.0) * g_now * g_prev * outer;
}

// One explicit Euler step of the simplified quantum Boltzmann equation,
// followed by the positivity projection.
inline DensityMatrix boltzmann_step(const DensityMatrix& rho, double g_now, double g_prev,
                                    double dt, const CouplingSeries& params) {
    const Matrix4c rhs = forward_scattering(rho, g_now, params.c_op) +
                         damping_term(rho, g_now, g_prev, params.gamma, params.c_op);
    return project_physical(rho.matrix() + dt * rhs);
}

// Evolve rho over the coupling grid: one density matrix per sample, the
// first being the projected initial state. The step from times[k] to
// times[k+1] uses g_now = g[k] and g_prev = g[k-1] (zero before the start).
inline std::vector<DensityMatrix> run_evolution(const CouplingSeries& params,
                                                const DensityMatrix& rho0) {
    params.validate();
    std::vector<DensityMatrix> out;
    out.reserve(params.size());
    out.push_back(project_physical(rho0.matrix()));
    for (std::size_t k = 0; k + 1 < params.size(); ++k) {
        const double dt = params.times[k + 1] - params.times[k];
        const double g_now = params.g[k];
        const double g_prev = k == 0 ? 0.0 : params.g[k - 1];
        out.push_back(boltzmann_step(out.back(), g_now, g_prev, dt, params));
    }
    return out;
}

inline std::vector<DensityMatrix> run_evolution(const hjnet::Trajectory& traj,
                                                const DensityMatrix& rho0,
                                                const CouplingSeries& params) {
    if (params.size() != traj.size())
        throw ConfigError("run_evolution: coupling grid does not match trajectory");
    for (std::size_t k = 0; k < traj.size(); ++k)
        if (std::abs(params.times[k] - traj.states[k].t) > 1e-9)
            throw ConfigError("run_evolution: coupling grid does not match trajectory");
    return run_evolution(params, rho0);
}

// Ensemble-averaged coupling, emitted with the time origin shifted so the
// training window ends at t = 0 (input arrives at negative time).
struct PotentialSeries {
    std::vector<double> times;
    std::vector<double> v;
};

inline PotentialSeries learning_potential(const std::vector<hjnet::Trajectory>& ensemble,
                                          double scale) {
    if (ensemble.size() < 2)
        throw ConfigError("learning_potential: need at least two trajectories");
    const std::size_t n = ensemble.front().size();
    for (const auto& traj : ensemble) {
        if (traj.size() != n || traj.interaction.size() != n)
            throw ConfigError("learning_potential: ensemble grids mismatch");
        for (std::size_t k = 0; k < n; ++k)
            if (std::abs(traj.states[k].t - ensemble.front().states[k].t) > 1e-9)
                throw ConfigError("learning_potential: ensemble grids mismatch");
    }
    PotentialSeries out;
    out.times.resize(n);
    out.v.assign(n, 0.0);
    const double t_end = ensemble.front().end_time();
    for (std::size_t k = 0; k < n; ++k)
        out.times[k] = ensemble.front().states[k].t - t_end;
    for (const auto& traj : ensemble)
        for (std::size_t k = 0; k < n; ++k) out.v[k] += scale * traj.interaction[k];
    for (double& v : out.v) v /= static_cast<double>(ensemble.size());
    return out;
}

}  // namespace entnet::qboltz
