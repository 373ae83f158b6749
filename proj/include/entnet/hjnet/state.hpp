#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "entnet/common/errors.hpp"
#include "entnet/hjnet/config.hpp"

namespace entnet::hjnet {

// One snapshot of the characteristic system.
struct NetState {
    double t = 0;
    Eigen::VectorXd y;      // neuron outputs
    Eigen::VectorXd delta;  // costates, delta_i = dJ/dy_i
    Eigen::MatrixXd w;      // weights
    Eigen::MatrixXd m;      // conjugate weights, m_ij = dJ/dW_ij

    static NetState zero(int n) {
        NetState s;
        s.y = Eigen::VectorXd::Zero(n);
        s.delta = Eigen::VectorXd::Zero(n);
        s.w = Eigen::MatrixXd::Zero(n, n);
        s.m = Eigen::MatrixXd::Zero(n, n);
        return s;
    }

    bool all_finite() const {
        return std::isfinite(t) && y.allFinite() && delta.allFinite() &&
               w.allFinite() && m.allFinite();
    }
};

// Time-ordered history of one run plus per-step diagnostics. The stored
// states double as the delay buffer behind the epoch-shift lookups.
struct Trajectory {
    double dt = 0;
    double epoch_length = 0;  // T

    std::vector<NetState> states;
    std::vector<double> action;       // J(t) = J0 - int E dtau
    std::vector<double> error;        // E(t)
    std::vector<double> energy;       // extended Hamiltonian H(t)
    std::vector<double> interaction;  // sum_k delta_k F_k(y, W) + E, the coupling base

    std::size_t size() const { return states.size(); }
    bool empty() const { return states.empty(); }
    double start_time() const { return states.front().t; }
    double end_time() const { return states.back().t; }

    // Uniform spacing to one part in 1e9.
    bool uniform_grid() const {
        for (std::size_t k = 1; k < states.size(); ++k) {
            const double step = states[k].t - states[k - 1].t;
            if (!(step > 0) || std::abs(step - dt) > 1e-9 * std::max(1.0, dt))
                return false;
        }
        return true;
    }
};

enum class EpochField { Weights, Conjugates };

// (S_vT X)(t) = X(t - vT): nearest stored sample within dt/2, zero matrix
// before the start of history ("nothing learned before training starts").
inline Eigen::MatrixXd epoch_shift(const Trajectory& traj, int v, double t, EpochField field) {
    if (v < 0) throw ConfigError("epoch_shift: shift index must be nonnegative");
    if (traj.empty()) throw ConfigError("epoch_shift: empty trajectory");
    const int n = static_cast<int>(traj.states.front().y.size());
    const double lookup = t - static_cast<double>(v) * traj.epoch_length;
    const double t0 = traj.start_time();
    if (lookup < t0 - 1e-12 * std::max(1.0, std::abs(t0)))
        return Eigen::MatrixXd::Zero(n, n);
    const long long idx = std::llround((lookup - t0) / traj.dt);
    if (idx < 0 || idx >= static_cast<long long>(traj.size()))
        throw std::logic_error("epoch_shift: lookup outside stored history");
    const NetState& s = traj.states[static_cast<std::size_t>(idx)];
    if (std::abs(s.t - lookup) > traj.dt / 2 + 1e-9 * std::max(1.0, std::abs(lookup)))
        throw std::logic_error("epoch_shift: no stored sample within dt/2 of lookup");
    return field == EpochField::Weights ? s.w : s.m;
}

// J(t) accumulated by the trapezoidal rule over the stored E samples.
inline std::vector<double> action_accumulate(const Trajectory& traj, double j0) {
    if (traj.error.size() != traj.size())
        throw ConfigError("action_accumulate: E samples missing for some stored states");
    std::vector<double> out(traj.size());
    if (out.empty()) return out;
    out[0] = j0;
    for (std::size_t k = 1; k < traj.size(); ++k) {
        const double step = traj.states[k].t - traj.states[k - 1].t;
        out[k] = out[k - 1] - step * (traj.error[k - 1] + traj.error[k]) / 2.0;
    }
    return out;
}

}  // namespace entnet::hjnet
