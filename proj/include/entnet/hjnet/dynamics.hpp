#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "entnet/common/errors.hpp"
#include "entnet/common/random.hpp"
#include "entnet/hjnet/config.hpp"
#include "entnet/hjnet/state.hpp"

namespace entnet::hjnet {

inline void check_dims(const Eigen::VectorXd& y, const Eigen::MatrixXd& weights,
                       const NetConfig& cfg) {
    const int n = cfg.n_neurons;
    if (y.size() != n || weights.rows() != n || weights.cols() != n ||
        cfg.external_input.size() != n || cfg.thresholds.size() != n ||
        cfg.target.size() != n)
        throw ConfigError("dimension mismatch against n_neurons=" + std::to_string(n));
}

// Activation argument a_i = Y_i + theta_i + sum_j W_ij y_j.
inline Eigen::VectorXd activation_argument(const Eigen::VectorXd& y,
                                           const Eigen::MatrixXd& weights,
                                           const NetConfig& cfg) {
    return cfg.external_input + cfg.thresholds + weights * y;
}

// F_i = (1/lambda)(-y_i + f_i(a_i)). `weights` is whichever matrix the
// caller's Hamiltonian places inside F: the instantaneous W or an
// epoch-shifted lookup.
inline Eigen::VectorXd neuron_model_F(const Eigen::VectorXd& y,
                                      const Eigen::MatrixXd& weights,
                                      const NetConfig& cfg) {
    check_dims(y, weights, cfg);
    const Eigen::VectorXd a = activation_argument(y, weights, cfg);
    Eigen::VectorXd f(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) f(i) = transfer_value(cfg.transfer, a(i));
    return (f - y) / cfg.lambda;
}

// E = (1/N) sum_i (y_i - target_i)^2 + (weight_coupling/2) |W|_F^2.
// The second term is the generalised-cost extension; it vanishes at the
// default weight_coupling = 0.
inline double error_E(const Eigen::VectorXd& y, const Eigen::MatrixXd& w,
                      const NetConfig& cfg) {
    if (y.size() != cfg.target.size())
        throw ConfigError("error_E: dimension mismatch");
    const double supervised =
        (y - cfg.target).squaredNorm() / static_cast<double>(y.size());
    return supervised + 0.5 * cfg.weight_coupling * w.squaredNorm();
}

inline Eigen::VectorXd error_gradient(const Eigen::VectorXd& y, const NetConfig& cfg) {
    return 2.0 * (y - cfg.target) / static_cast<double>(y.size());
}

inline Eigen::MatrixXd error_gradient_w(const Eigen::MatrixXd& w, const NetConfig& cfg) {
    return cfg.weight_coupling * w;
}

// h = sum_j delta_j F_j + E; at most linear in the costates.
inline double hamiltonian_h(const Eigen::VectorXd& delta, const Eigen::VectorXd& f,
                            double e) {
    if (delta.size() != f.size())
        throw ConfigError("hamiltonian_h: dimension mismatch");
    return delta.dot(f) + e;
}

// Epoch index n in t = nT + tau.
inline int epoch_index(double t, double epoch_length) {
    return static_cast<int>(std::floor(t / epoch_length + 1e-9));
}

// Delay terms of the extended Hamiltonian, read once at the start of a step
// and held fixed across the RK4 substeps (the standard explicit treatment of
// a delay ODE at dt << T).
struct EpochTerms {
    Eigen::MatrixXd shifted_w;  // (S_T W)(t), enters F
    double past_kinetic = 0;    // sum_{v=1}^{n+1} |(S_vT M)(t)|_F^2
};

inline EpochTerms epoch_terms(const Trajectory& traj, double t, const NetConfig& cfg) {
    EpochTerms out;
    out.shifted_w = epoch_shift(traj, 1, t, EpochField::Weights);
    const int n = epoch_index(t, cfg.epoch_length_T);
    for (int v = 1; v <= n + 1; ++v)
        out.past_kinetic += epoch_shift(traj, v, t, EpochField::Conjugates).squaredNorm();
    return out;
}

// H = sum_k delta_k F_k(t, y, S_T W) + (1/2w) sum_{k,l} sum_{v=0}^{n+1}
//     (S_vT M)^2_kl + E(t, y, W).
// The v=0 kinetic term is the live M; the rest comes frozen from the buffer.
inline double extended_hamiltonian_H(const NetState& s, const EpochTerms& terms,
                                     const NetConfig& cfg) {
    const Eigen::VectorXd f = neuron_model_F(s.y, terms.shifted_w, cfg);
    const double kinetic = (s.m.squaredNorm() + terms.past_kinetic) / (2.0 * cfg.omega);
    return s.delta.dot(f) + kinetic + error_E(s.y, s.w, cfg);
}

inline double extended_hamiltonian_H(const NetState& s, const Trajectory& traj,
                                     const NetConfig& cfg) {
    return extended_hamiltonian_H(s, epoch_terms(traj, s.t, cfg), cfg);
}

// d(delta_i)/dt = (1/lambda)[delta_i - sum_j delta_j f'_j(a_j) W_ji] - dE/dy_i
// for a given weight matrix.
inline Eigen::VectorXd costate_rhs(const Eigen::VectorXd& y, const Eigen::VectorXd& delta,
                                   const Eigen::MatrixXd& weights, const NetConfig& cfg) {
    const Eigen::VectorXd a = activation_argument(y, weights, cfg);
    Eigen::VectorXd fp(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) fp(i) = transfer_derivative(cfg.transfer, a(i));
    return (delta - weights.transpose() * delta.cwiseProduct(fp)) / cfg.lambda -
           error_gradient(y, cfg);
}

// Continuous-time backpropagation signal, evaluated with the state's own
// weights (the simple, unextended system).
inline Eigen::VectorXd costate_derivative(const NetState& s, const NetConfig& cfg) {
    check_dims(s.y, s.w, cfg);
    return costate_rhs(s.y, s.delta, s.w, cfg);
}

struct StateDerivative {
    Eigen::VectorXd dy;
    Eigen::VectorXd ddelta;
    Eigen::MatrixXd dw;
    Eigen::MatrixXd dm;
};

// Right-hand side of the extended characteristic system at frozen epoch
// terms:
//   dy/dt =  dH/ddelta = F(y, S_T W)
//   ddelta/dt = -dH/dy
//   dW/dt =  dH/dM = M/omega          (live v=0 kinetic term)
//   dM/dt = -dH/dW = -dE/dW           (the weights inside F are a history
//                                      lookup, so only E sees the live W)
inline StateDerivative characteristic_rhs(const NetState& s, const EpochTerms& terms,
                                          const NetConfig& cfg) {
    StateDerivative d;
    d.dy = neuron_model_F(s.y, terms.shifted_w, cfg);
    d.ddelta = costate_rhs(s.y, s.delta, terms.shifted_w, cfg);
    d.dw = s.m / cfg.omega;
    d.dm = -error_gradient_w(s.w, cfg);
    return d;
}

// Classical fourth-order Runge-Kutta step with the epoch terms frozen.
inline NetState rk4_step(const NetState& s, const EpochTerms& terms, const NetConfig& cfg,
                         double dt) {
    auto advance = [&](const NetState& base, const StateDerivative& d, double h) {
        NetState out = base;
        out.y += h * d.dy;
        out.delta += h * d.ddelta;
        out.w += h * d.dw;
        out.m += h * d.dm;
        return out;
    };
    const StateDerivative k1 = characteristic_rhs(s, terms, cfg);
    const StateDerivative k2 = characteristic_rhs(advance(s, k1, dt / 2), terms, cfg);
    const StateDerivative k3 = characteristic_rhs(advance(s, k2, dt / 2), terms, cfg);
    const StateDerivative k4 = characteristic_rhs(advance(s, k3, dt), terms, cfg);

    NetState out = s;
    out.t = s.t + dt;
    out.y += dt / 6.0 * (k1.dy + 2 * k2.dy + 2 * k3.dy + k4.dy);
    out.delta += dt / 6.0 * (k1.ddelta + 2 * k2.ddelta + 2 * k3.ddelta + k4.ddelta);
    out.w += dt / 6.0 * (k1.dw + 2 * k2.dw + 2 * k3.dw + k4.dw);
    out.m += dt / 6.0 * (k1.dm + 2 * k2.dm + 2 * k3.dm + k4.dm);
    if (!out.all_finite())
        throw IntegrationError("characteristic step produced a non-finite state", s.t);
    return out;
}

inline NetState characteristic_step(const NetState& s, const Trajectory& traj,
                                    const NetConfig& cfg) {
    return rk4_step(s, epoch_terms(traj, s.t, cfg), cfg, cfg.dt);
}

// Seeded initial weights, i.i.d. uniform on [-0.5, 0.5]; y, delta, M start
// at zero.
inline NetState initial_state(const NetConfig& cfg) {
    NetState s = NetState::zero(cfg.n_neurons);
    std::mt19937_64 rng(cfg.seed);
    for (int i = 0; i < cfg.n_neurons; ++i)
        for (int j = 0; j < cfg.n_neurons; ++j)
            s.w(i, j) = uniform_in(rng, -0.5, 0.5);
    return s;
}

namespace detail {
inline void record_diagnostics(Trajectory& traj, const NetState& s, const NetConfig& cfg) {
    const EpochTerms terms = epoch_terms(traj, s.t, cfg);
    traj.error.push_back(error_E(s.y, s.w, cfg));
    traj.energy.push_back(extended_hamiltonian_H(s, terms, cfg));
    // Interaction Hamiltonian measured with the instantaneous weights.
    traj.interaction.push_back(
        hamiltonian_h(s.delta, neuron_model_F(s.y, s.w, cfg), traj.error.back()));
}
}  // namespace detail

// Integrate the extended characteristic system over n_epochs * T from a
// given initial state. Deterministic; one state per dt.
inline Trajectory learning_run(const NetConfig& cfg, const NetState& initial) {
    cfg.validate();
    check_dims(initial.y, initial.w, cfg);
    const long long steps = cfg.steps();

    Trajectory traj;
    traj.dt = cfg.dt;
    traj.epoch_length = cfg.epoch_length_T;
    traj.states.reserve(static_cast<std::size_t>(steps) + 1);
    traj.states.push_back(initial);

    const double t0 = initial.t;
    for (long long k = 0; k < steps; ++k) {
        const NetState& cur = traj.states.back();
        detail::record_diagnostics(traj, cur, cfg);
        NetState next = rk4_step(cur, epoch_terms(traj, cur.t, cfg), cfg, cfg.dt);
        next.t = t0 + static_cast<double>(k + 1) * cfg.dt;  // exact grid
        traj.states.push_back(std::move(next));
    }
    detail::record_diagnostics(traj, traj.states.back(), cfg);
    traj.action = action_accumulate(traj, 0.0);
    return traj;
}

inline Trajectory learning_run(const NetConfig& cfg) {
    return learning_run(cfg, initial_state(cfg));
}

}  // namespace entnet::hjnet
