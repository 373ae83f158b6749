#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "entnet/canonical/fourier.hpp"
#include "entnet/canonical/perturbed.hpp"
#include "entnet/common/errors.hpp"

namespace entnet::canonical {

using Complex = std::complex<double>;
using ModeKey = std::vector<int>;  // mode vector m, lexicographically ordered in the map
using ModeMap = std::map<ModeKey, Complex>;

inline std::string mode_to_string(const ModeKey& m) {
    std::string out = "(";
    for (std::size_t i = 0; i < m.size(); ++i)
        out += (i ? "," : "") + std::to_string(m[i]);
    return out + ")";
}

struct SolveInfo {
    int iterations = 0;
    double final_change = 0.0;
    std::vector<double> changes;  // successive-iterate sup-norm change
};

namespace detail {

inline Complex eval_modes(const ModeMap& modes, const Eigen::VectorXd& phi) {
    Complex acc = 0.0;
    for (const auto& [m, g] : modes) {
        double angle = 0.0;
        for (std::size_t d = 0; d < m.size(); ++d) angle += m[d] * phi(d);
        acc += g * std::exp(Complex(0.0, angle));
    }
    return acc;
}

inline Eigen::VectorXd eval_modes_grad_phi(const ModeMap& modes, const Eigen::VectorXd& phi) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(phi.size());
    for (const auto& [m, g] : modes) {
        double angle = 0.0;
        for (std::size_t d = 0; d < m.size(); ++d) angle += m[d] * phi(d);
        const Complex e = g * std::exp(Complex(0.0, angle));
        for (Eigen::Index d = 0; d < phi.size(); ++d)
            acc(d) += Complex(0.0, static_cast<double>(m[d])) * e;
    }
    return acc.real();
}

}  // namespace detail

// Truncated Fourier series g_m(J) of the canonical-transformation generator
// G(phi, J), solved at one action point. The series re-solved at J +- j_step
// along each action direction backs the finite-difference dG/dJ.
struct GeneratorSeries {
    ModeMap modes;  // m != 0, |m_i| <= truncation_order, g_{-m} = conj(g_m)
    int truncation_order = 0;
    Eigen::VectorXd action_j;
    int grid_size = 0;

    double j_step = 0.0;
    std::vector<ModeMap> modes_plus;   // per action direction, at J + j_step e_d
    std::vector<ModeMap> modes_minus;  // per action direction, at J - j_step e_d

    SolveInfo info;

    int n_dof() const { return static_cast<int>(action_j.size()); }
    bool has_action_derivative() const {
        return j_step > 0 && modes_plus.size() == static_cast<std::size_t>(n_dof()) &&
               modes_minus.size() == static_cast<std::size_t>(n_dof());
    }

    // g_{-m} = conj(g_m) and no stored zero mode; rejects corrupted series.
    void check_reality(double tol = 1e-12) const {
        for (const auto& [m, g] : modes) {
            if (std::all_of(m.begin(), m.end(), [](int x) { return x == 0; }))
                throw NumericError("generator series stores a zero mode");
            ModeKey neg(m.size());
            for (std::size_t d = 0; d < m.size(); ++d) neg[d] = -m[d];
            const auto it = modes.find(neg);
            if (it == modes.end() || std::abs(std::conj(g) - it->second) > tol)
                throw NumericError("generator series breaks reality at mode " +
                                   mode_to_string(m));
        }
    }

    Complex eval_complex(const Eigen::VectorXd& phi) const {
        return detail::eval_modes(modes, phi);
    }
    double eval(const Eigen::VectorXd& phi) const { return eval_complex(phi).real(); }

    // dG/dphi, analytic from the series.
    Eigen::VectorXd grad_phi(const Eigen::VectorXd& phi) const {
        return detail::eval_modes_grad_phi(modes, phi);
    }

    // dG/dJ by central difference over the neighbour solves.
    Eigen::VectorXd grad_action(const Eigen::VectorXd& phi) const {
        if (!has_action_derivative())
            throw ConfigError("generator series carries no action-derivative stencil");
        Eigen::VectorXd out(n_dof());
        for (int d = 0; d < n_dof(); ++d)
            out(d) = (detail::eval_modes(modes_plus[d], phi).real() -
                      detail::eval_modes(modes_minus[d], phi).real()) /
                     (2.0 * j_step);
        return out;
    }

    // Test/demo helper: a hand-built series whose coefficients do not depend
    // on the action.
    static GeneratorSeries action_independent(const ModeMap& modes, int order,
                                              const Eigen::VectorXd& action, int grid) {
        GeneratorSeries g;
        g.modes = modes;
        g.truncation_order = order;
        g.action_j = action;
        g.grid_size = grid;
        g.j_step = 1e-4 * (1.0 + action.cwiseAbs().maxCoeff());
        g.modes_plus.assign(action.size(), modes);
        g.modes_minus.assign(action.size(), modes);
        return g;
    }
};

inline constexpr int default_truncation_order = 8;
inline constexpr int default_grid = 64;

namespace detail {

inline std::vector<ModeKey> half_space_modes(int n, int order) {
    // Enumerate m in [-order, order]^n and keep those whose first nonzero
    // component is positive; the mirror modes follow by conjugation.
    std::vector<ModeKey> out;
    const long long width = 2 * order + 1;
    long long total = 1;
    for (int d = 0; d < n; ++d) total *= width;
    for (long long flat = 0; flat < total; ++flat) {
        ModeKey m(n);
        long long rest = flat;
        for (int d = n - 1; d >= 0; --d) {
            m[d] = static_cast<int>(rest % width) - order;
            rest /= width;
        }
        for (int d = 0; d < n; ++d) {
            if (m[d] > 0) {
                out.push_back(m);
                break;
            }
            if (m[d] < 0) break;
        }
    }
    return out;
}

inline std::pair<ModeMap, SolveInfo> solve_at_action(const PerturbedHamiltonian& ph,
                                                     const Eigen::VectorXd& action,
                                                     int order, int grid, double tol,
                                                     int max_iter) {
    const int n = ph.n_dof;
    const Eigen::VectorXd h0p = ph.h0_prime(action);
    const double h0j = ph.h0(action);

    const std::vector<ModeKey> half = half_space_modes(n, order);
    std::vector<double> denom(half.size());
    for (std::size_t i = 0; i < half.size(); ++i) {
        double d = 0.0;
        for (int k = 0; k < n; ++k) d += half[i][k] * h0p(k);
        if (std::abs(d) < 1e-12)
            throw ResonanceError("resonant mode m=" + mode_to_string(half[i]) +
                                 ": m.dH0/dJ vanishes");
        denom[i] = d;
    }

    const TorusGrid tg(n, grid);
    const std::size_t points = tg.total();
    std::vector<Eigen::VectorXd> phis(points);
    for (std::size_t k = 0; k < points; ++k) phis[k] = tg.point(k);

    ModeMap g;
    SolveInfo info;
    std::vector<double> samples(points);
    for (int iter = 1; iter <= max_iter; ++iter) {
        // Bracketed quantity of the g_m fixed point:
        //   eps V(phi, J + G_phi) + H0(J + G_phi) - H0(J) - dH0/dJ . G_phi
        for (std::size_t k = 0; k < points; ++k) {
            const Eigen::VectorXd gphi = detail::eval_modes_grad_phi(g, phis[k]);
            const Eigen::VectorXd shifted = action + gphi;
            samples[k] = ph.epsilon * ph.v(phis[k], shifted) + ph.h0(shifted) - h0j -
                         h0p.dot(gphi);
        }
        ModeMap g_next;
        double change = 0.0;
        for (std::size_t i = 0; i < half.size(); ++i) {
            Eigen::VectorXi m(n);
            for (int d = 0; d < n; ++d) m(d) = half[i][d];
            const Complex coeff = Complex(0.0, 1.0) * fourier_project(samples, m) / denom[i];
            g_next[half[i]] = coeff;
            ModeKey neg(half[i]);
            for (int& x : neg) x = -x;
            g_next[neg] = std::conj(coeff);
            const auto old = g.find(half[i]);
            change = std::max(change,
                              std::abs(coeff - (old == g.end() ? Complex(0) : old->second)));
        }
        g = std::move(g_next);
        info.iterations = iter;
        info.final_change = change;
        info.changes.push_back(change);
        if (change <= tol) return {g, info};
    }
    throw ConvergenceError("solve_generator: no convergence after " +
                               std::to_string(max_iter) + " iterations",
                           info.final_change);
}

}  // namespace detail

// Fixed-point solve of
//   g_m(J) = [i / (m . dH0/dJ)] F_m[ eps V(phi, J+G_phi) + H0(J+G_phi) - H0(J)
//                                    - dH0/dJ . G_phi ]
// starting from G = 0, with the series re-solved at J +- delta to back the
// action derivative of the transform.
inline GeneratorSeries solve_generator(const PerturbedHamiltonian& ph,
                                       const Eigen::VectorXd& action, int order, int grid,
                                       double tol = 1e-10, int max_iter = 64) {
    if (ph.n_dof < 1 || action.size() != ph.n_dof)
        throw ConfigError("solve_generator: action dimension does not match n_dof");
    if (order < 1) throw ConfigError("solve_generator: truncation order must be >= 1");
    if (grid < 2 * order + 2)
        throw ConfigError("solve_generator: grid must be >= 2*order+2 points per dimension");
    if (!(tol >= 0)) throw ConfigError("solve_generator: tol must be nonnegative");
    if (max_iter < 1) throw ConfigError("solve_generator: max_iter must be >= 1");
    ph.check_gradient(action);

    GeneratorSeries series;
    series.truncation_order = order;
    series.action_j = action;
    series.grid_size = grid;

    auto [modes, info] = detail::solve_at_action(ph, action, order, grid, tol, max_iter);
    series.modes = std::move(modes);
    series.info = std::move(info);

    series.j_step = 1e-4 * (1.0 + action.cwiseAbs().maxCoeff());
    for (int d = 0; d < ph.n_dof; ++d) {
        Eigen::VectorXd up = action, dn = action;
        up(d) += series.j_step;
        dn(d) -= series.j_step;
        series.modes_plus.push_back(
            detail::solve_at_action(ph, up, order, grid, tol, max_iter).first);
        series.modes_minus.push_back(
            detail::solve_at_action(ph, dn, order, grid, tol, max_iter).first);
    }
    return series;
}

// K(J) = (1/(2 pi)^n) int [H0(J + G_phi) + eps V(phi, J + G_phi)] dphi over
// the same torus quadrature the solve used.
inline double new_hamiltonian_K(const PerturbedHamiltonian& ph, const GeneratorSeries& g) {
    const TorusGrid tg(ph.n_dof, g.grid_size);
    double acc = 0.0;
    for (std::size_t k = 0; k < tg.total(); ++k) {
        const Eigen::VectorXd phi = tg.point(k);
        const Eigen::VectorXd shifted = g.action_j + g.grad_phi(phi);
        acc += ph.h0(shifted) + ph.epsilon * ph.v(phi, shifted);
    }
    return acc / static_cast<double>(tg.total());
}

// sup over the torus grid of |H(phi, J + G_phi) - K(J)|: how far the
// truncated generator is from solving the Hamilton-Jacobi equation.
inline double hj_residual(const PerturbedHamiltonian& ph, const GeneratorSeries& g) {
    const double k_val = new_hamiltonian_K(ph, g);
    const TorusGrid tg(ph.n_dof, g.grid_size);
    double worst = 0.0;
    for (std::size_t k = 0; k < tg.total(); ++k) {
        const Eigen::VectorXd phi = tg.point(k);
        const Eigen::VectorXd shifted = g.action_j + g.grad_phi(phi);
        worst = std::max(worst, std::abs(ph.total(phi, shifted) - k_val));
    }
    return worst;
}

// I = J + dG/dphi, psi = phi + dG/dJ, angles reduced mod 2 pi.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> apply_transform(
    const GeneratorSeries& g, const Eigen::VectorXd& phi, const Eigen::VectorXd& action) {
    if (phi.size() != g.n_dof() || action.size() != g.n_dof())
        throw ConfigError("apply_transform: dimension mismatch");
    const Eigen::VectorXd new_action = action + g.grad_phi(phi);
    Eigen::VectorXd psi = phi + g.grad_action(phi);
    const double two_pi = 2.0 * std::numbers::pi;
    for (Eigen::Index d = 0; d < psi.size(); ++d) {
        psi(d) = std::fmod(psi(d), two_pi);
        if (psi(d) < 0) psi(d) += two_pi;
    }
    return {new_action, psi};
}

// max over the grid of |det d(psi,J)/d(phi,I) - 1| for one degree of
// freedom. With dI = b dJ + a dphi and dpsi = c dphi + d dJ the determinant
// reduces to c/b; both entries come from central differences (phi step 1e-5,
// action step j_step).
inline double symplectic_check(const GeneratorSeries& g, int grid) {
    if (g.n_dof() != 1)
        throw ConfigError("symplectic_check: implemented for one degree of freedom only");
    if (grid < 2) throw ConfigError("symplectic_check: grid must be >= 2");
    g.check_reality();
    if (!g.has_action_derivative())
        throw ConfigError("symplectic_check: series carries no action-derivative stencil");

    const double h = 1e-5;
    auto g_action = [&](double phi_val) {
        Eigen::VectorXd p(1);
        p << phi_val;
        return (detail::eval_modes(g.modes_plus[0], p).real() -
                detail::eval_modes(g.modes_minus[0], p).real()) /
               (2.0 * g.j_step);
    };
    double worst = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double phi_val = 2.0 * std::numbers::pi * k / grid;
        const double dpsi_dphi = 1.0 + (g_action(phi_val + h) - g_action(phi_val - h)) / (2.0 * h);
        Eigen::VectorXd p(1);
        p << phi_val;
        const double di_dj = 1.0 + (detail::eval_modes_grad_phi(g.modes_plus[0], p)(0) -
                                    detail::eval_modes_grad_phi(g.modes_minus[0], p)(0)) /
                                       (2.0 * g.j_step);
        worst = std::max(worst, std::abs(dpsi_dphi / di_dj - 1.0));
    }
    return worst;
}

}  // namespace entnet::canonical
