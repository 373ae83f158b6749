#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "entnet/witness/two_qubit.hpp"

namespace entnet::witness {

// Entanglement diagnostics for one density matrix at one time step.
struct WitnessReport {
    double t = 0;
    double concurrence = 0;
    double negativity = 0;
    Eigen::Vector4d wootters_lambdas = Eigen::Vector4d::Zero();  // descending
    double pt_min_eigenvalue = 0;
    double purity = 0;
};

// Descending square roots of the eigenvalues of rho*rho_tilde, computed
// through the Hermitian form sqrt(rho) rho_tilde sqrt(rho) (same spectrum,
// numerically stable).
inline Eigen::Vector4d wootters_lambdas(const DensityMatrix& rho) {
    const Matrix4c sq = matrix_sqrt_psd<4>(rho.matrix());
    Matrix4c herm = sq * spin_flip(rho) * sq;
    herm = (herm + herm.adjoint()) / 2.0;
    Eigen::Vector4d ev = hermitian_eigenvalues<4>(herm);
    for (int i = 0; i < 4; ++i) {
        if (ev(i) < -1e-10)
            throw NumericError("wootters_lambdas: product spectrum significantly negative");
        // The product spectrum lies in [0,1]; entries below 1e-15 are
        // rounding noise that the square root would blow up to ~3e-8.
        ev(i) = ev(i) < 1e-15 ? 0.0 : std::sqrt(ev(i));
    }
    return ev;
}

// Wootters concurrence C = max(0, l1 - l2 - l3 - l4); valid for any
// two-qubit state.
inline double concurrence(const DensityMatrix& rho) {
    const Eigen::Vector4d l = wootters_lambdas(rho);
    const double c = l(0) - l(1) - l(2) - l(3);
    return std::clamp(c, 0.0, 1.0);
}

// Cross-check route: eigenvalues of the explicit matrix square root
// M = sqrt(sqrt(rho) rho_tilde sqrt(rho)).
inline double concurrence_via_nested_sqrt(const DensityMatrix& rho) {
    const Matrix4c sq = matrix_sqrt_psd<4>(rho.matrix());
    Matrix4c herm = sq * spin_flip(rho) * sq;
    herm = (herm + herm.adjoint()) / 2.0;
    const Matrix4c root = matrix_sqrt_psd<4>(herm);
    const Eigen::Vector4d l = hermitian_eigenvalues<4>(root);
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

// Cross-check route: direct (non-Hermitian) eigenvalues of rho*rho_tilde.
inline double concurrence_via_product_eigs(const DensityMatrix& rho) {
    const Matrix4c prod = rho.matrix() * spin_flip(rho);
    Eigen::ComplexEigenSolver<Matrix4c> solver(prod);
    if (solver.info() != Eigen::Success)
        throw NumericError("concurrence_via_product_eigs: eigensolver failed");
    Eigen::Vector4d l;
    for (int i = 0; i < 4; ++i)
        l(i) = std::sqrt(std::max(solver.eigenvalues()(i).real(), 0.0));
    std::sort(l.data(), l.data() + 4, std::greater<double>());
    return std::clamp(l(0) - l(1) - l(2) - l(3), 0.0, 1.0);
}

// C = sqrt(2 (1 - Tr rho_A^2)). A valid entanglement measure for pure
// states only, so mixed input is rejected.
inline double concurrence_pure(const DensityMatrix& rho) {
    const double purity = rho.purity();
    if (purity < 1.0 - 1e-6)
        throw PurityError("concurrence_pure: state is mixed (Tr rho^2=" +
                          std::to_string(purity) +
                          "); use the Wootters concurrence instead");
    const Matrix2c reduced = partial_trace(rho, Subsystem::A);
    const double tr2 = (reduced * reduced).trace().real();
    const double c2 = 2.0 * (1.0 - tr2);
    return std::clamp(std::sqrt(std::max(c2, 0.0)), 0.0, 1.0);
}

inline double pt_min_eigenvalue(const DensityMatrix& rho) {
    const Eigen::Vector4d ev = hermitian_eigenvalues<4>(partial_transpose(rho, Subsystem::B));
    return ev(3);
}

// Negativity N = (||rho^{T_B}||_1 - 1)/2; positive iff entangled for two
// qubits.
inline double negativity(const DensityMatrix& rho) {
    const Eigen::Vector4d ev = hermitian_eigenvalues<4>(partial_transpose(rho, Subsystem::B));
    const double n = (ev.cwiseAbs().sum() - 1.0) / 2.0;
    return std::clamp(n, 0.0, 0.5);
}

inline WitnessReport witness_report(const DensityMatrix& rho, double t) {
    WitnessReport r;
    r.t = t;
    r.wootters_lambdas = wootters_lambdas(rho);
    r.concurrence = std::clamp(r.wootters_lambdas(0) - r.wootters_lambdas(1) -
                                   r.wootters_lambdas(2) - r.wootters_lambdas(3),
                               0.0, 1.0);
    r.negativity = negativity(rho);
    r.pt_min_eigenvalue = pt_min_eigenvalue(rho);
    r.purity = rho.purity();
    return r;
}

}  // namespace entnet::witness
