#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "entnet/common/errors.hpp"

namespace entnet::qboltz {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

inline Matrix2c pauli_x() {
    Matrix2c s;
    s << 0, 1, 1, 0;
    return s;
}

inline Matrix2c pauli_y() {
    Matrix2c s;
    s << 0, Complex(0, -1), Complex(0, 1), 0;
    return s;
}

inline Matrix2c pauli_z() {
    Matrix2c s;
    s << 1, 0, 0, -1;
    return s;
}

// Kronecker product of single-qubit operators, basis order |00>,|01>,|10>,|11>
// (composite index 2a+b for qubits a, b).
inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
    Matrix4c out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

inline Matrix4c sigma_zz() { return kron(pauli_z(), pauli_z()); }
inline Matrix4c sigma_xx() { return kron(pauli_x(), pauli_x()); }
inline Matrix4c sigma_yy() { return kron(pauli_y(), pauli_y()); }

inline double hermiticity_defect(const Matrix4c& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Two-qubit density matrix: Hermitian, unit trace, positive semidefinite
// within the tolerances below. Construction validates and keeps the spectrum
// seen by the validating eigensolve; matrices coming out of
// project_physical carry the clipped spectrum, which is nonnegative by
// construction.
class DensityMatrix {
public:
    static constexpr double herm_tol = 1e-10;
    static constexpr double trace_tol = 1e-10;
    static constexpr double psd_tol = 1e-9;

    explicit DensityMatrix(const Matrix4c& m) : m_(m) {
        const double herm = hermiticity_defect(m_);
        if (herm > herm_tol)
            throw NumericError("density matrix not Hermitian (defect=" + std::to_string(herm) + ")");
        const double tr = std::abs(m_.trace().real() - 1.0) + std::abs(m_.trace().imag());
        if (tr > trace_tol)
            throw NumericError("density matrix trace differs from 1 by " + std::to_string(tr));
        Eigen::SelfAdjointEigenSolver<Matrix4c> solver((m_ + m_.adjoint()) / 2.0,
                                                       Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw NumericError("density matrix eigensolve failed");
        eigs_ = solver.eigenvalues();
        if (eigs_(0) < -psd_tol)
            throw NumericError("density matrix not positive semidefinite (min eig=" +
                               std::to_string(eigs_(0)) + ")");
    }

    const Matrix4c& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    double trace_defect() const { return std::abs(m_.trace().real() - 1.0); }
    double hermiticity() const { return hermiticity_defect(m_); }
    double purity() const { return (m_ * m_).trace().real(); }

    // Ascending spectrum recorded when this matrix was validated/projected.
    const Eigen::Vector4d& eigenvalues() const { return eigs_; }
    double min_eigenvalue() const { return eigs_(0); }

private:
    struct ProjectedTag {};
    DensityMatrix(const Matrix4c& m, const Eigen::Vector4d& spectrum, ProjectedTag)
        : m_(m), eigs_(spectrum) {}

    friend DensityMatrix project_physical(const Matrix4c& raw);

    Matrix4c m_;
    Eigen::Vector4d eigs_;
};

// Hermitize, clip negative eigenvalues to zero and renormalize the trace.
// The explicit-Euler master-equation step can leave the PSD cone by O(dt^2);
// this puts every emitted state back on it.
inline DensityMatrix project_physical(const Matrix4c& raw) {
    const double herm = hermiticity_defect(raw);
    if (herm > 1e-3)
        throw NumericError("project_physical: input too far from Hermitian (defect=" +
                           std::to_string(herm) + ")");
    const Matrix4c h = (raw + raw.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix4c> solver(h);
    if (solver.info() != Eigen::Success)
        throw NumericError("project_physical: eigensolve failed");
    Eigen::Vector4d lambda = solver.eigenvalues().cwiseMax(0.0);
    const double total = lambda.sum();
    if (total <= 0.0)
        throw DegenerateStateError("project_physical: all eigenvalues clipped to zero");
    lambda /= total;
    const Matrix4c v = solver.eigenvectors();
    Matrix4c out = v * lambda.asDiagonal() * v.adjoint();
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix(out, lambda, DensityMatrix::ProjectedTag{});
}

inline DensityMatrix pure_state(const Vector4c& psi) {
    const Vector4c n = psi / std::sqrt(psi.squaredNorm());
    return DensityMatrix(n * n.adjoint());
}

// |++><++| — the separable default input state.
inline DensityMatrix plus_plus_state() {
    Vector4c psi;
    psi << 0.5, 0.5, 0.5, 0.5;
    return pure_state(psi);
}

// (|00> + |11>)/sqrt(2)
inline DensityMatrix bell_phi_plus() {
    Vector4c psi;
    psi << 1, 0, 0, 1;
    return pure_state(psi);
}

inline DensityMatrix maximally_mixed() {
    return DensityMatrix(Matrix4c::Identity() / 4.0);
}

inline DensityMatrix product_state(const Matrix2c& a, const Matrix2c& b) {
    return DensityMatrix(kron(a, b));
}

// p |Phi+><Phi+| + (1-p) I/4; entangled exactly when p > 1/3.
inline DensityMatrix werner_state(double p) {
    if (p < 0.0 || p > 1.0) throw ConfigError("werner_state: p must lie in [0,1]");
    return DensityMatrix(p * bell_phi_plus().matrix() +
                         (1.0 - p) * Matrix4c::Identity() / 4.0);
}

}  // namespace entnet::qboltz
