#pragma once

#include <Eigen/Dense>
#include <string>

#include "entnet/common/errors.hpp"
#include "entnet/qboltz/density_matrix.hpp"

namespace entnet::witness {

using qboltz::Complex;
using qboltz::DensityMatrix;
using qboltz::Matrix2c;
using qboltz::Matrix4c;

enum class Subsystem { A, B };

template <int N>
struct HermitianEigs {
    Eigen::Matrix<double, N, 1> values;    // descending
    Eigen::Matrix<Complex, N, N> vectors;  // column i pairs with values(i)
};

// Descending eigenvalues (and vectors) of a small Hermitian matrix.
// Backward error of the decomposition is that of Eigen's self-adjoint
// solver, well below the 1e-10*norm contract for 2x2 and 4x4 inputs.
template <int N>
HermitianEigs<N> hermitian_eigs(const Eigen::Matrix<Complex, N, N>& m) {
    const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-8)
        throw NumericError("hermitian_eigs: input not Hermitian (defect=" +
                           std::to_string(defect) + ")");
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, N, N>> solver(
        (m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw NumericError("hermitian_eigs: eigensolver did not converge");
    HermitianEigs<N> out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    return out;
}

template <int N>
Eigen::Matrix<double, N, 1> hermitian_eigenvalues(const Eigen::Matrix<Complex, N, N>& m) {
    return hermitian_eigs<N>(m).values;
}

// PSD square root via eigendecomposition. Eigenvalues in [-1e-10, 0) are
// treated as rounding noise and clipped.
template <int N>
Eigen::Matrix<Complex, N, N> matrix_sqrt_psd(const Eigen::Matrix<Complex, N, N>& m) {
    const auto eig = hermitian_eigs<N>(m);
    Eigen::Matrix<double, N, 1> lambda = eig.values;
    for (int i = 0; i < N; ++i) {
        if (lambda(i) < -1e-10)
            throw NumericError("matrix_sqrt_psd: input not PSD (eig=" +
                               std::to_string(lambda(i)) + ")");
        lambda(i) = std::sqrt(std::max(lambda(i), 0.0));
    }
    Eigen::Matrix<Complex, N, N> out =
        eig.vectors * lambda.asDiagonal() * eig.vectors.adjoint();
    return (out + out.adjoint()) / 2.0;
}

// Reduced state of one qubit; composite index is 2a+b.
inline Matrix2c partial_trace(const DensityMatrix& rho, Subsystem keep) {
    const Matrix4c& r = rho.matrix();
    Matrix2c out = Matrix2c::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                out(i, j) += (keep == Subsystem::A) ? r(2 * i + k, 2 * j + k)
                                                    : r(2 * k + i, 2 * k + j);
    return out;
}

// Transpose the indices of one subsystem. Hermitian and unit trace always;
// PSD only for PPT states. The raw overload exists because the transpose of
// an entangled state is not itself a density matrix.
inline Matrix4c partial_transpose(const Matrix4c& r, Subsystem sub) {
    Matrix4c out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int ap = 0; ap < 2; ++ap)
                for (int bp = 0; bp < 2; ++bp) {
                    if (sub == Subsystem::B)
                        out(2 * a + b, 2 * ap + bp) = r(2 * a + bp, 2 * ap + b);
                    else
                        out(2 * a + b, 2 * ap + bp) = r(2 * ap + b, 2 * a + bp);
                }
    return out;
}

inline Matrix4c partial_transpose(const DensityMatrix& rho, Subsystem sub) {
    return partial_transpose(rho.matrix(), sub);
}

// Wootters spin flip: (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
inline Matrix4c spin_flip(const DensityMatrix& rho) {
    const Matrix4c yy = qboltz::sigma_yy();
    return yy * rho.matrix().conjugate() * yy;
}

}  // namespace entnet::witness
