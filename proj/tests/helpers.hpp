#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "entnet/common/random.hpp"
#include "entnet/hjnet/dynamics.hpp"
#include "entnet/qboltz/density_matrix.hpp"

namespace entnet::testing {

using qboltz::Complex;
using qboltz::DensityMatrix;
using qboltz::Matrix2c;
using qboltz::Matrix4c;
using qboltz::Vector4c;

inline double gauss(std::mt19937_64& rng) {
    // Box-Muller on the deterministic uniform mapping.
    const double u1 = std::max(uniform_unit(rng), 1e-300);
    const double u2 = uniform_unit(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Complex cgauss(std::mt19937_64& rng) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    return Complex(re, im);
}

// Induced-measure random state: rho = A A^dag / Tr, full rank almost surely.
inline DensityMatrix random_density_matrix(std::mt19937_64& rng) {
    Matrix4c a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cgauss(rng);
    Matrix4c rho = a * a.adjoint();
    rho /= rho.trace().real();
    rho = (rho + rho.adjoint()) / 2.0;
    return DensityMatrix(rho);
}

inline DensityMatrix random_pure_state(std::mt19937_64& rng) {
    Vector4c psi;
    for (int i = 0; i < 4; ++i) psi(i) = cgauss(rng);
    return qboltz::pure_state(psi);
}

inline Matrix2c random_qubit_state(std::mt19937_64& rng) {
    Matrix2c a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = cgauss(rng);
    Matrix2c rho = a * a.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

// Haar-ish single-qubit unitary from the QR of a Gaussian matrix.
inline Matrix2c random_unitary2(std::mt19937_64& rng) {
    Matrix2c a;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = cgauss(rng);
    const Eigen::HouseholderQR<Matrix2c> qr(a);
    return qr.householderQ();
}

// e^{-i theta C} |++><++| e^{+i theta C} with C = sigma_z x sigma_z; the
// analytic Ising-phase family with concurrence |sin 2 theta|.
inline DensityMatrix ising_phase_state(double theta) {
    const Matrix4c c = qboltz::sigma_zz();
    Vector4c psi;
    psi << 0.5, 0.5, 0.5, 0.5;
    Vector4c evolved;
    for (int i = 0; i < 4; ++i)
        evolved(i) = std::exp(Complex(0.0, -theta * c(i, i).real())) * psi(i);
    return qboltz::pure_state(evolved);
}

inline hjnet::NetState random_net_state(std::mt19937_64& rng, int n, double amplitude = 1.0) {
    hjnet::NetState s = hjnet::NetState::zero(n);
    for (int i = 0; i < n; ++i) {
        s.y(i) = amplitude * uniform_in(rng, -1.0, 1.0);
        s.delta(i) = amplitude * uniform_in(rng, -1.0, 1.0);
        for (int j = 0; j < n; ++j) {
            s.w(i, j) = amplitude * uniform_in(rng, -1.0, 1.0);
            s.m(i, j) = amplitude * uniform_in(rng, -1.0, 1.0);
        }
    }
    return s;
}

}  // namespace entnet::testing
