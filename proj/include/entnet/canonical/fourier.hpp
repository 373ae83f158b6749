#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "entnet/common/errors.hpp"

namespace entnet::canonical {

// Uniform grid on the n-torus: phi_j = 2*pi*j/size per dimension, flattened
// row-major with the last dimension fastest.
struct TorusGrid {
    int n_dof;
    int size;

    TorusGrid(int n, int grid_size) : n_dof(n), size(grid_size) {
        if (n < 1) throw ConfigError("torus grid: dimension must be positive");
        if (size < 2) throw ConfigError("torus grid: size must be at least 2");
    }

    std::size_t total() const {
        std::size_t t = 1;
        for (int d = 0; d < n_dof; ++d) t *= static_cast<std::size_t>(size);
        return t;
    }

    Eigen::VectorXd point(std::size_t flat) const {
        Eigen::VectorXd phi(n_dof);
        for (int d = n_dof - 1; d >= 0; --d) {
            phi(d) = 2.0 * std::numbers::pi * static_cast<double>(flat % size) / size;
            flat /= static_cast<std::size_t>(size);
        }
        return phi;
    }
};

// Equal-weight (trapezoidal on the periodic domain) Fourier coefficient
//   (1/(2 pi)^n) int exp(-i m.phi) s(phi) dphi  ~  (1/size^n) sum_k exp(-i m.phi_k) s_k.
// Exact for band-limited samples below the grid Nyquist mode. The grid size
// is inferred from the sample count.
inline std::complex<double> fourier_project(const std::vector<double>& samples,
                                            const Eigen::VectorXi& m) {
    const int n = static_cast<int>(m.size());
    if (n < 1) throw ConfigError("fourier_project: empty mode vector");
    const int size = static_cast<int>(std::llround(std::pow(
        static_cast<double>(samples.size()), 1.0 / static_cast<double>(n))));
    TorusGrid grid(n, std::max(size, 2));
    if (grid.total() != samples.size())
        throw ConfigError("fourier_project: sample count is not a per-dimension power");
    const int max_mode = m.cwiseAbs().maxCoeff();
    if (size < 2 * max_mode + 2)
        throw ConfigError("fourier_project: grid too coarse for mode |m|=" +
                          std::to_string(max_mode) + " (need >= " +
                          std::to_string(2 * max_mode + 2) + " points per dimension)");
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const Eigen::VectorXd phi = grid.point(k);
        double angle = 0.0;
        for (int d = 0; d < n; ++d) angle += m(d) * phi(d);
        acc += samples[k] * std::exp(std::complex<double>(0.0, -angle));
    }
    return acc / static_cast<double>(samples.size());
}

}  // namespace entnet::canonical
