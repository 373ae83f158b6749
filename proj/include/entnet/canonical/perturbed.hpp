#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "entnet/common/errors.hpp"

namespace entnet::canonical {

// H(phi, I) = H0(I) + epsilon V(phi, I) on the n-torus.
struct PerturbedHamiltonian {
    std::function<double(const Eigen::VectorXd&)> h0;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> h0_prime;
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> v;  // (phi, I)
    double epsilon = 0.0;
    int n_dof = 1;

    double total(const Eigen::VectorXd& phi, const Eigen::VectorXd& action) const {
        return h0(action) + epsilon * v(phi, action);
    }

    // h0_prime must match central finite differences of h0 to 1e-6 relative.
    void check_gradient(const Eigen::VectorXd& action) const {
        const double h = 1e-5 * (1.0 + action.cwiseAbs().maxCoeff());
        const Eigen::VectorXd grad = h0_prime(action);
        for (int d = 0; d < action.size(); ++d) {
            Eigen::VectorXd up = action, dn = action;
            up(d) += h;
            dn(d) -= h;
            const double fd = (h0(up) - h0(dn)) / (2.0 * h);
            if (std::abs(fd - grad(d)) > 1e-6 * (1.0 + std::abs(grad(d))))
                throw ConfigError("perturbed Hamiltonian: h0_prime inconsistent with h0 "
                                  "(component " + std::to_string(d) + ")");
        }
    }
};

// H0 = I^2/2, V = cos(phi): the pendulum-type demo family.
inline PerturbedHamiltonian pendulum_hamiltonian(double epsilon) {
    PerturbedHamiltonian ph;
    ph.h0 = [](const Eigen::VectorXd& i) { return 0.5 * i.squaredNorm(); };
    ph.h0_prime = [](const Eigen::VectorXd& i) { return i; };
    ph.v = [](const Eigen::VectorXd& phi, const Eigen::VectorXd&) { return std::cos(phi(0)); };
    ph.epsilon = epsilon;
    ph.n_dof = 1;
    return ph;
}

// H0 = omega I, V = cos(phi): linear rotor, solved exactly at first order.
inline PerturbedHamiltonian linear_hamiltonian(double omega, double epsilon) {
    PerturbedHamiltonian ph;
    ph.h0 = [omega](const Eigen::VectorXd& i) { return omega * i.sum(); };
    ph.h0_prime = [omega](const Eigen::VectorXd& i) {
        return Eigen::VectorXd::Constant(i.size(), omega);
    };
    ph.v = [](const Eigen::VectorXd& phi, const Eigen::VectorXd&) { return std::cos(phi(0)); };
    ph.epsilon = epsilon;
    ph.n_dof = 1;
    return ph;
}

}  // namespace entnet::canonical
