#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "entnet/common/errors.hpp"

namespace entnet::hjnet {

enum class Transfer { Tanh, Logistic, Identity };

inline double transfer_value(Transfer f, double x) {
    switch (f) {
        case Transfer::Tanh: return std::tanh(x);
        case Transfer::Logistic: return 1.0 / (1.0 + std::exp(-x));
        case Transfer::Identity: return x;
    }
    throw ConfigError("unknown transfer function");
}

inline double transfer_derivative(Transfer f, double x) {
    switch (f) {
        case Transfer::Tanh: {
            const double th = std::tanh(x);
            return 1.0 - th * th;
        }
        case Transfer::Logistic: {
            const double s = 1.0 / (1.0 + std::exp(-x));
            return s * (1.0 - s);
        }
        case Transfer::Identity: return 1.0;
    }
    throw ConfigError("unknown transfer function");
}

inline Transfer transfer_from_name(const std::string& name) {
    if (name == "tanh") return Transfer::Tanh;
    if (name == "logistic") return Transfer::Logistic;
    if (name == "identity") return Transfer::Identity;
    throw ConfigError("unknown transfer function '" + name +
                      "' (expected tanh|logistic|identity)");
}

inline std::string transfer_name(Transfer f) {
    switch (f) {
        case Transfer::Tanh: return "tanh";
        case Transfer::Logistic: return "logistic";
        case Transfer::Identity: return "identity";
    }
    return "?";
}

// Static description of one network and its training run.
struct NetConfig {
    int n_neurons = 2;
    double lambda = 1.0;                 // neuron time constant
    Transfer transfer = Transfer::Tanh;  // applied per neuron
    double omega = 1.0;                  // inertia constant of the epoch kinetic term
    double epoch_length_T = 2.5;
    double dt = 1e-3;
    int n_epochs = 3;
    Eigen::VectorXd external_input;  // Y_i
    Eigen::VectorXd thresholds;      // W_i0 * y_0 terms
    Eigen::VectorXd target;          // supervised reference for the error function
    std::uint64_t seed = 1;
    double hbar_eff = 1.0;           // phase scale of the wavefunction construction
    // Weight-energy coefficient of the generalised cost,
    //   E = mean squared deviation + (weight_coupling/2)|W|_F^2.
    // At the default 0 the cost is the plain supervised error and the
    // conjugate-weight equation dM/dt = -dE/dW vanishes identically, which
    // pins W at its seeded value for the whole run.
    double weight_coupling = 0.0;

    double total_time() const { return n_epochs * epoch_length_T; }
    long long steps() const { return std::llround(total_time() / dt); }

    std::vector<std::string> violations(const std::string& prefix = "") const {
        std::vector<std::string> out;
        auto bad = [&](const std::string& field, const std::string& why) {
            out.push_back(prefix + field + ": " + why);
        };
        if (n_neurons < 1) bad("n_neurons", "must be a positive integer");
        if (!(lambda > 0)) bad("lambda", "must be > 0");
        if (!(omega > 0)) bad("omega", "must be > 0");
        if (!(dt > 0)) bad("dt", "must be > 0");
        if (!(epoch_length_T >= dt)) bad("epoch_length_T", "must be >= dt");
        if (n_epochs < 1) bad("n_epochs", "must be a positive integer");
        if (!(hbar_eff > 0)) bad("hbar_eff", "must be > 0");
        if (!(weight_coupling >= 0)) bad("weight_coupling", "must be nonnegative");
        auto check_vec = [&](const Eigen::VectorXd& v, const std::string& field) {
            if (v.size() != n_neurons)
                bad(field, "length " + std::to_string(v.size()) + " != n_neurons " +
                               std::to_string(n_neurons));
            else if (!v.allFinite())
                bad(field, "contains non-finite entries");
        };
        check_vec(external_input, "external_input");
        check_vec(thresholds, "thresholds");
        check_vec(target, "target");
        return out;
    }

    void validate(const std::string& prefix = "") const {
        const auto v = violations(prefix);
        if (v.empty()) return;
        std::string msg = "invalid network config:";
        for (const auto& item : v) msg += "\n  " + item;
        throw ConfigError(msg);
    }
};

}  // namespace entnet::hjnet
