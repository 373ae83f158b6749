#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "entnet/common/errors.hpp"
#include "entnet/hjnet/config.hpp"
#include "entnet/qboltz/density_matrix.hpp"

namespace entnet::exp {

using json = nlohmann::json;

struct CouplingConfig {
    double scale = 1.0;
    double gamma = 0.0;
    std::string c_op = "zz";                // zz | xx | path to a 4x4 matrix csv
    std::optional<double> constant_g;       // debug: fixed g, bypasses the network signal
};

struct ExperimentConfig {
    hjnet::NetConfig net;
    CouplingConfig coupling;
    std::string rho0 = "plus-plus";         // plus-plus | bell | path to a product-state csv
    int ensemble_size = 64;
    double warmup_fraction = 0.05;
    std::string output_dir = "out";
    bool emit_plots = true;

    std::vector<std::string> violations() const {
        std::vector<std::string> out = net.violations("net.");
        if (!std::isfinite(coupling.scale)) out.push_back("coupling.scale: must be finite");
        if (!(coupling.gamma >= 0)) out.push_back("coupling.gamma: must be nonnegative");
        if (coupling.c_op != "zz" && coupling.c_op != "xx" &&
            !std::filesystem::exists(coupling.c_op))
            out.push_back("coupling.c_op: expected zz, xx or an existing matrix file, got '" +
                          coupling.c_op + "'");
        if (rho0 != "plus-plus" && rho0 != "bell" && !std::filesystem::exists(rho0))
            out.push_back("rho0: expected plus-plus, bell or an existing product-state file, "
                          "got '" + rho0 + "'");
        if (ensemble_size < 1) out.push_back("ensemble_size: must be >= 1");
        if (!(warmup_fraction >= 0.0 && warmup_fraction < 0.5))
            out.push_back("warmup_fraction: must lie in [0, 0.5)");
        if (output_dir.empty()) out.push_back("output_dir: must not be empty");
        return out;
    }

    void validate() const {
        const auto v = violations();
        if (v.empty()) return;
        std::string msg = "invalid config:";
        for (const auto& item : v) msg += "\n  " + item;
        throw ConfigError(msg);
    }
};

// Flagship defaults: the two-neuron supervised run behind the potential and
// concurrence figures. Weight coupling keeps the conjugate-weight dynamics
// alive (the weights oscillate instead of freezing at their seeded values),
// which is what gives the averaged interaction its well-and-rise shape.
inline ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.net.n_neurons = 2;
    cfg.net.lambda = 1.0;
    cfg.net.transfer = hjnet::Transfer::Tanh;
    cfg.net.omega = 1.0;
    cfg.net.epoch_length_T = 1.7;
    cfg.net.dt = 1e-3;
    cfg.net.n_epochs = 3;
    cfg.net.external_input = Eigen::Vector2d(1.05, 2.0);
    cfg.net.thresholds = Eigen::Vector2d(0.0, 0.0);
    cfg.net.target = Eigen::Vector2d(0.92, 0.99);
    cfg.net.seed = 264;
    cfg.net.hbar_eff = 1.0;
    cfg.net.weight_coupling = 2.8;
    cfg.coupling.scale = 0.1;
    cfg.coupling.gamma = 0.1;
    cfg.coupling.c_op = "zz";
    cfg.rho0 = "plus-plus";
    cfg.ensemble_size = 64;
    cfg.warmup_fraction = 0.35;
    cfg.output_dir = "out";
    cfg.emit_plots = true;
    return cfg;
}

namespace detail {

inline void check_keys(const json& obj, const std::string& scope,
                       const std::vector<std::string>& known,
                       std::vector<std::string>& problems) {
    for (const auto& [key, value] : obj.items()) {
        bool ok = false;
        for (const auto& k : known)
            if (k == key) { ok = true; break; }
        if (!ok)
            problems.push_back("unknown key: " + (scope.empty() ? key : scope + "." + key));
    }
}

template <typename T>
void read_field(const json& obj, const std::string& scope, const std::string& key, T& out,
                std::vector<std::string>& problems) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        problems.push_back((scope.empty() ? key : scope + "." + key) +
                           ": wrong type (" + e.what() + ")");
    }
}

inline void read_vector(const json& obj, const std::string& scope, const std::string& key,
                        Eigen::VectorXd& out, std::vector<std::string>& problems) {
    if (!obj.contains(key)) return;
    std::vector<double> v;
    read_field(obj, scope, key, v, problems);
    if (!v.empty() || (obj.at(key).is_array() && obj.at(key).empty()))
        out = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace detail

// Parse a config document on top of the defaults. Unknown keys are rejected
// and every problem is reported, not just the first.
inline ExperimentConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    ExperimentConfig cfg = default_config();
    std::vector<std::string> problems;

    detail::check_keys(doc, "", {"net", "coupling", "rho0", "ensemble_size",
                                 "warmup_fraction", "output_dir", "emit_plots"},
                       problems);

    if (doc.contains("net")) {
        const json& net = doc.at("net");
        if (!net.is_object()) {
            problems.push_back("net: must be an object");
        } else {
            detail::check_keys(net, "net",
                               {"n_neurons", "lambda", "transfer", "omega", "epoch_length_T",
                                "dt", "n_epochs", "external_input", "thresholds", "target",
                                "seed", "hbar_eff", "weight_coupling"},
                               problems);
            detail::read_field(net, "net", "n_neurons", cfg.net.n_neurons, problems);
            detail::read_field(net, "net", "lambda", cfg.net.lambda, problems);
            if (net.contains("transfer")) {
                std::string name;
                detail::read_field(net, "net", "transfer", name, problems);
                try {
                    cfg.net.transfer = hjnet::transfer_from_name(name);
                } catch (const ConfigError& e) {
                    problems.push_back(std::string("net.transfer: ") + e.what());
                }
            }
            detail::read_field(net, "net", "omega", cfg.net.omega, problems);
            detail::read_field(net, "net", "epoch_length_T", cfg.net.epoch_length_T, problems);
            detail::read_field(net, "net", "dt", cfg.net.dt, problems);
            detail::read_field(net, "net", "n_epochs", cfg.net.n_epochs, problems);
            detail::read_vector(net, "net", "external_input", cfg.net.external_input, problems);
            detail::read_vector(net, "net", "thresholds", cfg.net.thresholds, problems);
            detail::read_vector(net, "net", "target", cfg.net.target, problems);
            detail::read_field(net, "net", "seed", cfg.net.seed, problems);
            detail::read_field(net, "net", "hbar_eff", cfg.net.hbar_eff, problems);
            detail::read_field(net, "net", "weight_coupling", cfg.net.weight_coupling,
                               problems);
        }
    }
    if (doc.contains("coupling")) {
        const json& cp = doc.at("coupling");
        if (!cp.is_object()) {
            problems.push_back("coupling: must be an object");
        } else {
            detail::check_keys(cp, "coupling", {"scale", "gamma", "c_op", "constant_g"},
                               problems);
            detail::read_field(cp, "coupling", "scale", cfg.coupling.scale, problems);
            detail::read_field(cp, "coupling", "gamma", cfg.coupling.gamma, problems);
            detail::read_field(cp, "coupling", "c_op", cfg.coupling.c_op, problems);
            if (cp.contains("constant_g")) {
                double g = 0;
                detail::read_field(cp, "coupling", "constant_g", g, problems);
                cfg.coupling.constant_g = g;
            }
        }
    }
    detail::read_field(doc, "", "rho0", cfg.rho0, problems);
    detail::read_field(doc, "", "ensemble_size", cfg.ensemble_size, problems);
    detail::read_field(doc, "", "warmup_fraction", cfg.warmup_fraction, problems);
    detail::read_field(doc, "", "output_dir", cfg.output_dir, problems);
    detail::read_field(doc, "", "emit_plots", cfg.emit_plots, problems);

    for (const auto& v : cfg.violations()) problems.push_back(v);
    if (!problems.empty()) {
        std::string msg = "invalid config:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ConfigError(msg);
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

inline json to_json(const ExperimentConfig& cfg) {
    json net{{"n_neurons", cfg.net.n_neurons},
             {"lambda", cfg.net.lambda},
             {"transfer", hjnet::transfer_name(cfg.net.transfer)},
             {"omega", cfg.net.omega},
             {"epoch_length_T", cfg.net.epoch_length_T},
             {"dt", cfg.net.dt},
             {"n_epochs", cfg.net.n_epochs},
             {"external_input", std::vector<double>(cfg.net.external_input.begin(),
                                                    cfg.net.external_input.end())},
             {"thresholds", std::vector<double>(cfg.net.thresholds.begin(),
                                                cfg.net.thresholds.end())},
             {"target", std::vector<double>(cfg.net.target.begin(), cfg.net.target.end())},
             {"seed", cfg.net.seed},
             {"hbar_eff", cfg.net.hbar_eff},
             {"weight_coupling", cfg.net.weight_coupling}};
    json coupling{{"scale", cfg.coupling.scale},
                  {"gamma", cfg.coupling.gamma},
                  {"c_op", cfg.coupling.c_op}};
    if (cfg.coupling.constant_g) coupling["constant_g"] = *cfg.coupling.constant_g;
    return json{{"net", net},
                {"coupling", coupling},
                {"rho0", cfg.rho0},
                {"ensemble_size", cfg.ensemble_size},
                {"warmup_fraction", cfg.warmup_fraction},
                {"output_dir", cfg.output_dir},
                {"emit_plots", cfg.emit_plots}};
}

// FNV-1a over the canonical (key-sorted) JSON dump.
inline std::uint64_t config_hash(const ExperimentConfig& cfg) {
    const std::string dump = to_json(cfg).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace entnet::exp
