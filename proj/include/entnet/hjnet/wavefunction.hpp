#pragma once

#include <complex>
#include <vector>

#include "entnet/common/errors.hpp"

namespace entnet::hjnet {

// psi = A exp(-i J / hbar_eff), pointwise over matching amplitude and action
// fields. |psi| = A everywhere.
inline std::vector<std::complex<double>> wavefunction_from_action(
    const std::vector<double>& amplitude, const std::vector<double>& action,
    double hbar_eff) {
    if (!(hbar_eff > 0)) throw ConfigError("wavefunction_from_action: hbar_eff must be > 0");
    if (amplitude.size() != action.size())
        throw ConfigError("wavefunction_from_action: amplitude and action differ in shape");
    std::vector<std::complex<double>> out(amplitude.size());
    for (std::size_t k = 0; k < amplitude.size(); ++k)
        out[k] = amplitude[k] * std::exp(std::complex<double>(0.0, -action[k] / hbar_eff));
    return out;
}

}  // namespace entnet::hjnet
