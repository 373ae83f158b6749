#pragma once

#include <stdexcept>
#include <string>

namespace entnet {

// Bad or inconsistent user input: config files, CLI flags, dimension
// mismatches, too-coarse grids. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failure at run time: divergent integration, non-convergent
// iterations, degenerate states. The CLI maps this to exit code 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integration produced a non-finite state; carries the failing time.
class IntegrationError : public NumericError {
public:
    IntegrationError(const std::string& what, double t)
        : NumericError(what + " at t=" + std::to_string(t)), time(t) {}

    double time;
};

// A retained Fourier mode hit a zero divisor m·H0'(J).
class ResonanceError : public NumericError {
public:
    using NumericError::NumericError;
};

// Fixed-point iteration exhausted max_iter; carries the last residual.
class ConvergenceError : public NumericError {
public:
    ConvergenceError(const std::string& what, double residual)
        : NumericError(what + " (last change=" + std::to_string(residual) + ")"),
          last_residual(residual) {}

    double last_residual;
};

// Positivity projection clipped the whole spectrum away.
class DegenerateStateError : public NumericError {
public:
    using NumericError::NumericError;
};

// A pure-state-only formula was handed a mixed state.
class PurityError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace entnet
