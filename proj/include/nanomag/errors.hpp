#pragma once

#include <stdexcept>
#include <string>

namespace nanomag {

// Physical-domain violations (negative radius, unsaturated sphere, emitter
// inside the particle, ...) are reported with std::domain_error.

/// Invalid or inconsistent run configuration, including time grids that are
/// too coarse for the dynamics they are asked to resolve.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical procedure failed: singular response, step-size underflow,
/// non-convergent integral.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nanomag
