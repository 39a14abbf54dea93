#pragma once

// Shared helpers for the test suites: a fixed-seed generator and a few
// reference configurations.

#include <cmath>
#include <random>

#include <Eigen/Core>

#include "nanomag/modes.hpp"

namespace nanomag::testing {

/// Deterministic generator; every property test starts from the same seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 20241016) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

    /// Uniformly distributed direction on the unit sphere.
    Eigen::Vector3d direction()
    {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, kTwoPi);
        const double s = std::sqrt(1.0 - z * z);
        return {s * std::cos(phi), s * std::sin(phi), z};
    }

private:
    std::mt19937_64 engine_;
};

/// R = 30 nm YIG sphere at mu0*H0 = 0.5 T.
inline CavityConfig reference_cavity(int n_max = 1, double Gamma = 1e7)
{
    MaterialParams mat = MaterialParams::yig();
    mat.Gamma = Gamma;
    return CavityConfig::from_internal_field(30e-9, mat, tesla_to_field(0.5), n_max);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

} // namespace nanomag::testing
