#pragma once

#include <vector>

#include <Eigen/Core>

#include "nanomag/emitter.hpp"
#include "nanomag/modes.hpp"

namespace nanomag {

/// Lorentzian mode-sum spectral density seen by a circularly polarized spin
/// transition:
///
///   J(omega) = sum_n g_n^2 (Gamma/2pi) / ((omega - omega_n)^2 + (Gamma/2)^2)
///
/// normalized so that the golden-rule decay rate is 2*pi*J(omega0) and
/// integral J d omega = sum_n g_n^2. Construction quantizes the modes once;
/// evaluation is const and safe to call concurrently.
class SpectralDensity {
public:
    SpectralDensity(const EmitterConfig& emitter, const CavityConfig& cavity);

    double operator()(double omega) const;
    /// Contribution of mode index n (1-based) alone.
    double term(int n, double omega) const;

    const std::vector<MagnonMode>& modes() const { return modes_; }
    const std::vector<double>& couplings() const { return couplings_; }

private:
    std::vector<MagnonMode> modes_;
    std::vector<double> couplings_;
};

struct SpectralGrid {
    std::vector<double> omegas; ///< rad/s, strictly increasing
    std::vector<double> values; ///< J, rad/s
    CavityConfig cavity;
    Eigen::Vector3d emitter_position = Eigen::Vector3d::Zero();
    int n_max = 0;
};

/// Heat map of J over (H0, omega/omega_K(H0)). values is row-major with one
/// row per H0 entry.
struct FieldSweepMap {
    std::vector<double> H0;               ///< A/m
    std::vector<double> omega_over_kittel;
    std::vector<double> kittel;           ///< omega_K(H0), rad/s
    std::vector<double> values;           ///< J, rad/s

    double omega(std::size_t i, std::size_t j) const { return omega_over_kittel[j] * kittel[i]; }
    double at(std::size_t i, std::size_t j) const { return values[i * omega_over_kittel.size() + j]; }

    /// Intensities span many decades; plotting tools should use a
    /// nonlinear (e.g. logarithmic) colour scale.
    static constexpr const char* kColorScaleNote = "J spans several decades; use a nonlinear colour scale";
};

/// Single-point evaluation. Throws std::domain_error if the emitter is inside the sphere.
double spectral_density(double omega, const EmitterConfig& emitter, const CavityConfig& cavity);

/// J sampled on a strictly increasing grid. threads = 0 uses every core.
SpectralGrid spectral_scan(const std::vector<double>& omegas, const EmitterConfig& emitter,
                           const CavityConfig& cavity, unsigned threads = 0);

/// J over a grid of internal fields. The cavity template supplies radius,
/// material and n_max; its static fields are replaced by each H0 in turn.
FieldSweepMap field_sweep_map(const std::vector<double>& H0_values,
                              const std::vector<double>& omega_over_kittel,
                              const EmitterConfig& emitter, const CavityConfig& cavity_template,
                              unsigned threads = 0);

/// Indices of strict local maxima of a sampled curve.
std::vector<std::size_t> local_maxima(const std::vector<double>& values);

} // namespace nanomag
