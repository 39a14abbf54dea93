#pragma once

// Non-Markovian decay of a spin into the magnon modes of the sphere.
//
// In the frame rotating at the transition frequency the excited-state
// amplitude obeys
//
//   dc/dt = - integral_0^t K(t - t') c(t') dt',
//   K(tau) = sum_n g_n^2 exp[(i(omega0 - omega_n) - Gamma_n/2) tau],
//
// which is the Fourier transform of the Lorentzian spectral density. Two
// independent solvers are provided: a trapezoidal Volterra scheme that works
// on K directly, and the equivalent pseudo-mode ODE integrated with an
// adaptive Dormand-Prince method.

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "nanomag/emitter.hpp"
#include "nanomag/material.hpp"
#include "nanomag/modes.hpp"

namespace nanomag {

struct KernelTerm {
    double coupling; ///< g_n, rad/s
    cdouble rate;    ///< i(omega0 - omega_n) - Gamma_n/2, 1/s

    double weight() const { return coupling * coupling; }
};

class MemoryKernel {
public:
    MemoryKernel() = default;
    explicit MemoryKernel(std::vector<KernelTerm> terms);

    cdouble operator()(double tau) const;
    /// K(0) = sum of g_n^2.
    double at_zero() const;
    /// Kernel with every coupling multiplied by s (weights by s^2).
    MemoryKernel scaled(double s) const;

    const std::vector<KernelTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    double max_coupling() const;
    double max_detuning() const;
    double max_damping() const;

private:
    std::vector<KernelTerm> terms_;
};

struct TimeSeries {
    std::vector<double> times;       ///< s
    std::vector<double> populations; ///< |c_e|^2
    /// Total magnon population sum |b_n|^2 (pseudo-mode solver only).
    std::vector<double> mode_population;
};

/// One kernel term per mode n = 1..n_max of the cavity.
MemoryKernel build_kernel(const EmitterConfig& emitter, const CavityConfig& cavity);

/// Throws ConfigError unless
///   dt <= min(2 pi / max|omega0 - omega_n|, 1/Gamma, 1/(10 max g_n)) / 10,
/// naming the constraint that binds. Unbounded constraints are skipped.
void check_time_step(const MemoryKernel& kernel, double dt);

/// Trapezoidal Volterra integration, O(N^2) in the number of steps.
TimeSeries evolve_volterra(const MemoryKernel& kernel, double t_end, double dt);

struct OdeTolerances {
    double absolute = 1e-11;
    double relative = 1e-10;
};

/// Pseudo-mode integration, O(N * modes). Throws NumericalError if the
/// adaptive step collapses.
TimeSeries evolve_pseudomode(const MemoryKernel& kernel, double t_end, double dt,
                             OdeTolerances tol = {});

// ---------------------------------------------------------------------------
// Shared single-excitation machinery, also used for emitter pairs.

/// Emitters (all in the frame of the common transition frequency) coupled to
/// damped bosonic modes:
///
///   dc_e/dt = -i sum_v G(e, v) b_v
///   db_v/dt = -i sum_e G(e, v) c_e + rate_v b_v
///
/// The state vector is [c_0 .. c_{E-1}, b_0 .. b_{M-1}].
struct SingleExcitationModel {
    Eigen::MatrixXd couplings;    ///< emitters x modes, rad/s
    std::vector<cdouble> rates;   ///< per mode, 1/s

    std::size_t emitter_count() const { return static_cast<std::size_t>(couplings.rows()); }
    std::size_t mode_count() const { return rates.size(); }
};

struct SingleExcitationTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> emitter_populations; ///< [emitter][sample]
    std::vector<double> mode_population;                  ///< sum over modes
};

SingleExcitationTrajectory evolve_single_excitation(const SingleExcitationModel& model,
                                                    const std::vector<cdouble>& initial,
                                                    double t_end, double dt, OdeTolerances tol = {});

// ---------------------------------------------------------------------------
// Analysis helpers.

/// Extrema of a population trace found with a hysteresis threshold, which
/// ignores ripples smaller than `hysteresis`.
struct OscillationExtrema {
    std::vector<double> minima; ///< times, s
    std::vector<double> maxima; ///< times, s
};

OscillationExtrema find_extrema(const std::vector<double>& times, const std::vector<double>& values,
                                double hysteresis = 1e-4);

/// Vacuum Rabi frequency Omega = 2g estimated from |c_e|^2. With two or more
/// minima the spacing gives Omega = 2 pi / (t2 - t1), which is unbiased by
/// damping; with one minimum Omega = pi / t1. Returns nullopt without minima.
std::optional<double> extract_rabi_frequency(const TimeSeries& series, double hysteresis = 1e-4);

/// Least-squares slope of -ln(population) over [t_from, t_to].
double fit_decay_rate(const TimeSeries& series, double t_from, double t_to);

/// One pseudo-mode evolution per radius with the emitter at a = a_over_R * R
/// along (theta, phi) and omega0 retuned to the Kittel frequency.
/// Radii must lie in [10 nm, 500 nm].
std::vector<TimeSeries> radius_sweep_dynamics(const std::vector<double>& radii,
                                              const CavityConfig& cavity_template,
                                              double a_over_R, double theta, double phi,
                                              double t_end, double dt, unsigned threads = 0);

} // namespace nanomag
