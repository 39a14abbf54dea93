#pragma once

// Two spins coupled dispersively through the Kittel mode.

#include <array>
#include <string>
#include <vector>

#include "nanomag/dynamics.hpp"

namespace nanomag {

struct TwoEmitterConfig {
    CavityConfig cavity;
    std::array<EmitterConfig, 2> emitters;
    double detuning = 0.0; ///< Delta = omega0 - omega_K, rad/s

    /// Emitters at (a, 0, 0) and (-a, 0, 0), both at omega_K + detuning.
    static TwoEmitterConfig antipodal(const CavityConfig& cavity, double a, double detuning);

    /// Gap G = a - R for the first emitter.
    double gap() const;
};

struct TransferResult {
    std::vector<double> times; ///< s
    std::vector<double> p1;
    std::vector<double> p2;
    std::vector<double> pb;
    double coupling = 0.0;       ///< spin-magnon g, rad/s
    double swap_frequency = 0.0; ///< pi / (2 t_swap), rad/s; compare with g^2/Delta
    double swap_time = 0.0;      ///< time of the first transfer maximum of P2, s
    double fidelity = 0.0;       ///< P2 at swap_time
    std::vector<std::string> warnings;
};

/// Dispersive estimate g^2 / Delta. Throws std::domain_error for Delta == 0.
double effective_coupling(double g, double Delta);

/// Direct magnetic dipole-dipole coupling of two spins in vacuum at the given
/// separation, returned in rad/s:  g_dip/(2 pi) = mu0 muB^2 / [hbar (2 pi)^2 d^3].
double dipole_dipole_coupling(double separation);

struct CouplingRow {
    double radius = 0.0;     ///< m
    double separation = 0.0; ///< 2a, m
    double g = 0.0;          ///< rad/s
    double g_eff = 0.0;      ///< rad/s
    double g_dip = 0.0;      ///< rad/s

    bool operator==(const CouplingRow&) const = default;
};

/// For each radius: a = R + gap, Delta = delta_over_g * g, g_eff = g^2/Delta.
std::vector<CouplingRow> coupling_vs_separation_sweep(double gap, const std::vector<double>& radii,
                                                      double delta_over_g,
                                                      const CavityConfig& cavity_template,
                                                      unsigned threads = 0);

/// Three-amplitude evolution with explicit couplings g1, g2 (rad/s), detuning
/// Delta and magnon damping Gamma, starting from spin 1 excited.
TransferResult transfer_dynamics(double g1, double g2, double Delta, double Gamma,
                                 double t_end, double dt);

/// Transfer through the quantized Kittel mode of cfg.cavity. The couplings at
/// the two positions are computed independently and must agree to 1e-10.
TransferResult transfer_dynamics(const TwoEmitterConfig& cfg, double t_end, double dt);

} // namespace nanomag
