#pragma once

// Magnetostatic (n, m = n) Walker modes of a saturated gyrotropic sphere and
// their canonical quantization.
//
// Inside the sphere the scalar potential of mode n is proportional to the
// solid harmonic (x - i y)^n, whose gradient is everywhere parallel to the
// resonant circular polarization e(-). Outside it is the matching decaying
// harmonic (x - i y)^n / r^(2n+1). Continuity of the normal induction at
// r = R fixes the resonance omega_n = gamma*mu0*(H0 + Ms*n/(2n+1)); n = 1 is
// the Kittel mode.

#include <vector>

#include <Eigen/Core>

#include "nanomag/emitter.hpp"
#include "nanomag/material.hpp"

namespace nanomag {

/// Circular unit vectors e(+-) = (e_x +- i e_y)/sqrt(2).
Eigen::Vector3cd e_plus();
Eigen::Vector3cd e_minus();

struct CavityConfig {
    double radius = 0.0;  ///< m
    MaterialParams material;
    StaticFieldState fields;
    int n_max = 1;

    /// Sphere of radius R at internal field H0 (A/m); He is back-computed.
    static CavityConfig from_internal_field(double radius, const MaterialParams& mat, double H0, int n_max);

    double volume() const;
    double damping() const { return material.damping(fields.H0); }

    /// Throws std::domain_error on R <= 0, n_max < 1, H0 <= 0 or an invalid material.
    void validate() const;
};

/// Unit-amplitude shape of the (n, n) mode: the interior field is
/// ((x - i y)/R)^(n-1) e(-), so its largest magnitude (reached on the equator
/// of the surface) is 1. Points with |r| >= R(1 - 1e-12) count as exterior.
class ModeShape {
public:
    ModeShape(int n, double radius);

    int order() const { return n_; }
    double radius() const { return radius_; }
    bool is_exterior(const Eigen::Vector3d& r) const;

    /// Scalar potential (field = -grad potential), in metres per unit amplitude.
    cdouble potential_inside(const Eigen::Vector3d& r) const;
    cdouble potential_outside(const Eigen::Vector3d& r) const;
    cdouble potential(const Eigen::Vector3d& r) const;

    Eigen::Vector3cd field_inside(const Eigen::Vector3d& r) const;
    Eigen::Vector3cd field_outside(const Eigen::Vector3d& r) const;
    Eigen::Vector3cd field(const Eigen::Vector3d& r) const;

private:
    int n_;
    double radius_;
};

/// A quantized magnon mode. field(r) is the zero-point field amplitude in A/m.
struct MagnonMode {
    int n = 1;
    int m = 1;
    double omega = 0.0;  ///< rad/s
    double Gamma = 0.0;  ///< linewidth, rad/s
    double Veff = 0.0;   ///< effective mode volume, m^3
    double Hzp = 0.0;    ///< zero-point field amplitude, A/m
    ModeShape shape{1, 1.0};

    Eigen::Vector3cd field(const Eigen::Vector3d& r) const { return Hzp * shape.field(r); }
};

/// Kittel (uniform precession) frequency gamma*mu0*(H0 + Ms/3), rad/s.
double kittel_frequency(const StaticFieldState& fields, const MaterialParams& mat);

/// Frequency of the (n, n) mode, gamma*mu0*(H0 + Ms*n/(2n+1)), rad/s.
double mode_frequency(int n, const StaticFieldState& fields, const MaterialParams& mat);

/// Unit-amplitude field of mode n at r (A/m per unit amplitude). r must be nonzero.
Eigen::Vector3cd mode_field(int n, const Eigen::Vector3d& r, const CavityConfig& cavity);

/// Energy-normalization volume of the unit-amplitude mode,
///   integral of H* . d(omega[I + chi])/d omega . H over all space (m^3),
/// from the closed form for the (n, n) branch.
double mode_volume_analytic(int n, const CavityConfig& cavity);

/// The same integral by adaptive Gauss-Kronrod quadrature in (r, cos theta, phi),
/// using the full energy-density tensor inside the sphere. The exterior is
/// mapped to u = R/r in (0, 1].
double mode_volume_quadrature(int n, const CavityConfig& cavity, double rel_tol = 1e-10);

/// Quantized mode n: Hzp = sqrt(hbar*omega/(mu0*Veff)).
MagnonMode quantize_mode(int n, const CavityConfig& cavity);

/// All modes n = 1..cavity.n_max.
std::vector<MagnonMode> quantize_modes(const CavityConfig& cavity);

/// |g| in rad/s for hbar*g = -mu0 H(r) . m_xy.
/// Throws std::domain_error if the emitter sits inside the sphere.
double coupling_strength(const MagnonMode& mode, const EmitterConfig& emitter);

} // namespace nanomag
