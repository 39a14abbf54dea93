#pragma once

#include <complex>
#include <optional>

#include <Eigen/Core>

#include "nanomag/units.hpp"

namespace nanomag {

using cdouble = std::complex<double>;

/// Saturated ferrimagnet described by a gyrotropic (Polder-type) response.
struct MaterialParams {
    double Ms = 0.0;      ///< saturation magnetization, A/m
    double Gamma = 0.0;   ///< phenomenological damping, rad/s
    double gamma = kConstants.gamma(); ///< gyromagnetic ratio, rad/(s*T)
    /// Gilbert parameter. When set, the damping is 2*alpha*gamma*mu0*H0 and
    /// follows the internal field; Gamma is then ignored.
    std::optional<double> alpha;

    /// YIG-like defaults: mu0*Ms = 0.178 T, Gamma = 1e7 rad/s.
    static MaterialParams yig();

    /// gamma*mu0, converts a field in A/m to an angular frequency.
    double gamma_field() const { return gamma * kConstants.mu0(); }

    /// Damping rate at internal field H0 (A/m).
    double damping(double H0) const;

    /// Throws std::domain_error on Ms <= 0, Gamma < 0, gamma <= 0 or alpha < 0.
    void validate() const;
};

/// Static fields along z. For a sphere Hd = -Ms/3.
struct StaticFieldState {
    double He = 0.0; ///< external field, A/m
    double Hd = 0.0; ///< demagnetizing field, A/m
    double H0 = 0.0; ///< internal field He + Hd, A/m
};

/// Internal field of a saturated sphere in external field He.
/// Throws std::domain_error when He <= Ms/3 (the sphere is not saturated).
StaticFieldState internal_field(double He, const MaterialParams& mat);

/// Inverse of internal_field: the state that realizes a given internal field H0 > 0.
StaticFieldState field_state_for_internal(double H0, const MaterialParams& mat);

/// Diagonal (chi) and off-diagonal (kappa) elements of the susceptibility.
///
///     | chi      i*kappa  0 |
///     | -i*kappa chi      0 |
///     | 0        0        0 |
struct SusceptibilityTensor {
    cdouble chi;
    cdouble kappa;

    Eigen::Matrix3cd matrix() const;
};

/// Susceptibility of the magnetized medium at angular frequency omega and
/// internal field H0, with the damping taken from mat.damping(H0).
///
/// Throws std::domain_error for H0 <= 0 and NumericalError when the
/// denominator vanishes (undamped drive exactly at gamma*mu0*H0).
SusceptibilityTensor susceptibility(double omega, double H0, const MaterialParams& mat);

/// Same as susceptibility() with an explicit damping rate.
SusceptibilityTensor susceptibility(double omega, double H0, const MaterialParams& mat, double Gamma);

/// d(omega*[I + chi(omega)])/d omega for the lossless medium, the kernel of
/// the magnon energy density. Evaluated analytically.
Eigen::Matrix3cd energy_density_tensor(double omega, double H0, const MaterialParams& mat);

} // namespace nanomag
