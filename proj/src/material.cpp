#include "nanomag/material.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "nanomag/errors.hpp"

namespace nanomag {

MaterialParams MaterialParams::yig()
{
    MaterialParams m;
    m.Ms = tesla_to_field(0.178);
    m.Gamma = 1.0e7;
    return m;
}

double MaterialParams::damping(double H0) const
{
    if (alpha)
        return 2.0 * *alpha * gamma_field() * H0;
    return Gamma;
}

void MaterialParams::validate() const
{
    if (!(Ms > 0.0) || !std::isfinite(Ms))
        throw std::domain_error("saturation magnetization must be positive");
    if (!(Gamma >= 0.0) || !std::isfinite(Gamma))
        throw std::domain_error("damping Gamma must be non-negative");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw std::domain_error("gyromagnetic ratio must be positive");
    if (alpha && !(*alpha >= 0.0))
        throw std::domain_error("Gilbert parameter must be non-negative");
}

StaticFieldState internal_field(double He, const MaterialParams& mat)
{
    mat.validate();
    const double Hd = -mat.Ms / 3.0;
    if (!(He + Hd > 0.0))
        throw std::domain_error("external field " + std::to_string(field_to_tesla(He))
                                + " T does not exceed Ms/3: sphere is not saturated (H0 <= 0)");
    return {He, Hd, He + Hd};
}

StaticFieldState field_state_for_internal(double H0, const MaterialParams& mat)
{
    mat.validate();
    if (!(H0 > 0.0) || !std::isfinite(H0))
        throw std::domain_error("internal field H0 must be positive");
    const double Hd = -mat.Ms / 3.0;
    return {H0 - Hd, Hd, H0};
}

Eigen::Matrix3cd SusceptibilityTensor::matrix() const
{
    const cdouble i{0.0, 1.0};
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = chi;
    m(1, 1) = chi;
    m(0, 1) = i * kappa;
    m(1, 0) = -i * kappa;
    return m;
}

SusceptibilityTensor susceptibility(double omega, double H0, const MaterialParams& mat)
{
    return susceptibility(omega, H0, mat, mat.damping(H0));
}

SusceptibilityTensor susceptibility(double omega, double H0, const MaterialParams& mat, double Gamma)
{
    if (!(H0 > 0.0))
        throw std::domain_error("susceptibility: internal field H0 must be positive");
    const double wH = mat.gamma_field() * H0;
    const double wM = mat.gamma_field() * mat.Ms;
    const cdouble denom{wH * wH - omega * omega, -Gamma * omega};
    if (denom == cdouble{0.0, 0.0})
        throw NumericalError("susceptibility: undamped response is singular at omega = gamma*mu0*H0");
    return {wH * wM / denom, omega * wM / denom};
}

Eigen::Matrix3cd energy_density_tensor(double omega, double H0, const MaterialParams& mat)
{
    if (!(H0 > 0.0))
        throw std::domain_error("energy_density_tensor: internal field H0 must be positive");
    const double wH = mat.gamma_field() * H0;
    const double wM = mat.gamma_field() * mat.Ms;
    const double D = wH * wH - omega * omega;
    if (D == 0.0)
        throw NumericalError("energy_density_tensor: evaluated on the uniform-precession pole");

    // d(omega*chi)/domega = chi + omega*chi', same for kappa.
    const double chi = wH * wM / D;
    const double kappa = omega * wM / D;
    const double dchi = wH * wM * 2.0 * omega / (D * D);
    const double dkappa = wM * (D + 2.0 * omega * omega) / (D * D);

    SusceptibilityTensor t{chi + omega * dchi, kappa + omega * dkappa};
    return Eigen::Matrix3cd::Identity() + t.matrix();
}

} // namespace nanomag
