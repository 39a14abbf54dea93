#include "nanomag/emitter.hpp"

#include <cmath>

#include "nanomag/modes.hpp"
#include "nanomag/units.hpp"

namespace nanomag {

EmitterConfig EmitterConfig::equatorial(double a, double omega0)
{
    EmitterConfig e;
    e.position = Eigen::Vector3d{a, 0.0, 0.0};
    e.omega0 = omega0;
    return e;
}

EmitterConfig EmitterConfig::at(double a, double theta, double phi, double omega0)
{
    EmitterConfig e;
    e.position = a * Eigen::Vector3d{std::sin(theta) * std::cos(phi),
                                     std::sin(theta) * std::sin(phi),
                                     std::cos(theta)};
    e.omega0 = omega0;
    return e;
}

Eigen::Vector3cd EmitterConfig::transition_dipole() const
{
    return -std::sqrt(2.0) * kConstants.muB() * dipole_scale * e_plus();
}

} // namespace nanomag
