#pragma once

#include <Eigen/Core>

namespace nanomag {

/// Point spin emitter with a circularly polarized transition dipole
/// m_xy = -sqrt(2) * muB * dipole_scale * e(+).
struct EmitterConfig {
    Eigen::Vector3d position = Eigen::Vector3d::Zero(); ///< m, sphere centre at origin
    double omega0 = 0.0;       ///< transition angular frequency, rad/s
    double dipole_scale = 1.0; ///< multiplies muB

    /// Emitter at distance a on the +x axis (the sphere equator).
    static EmitterConfig equatorial(double a, double omega0);
    /// Emitter at distance a along the direction (theta, phi), radians.
    static EmitterConfig at(double a, double theta, double phi, double omega0);

    Eigen::Vector3cd transition_dipole() const;
};

} // namespace nanomag
