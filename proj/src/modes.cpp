#include "nanomag/modes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nanomag/errors.hpp"

namespace nanomag {

namespace {

constexpr double kBoundaryTolerance = 1e-12;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void require_order(int n)
{
    if (n < 1)
        throw std::domain_error("mode order must be >= 1, got " + std::to_string(n));
}

// Angular norm 4*pi * prod_{k=1..n} 2k/(2k+1) = integral of sin^(2n)(theta) over the sphere.
double angular_norm(int n)
{
    double p = 4.0 * kPi;
    for (int k = 1; k <= n; ++k)
        p *= (2.0 * k) / (2.0 * k + 1.0);
    return p;
}

} // namespace

Eigen::Vector3cd e_plus()
{
    return Eigen::Vector3cd{cdouble{kInvSqrt2, 0.0}, cdouble{0.0, kInvSqrt2}, cdouble{0.0, 0.0}};
}

Eigen::Vector3cd e_minus()
{
    return Eigen::Vector3cd{cdouble{kInvSqrt2, 0.0}, cdouble{0.0, -kInvSqrt2}, cdouble{0.0, 0.0}};
}

CavityConfig CavityConfig::from_internal_field(double radius, const MaterialParams& mat, double H0, int n_max)
{
    CavityConfig c;
    c.radius = radius;
    c.material = mat;
    c.fields = field_state_for_internal(H0, mat);
    c.n_max = n_max;
    c.validate();
    return c;
}

double CavityConfig::volume() const
{
    return 4.0 / 3.0 * kPi * radius * radius * radius;
}

void CavityConfig::validate() const
{
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw std::domain_error("sphere radius must be positive");
    if (n_max < 1)
        throw std::domain_error("n_max must be >= 1");
    if (!(fields.H0 > 0.0))
        throw std::domain_error("internal field H0 must be positive");
    material.validate();
}

// ---------------------------------------------------------------------------
// Mode shapes. Work in scaled coordinates rho = r/R, zeta = (x - i y)/R so
// that high orders neither underflow nor overflow.

ModeShape::ModeShape(int n, double radius) : n_(n), radius_(radius)
{
    require_order(n);
    if (!(radius > 0.0))
        throw std::domain_error("mode shape: radius must be positive");
}

bool ModeShape::is_exterior(const Eigen::Vector3d& r) const
{
    return r.norm() >= radius_ * (1.0 - kBoundaryTolerance);
}

cdouble ModeShape::potential_inside(const Eigen::Vector3d& r) const
{
    const cdouble zeta{r.x() / radius_, -r.y() / radius_};
    return -radius_ * std::pow(zeta, n_) * kInvSqrt2 / double(n_);
}

cdouble ModeShape::potential_outside(const Eigen::Vector3d& r) const
{
    const cdouble zeta{r.x() / radius_, -r.y() / radius_};
    const double rho = r.norm() / radius_;
    return -radius_ * std::pow(zeta, n_) * std::pow(rho, -(2 * n_ + 1)) * kInvSqrt2 / double(n_);
}

cdouble ModeShape::potential(const Eigen::Vector3d& r) const
{
    return is_exterior(r) ? potential_outside(r) : potential_inside(r);
}

Eigen::Vector3cd ModeShape::field_inside(const Eigen::Vector3d& r) const
{
    const cdouble zeta{r.x() / radius_, -r.y() / radius_};
    return std::pow(zeta, n_ - 1) * e_minus();
}

Eigen::Vector3cd ModeShape::field_outside(const Eigen::Vector3d& r) const
{
    const cdouble zeta{r.x() / radius_, -r.y() / radius_};
    const Eigen::Vector3d rho_vec = r / radius_;
    const double rho = rho_vec.norm();
    const double n = n_;

    // -grad of the exterior potential:
    //   [n zeta^(n-1) (1,-i,0) rho^-(2n+1) - (2n+1) zeta^n rho^-(2n+3) rho_vec] / (sqrt2 n)
    const Eigen::Vector3cd tangential = std::pow(zeta, n_ - 1) * std::pow(rho, -(2 * n_ + 1)) * e_minus();
    const cdouble radial = (2.0 * n + 1.0) * std::pow(zeta, n_) * std::pow(rho, -(2 * n_ + 3))
                           * kInvSqrt2 / n;
    return tangential - radial * rho_vec.cast<cdouble>();
}

Eigen::Vector3cd ModeShape::field(const Eigen::Vector3d& r) const
{
    return is_exterior(r) ? field_outside(r) : field_inside(r);
}

// ---------------------------------------------------------------------------

double kittel_frequency(const StaticFieldState& fields, const MaterialParams& mat)
{
    return mode_frequency(1, fields, mat);
}

double mode_frequency(int n, const StaticFieldState& fields, const MaterialParams& mat)
{
    require_order(n);
    if (!(fields.H0 > 0.0))
        throw std::domain_error("mode_frequency: internal field H0 must be positive");
    return mat.gamma_field() * (fields.H0 + mat.Ms * n / (2.0 * n + 1.0));
}

Eigen::Vector3cd mode_field(int n, const Eigen::Vector3d& r, const CavityConfig& cavity)
{
    return ModeShape(n, cavity.radius).field(r);
}

double mode_volume_analytic(int n, const CavityConfig& cavity)
{
    require_order(n);
    cavity.validate();
    const double nn = n;
    const double R = cavity.radius;
    // Interior energy factor e(-)* . d(omega mu)/d omega . e(-) at omega_n,
    // with mu(-) = -(n+1)/n fixed by the boundary condition.
    const double interior_factor =
        1.0 + (2.0 * nn + 1.0) * (2.0 * nn + 1.0) * cavity.fields.H0 / (nn * nn * cavity.material.Ms);
    // Exterior/interior ratio of the integrated |H|^2 of a harmonic solid function.
    const double exterior_factor = (nn + 1.0) / nn;
    return (interior_factor + exterior_factor) * R * R * R * angular_norm(n) / (2.0 * nn);
}

double mode_volume_quadrature(int n, const CavityConfig& cavity, double rel_tol)
{
    require_order(n);
    cavity.validate();
    using boost::math::quadrature::gauss_kronrod;
    constexpr unsigned kDepth = 12;

    const double omega = mode_frequency(n, cavity.fields, cavity.material);
    const Eigen::Matrix3cd T = energy_density_tensor(omega, cavity.fields.H0, cavity.material);
    const ModeShape shape(n, 1.0); // unit-radius sphere, rescaled by R^3 at the end

    auto over_sphere = [&](auto&& density) {
        auto over_theta = [&](double mu) {
            const double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
            auto over_phi = [&](double phi) {
                return density(Eigen::Vector3d{s * std::cos(phi), s * std::sin(phi), mu});
            };
            return gauss_kronrod<double, 15>::integrate(over_phi, 0.0, kTwoPi, kDepth, rel_tol);
        };
        return gauss_kronrod<double, 15>::integrate(over_theta, -1.0, 1.0, kDepth, rel_tol);
    };

    auto interior_radial = [&](double rho) {
        if (rho == 0.0)
            return 0.0;
        return rho * rho * over_sphere([&](const Eigen::Vector3d& dir) {
            const Eigen::Vector3cd h = shape.field_inside(rho * dir);
            return (h.adjoint() * T * h)(0, 0).real();
        });
    };
    auto exterior_radial = [&](double u) {
        if (u == 0.0)
            return 0.0;
        const double rho = 1.0 / u;
        return over_sphere([&](const Eigen::Vector3d& dir) {
                   return shape.field_outside(rho * dir).squaredNorm();
               }) / (u * u * u * u);
    };

    double err_in = 0.0;
    double err_out = 0.0;
    const double interior = gauss_kronrod<double, 15>::integrate(interior_radial, 0.0, 1.0, kDepth, rel_tol, &err_in);
    const double exterior = gauss_kronrod<double, 15>::integrate(exterior_radial, 0.0, 1.0, kDepth, rel_tol, &err_out);
    const double total = interior + exterior;
    if (!std::isfinite(total) || !(total > 0.0))
        throw NumericalError("mode_volume_quadrature: normalization integral did not converge");
    const double R = cavity.radius;
    return total * R * R * R;
}

MagnonMode quantize_mode(int n, const CavityConfig& cavity)
{
    cavity.validate();
    MagnonMode mode;
    mode.n = n;
    mode.m = n;
    mode.omega = mode_frequency(n, cavity.fields, cavity.material);
    mode.Gamma = cavity.damping();
    mode.Veff = mode_volume_analytic(n, cavity);
    mode.Hzp = std::sqrt(kConstants.hbar() * mode.omega / (kConstants.mu0() * mode.Veff));
    mode.shape = ModeShape(n, cavity.radius);
    return mode;
}

std::vector<MagnonMode> quantize_modes(const CavityConfig& cavity)
{
    std::vector<MagnonMode> modes;
    modes.reserve(cavity.n_max);
    for (int n = 1; n <= cavity.n_max; ++n)
        modes.push_back(quantize_mode(n, cavity));
    return modes;
}

double coupling_strength(const MagnonMode& mode, const EmitterConfig& emitter)
{
    if (!mode.shape.is_exterior(emitter.position))
        throw std::domain_error("emitter must lie outside the sphere");
    const cdouble energy = kConstants.mu0() * mode.field(emitter.position).transpose()
                           * emitter.transition_dipole();
    return std::abs(energy) / kConstants.hbar();
}

} // namespace nanomag
