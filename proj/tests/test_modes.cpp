#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nanomag/modes.hpp"
#include "support.hpp"

using namespace nanomag;
using nanomag::testing::reference_cavity;
using nanomag::testing::Rng;

namespace {

using Vec = Eigen::Vector3d;
using CVec = Eigen::Vector3cd;

// Central-difference gradient of a complex scalar.
template <typename F>
CVec gradient(F&& f, const Vec& r, double h)
{
    CVec g;
    for (int k = 0; k < 3; ++k) {
        Vec dr = Vec::Zero();
        dr[k] = h;
        g[k] = (f(r + dr) - f(r - dr)) / (2.0 * h);
    }
    return g;
}

// Jacobian J(i, k) = d field_i / d x_k by central differences.
template <typename F>
Eigen::Matrix3cd jacobian(F&& f, const Vec& r, double h)
{
    Eigen::Matrix3cd J;
    for (int k = 0; k < 3; ++k) {
        Vec dr = Vec::Zero();
        dr[k] = h;
        J.col(k) = (f(r + dr) - f(r - dr)) / (2.0 * h);
    }
    return J;
}

} // namespace

TEST_CASE("Kittel frequency at the reference working point")
{
    const CavityConfig cav = reference_cavity();
    const double w = kittel_frequency(cav.fields, cav.material);
    // 28 GHz/T * (0.5 + 0.178/3) T
    CHECK(units::omega_to_GHz(w) == doctest::Approx(28.0 * (0.5 + 0.178 / 3.0)).epsilon(1e-12));
    CHECK(units::omega_to_GHz(w) == doctest::Approx(15.66).epsilon(1e-3));
}

TEST_CASE("Kittel frequency limits and scaling")
{
    const CavityConfig cav = reference_cavity();
    MaterialParams bare = cav.material;
    bare.Ms = 0.0;
    CHECK(kittel_frequency(cav.fields, bare) == doctest::Approx(bare.gamma_field() * cav.fields.H0));

    MaterialParams fast = cav.material;
    fast.gamma *= 2.0;
    CHECK(kittel_frequency(cav.fields, fast) == doctest::Approx(2.0 * kittel_frequency(cav.fields, cav.material)));
}

TEST_CASE("Walker branch frequencies")
{
    const CavityConfig cav = reference_cavity();
    const auto& mat = cav.material;
    const double wK = kittel_frequency(cav.fields, mat);
    const double w_inf = mat.gamma_field() * (cav.fields.H0 + 0.5 * mat.Ms);
    CHECK(mode_frequency(1, cav.fields, mat) == wK);
    double prev = 0.0;
    for (int n = 1; n <= 25; ++n) {
        const double w = mode_frequency(n, cav.fields, mat);
        CHECK(w >= wK);
        CHECK(w < w_inf);
        CHECK(w > prev);
        prev = w;
    }
    CHECK(mode_frequency(100000, cav.fields, mat) == doctest::Approx(w_inf).epsilon(1e-6));
    CHECK_THROWS_AS(mode_frequency(0, cav.fields, mat), std::domain_error);
}

TEST_CASE("Kittel mode is uniform and e(-) polarized inside")
{
    const ModeShape shape(1, 30e-9);
    Rng rng;
    for (int k = 0; k < 20; ++k) {
        const Vec r = rng.direction() * rng.uniform(0.0, 0.99) * 30e-9;
        CHECK((shape.field(r) - e_minus()).norm() < 1e-14);
    }
}

TEST_CASE("Kittel exterior field against the dipolar tensor expression")
{
    const double R = 30e-9, a = 1.2 * R;
    const ModeShape shape(1, R);
    const Vec x(1.0, 0.0, 0.0);
    const Eigen::Matrix3cd dyad = (3.0 * x * x.transpose() - Eigen::Matrix3d::Identity()).cast<cdouble>();
    // The literal dipolar expression (R/a)^3 (3 x x - I) e(-) carries the
    // opposite overall sign to the field derived from the continuous potential.
    const CVec printed = std::pow(R / a, 3) * dyad * e_minus();
    CHECK((shape.field(a * x) + printed).norm() < 1e-14);
}

TEST_CASE("tangential field is continuous across the surface")
{
    Rng rng;
    for (int n = 1; n <= 4; ++n) {
        const ModeShape shape(n, 1.0);
        for (int k = 0; k < 10; ++k) {
            const Vec d = rng.direction();
            const CVec in = shape.field_inside(d), out = shape.field_outside(d);
            const CVec jump = (in - out) - d * d.dot(in - out);
            CHECK(jump.norm() < 1e-12 * std::max(1.0, in.norm()));
        }
    }
}

TEST_CASE("n = 2 exterior amplitude falls as r^-(n+2)")
{
    const double R = 30e-9;
    const ModeShape shape(2, R);
    Rng rng;
    for (int k = 0; k < 5; ++k) {
        const Vec d = rng.direction();
        CHECK(shape.field(2.0 * R * d).norm() / shape.field(R * d).norm() == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    }
}

TEST_CASE("fields are minus the gradient of the potential")
{
    const double R = 30e-9;
    Rng rng;
    for (int n = 1; n <= 5; ++n) {
        const ModeShape shape(n, R);
        for (int k = 0; k < 10; ++k) {
            const Vec d = rng.direction();
            const Vec out = d * rng.uniform(1.1, 3.0) * R;
            const Vec in = d * rng.uniform(0.1, 0.9) * R;
            const double h = 1e-5 * R;
            const CVec fd_out = -gradient([&](const Vec& p) { return shape.potential_outside(p); }, out, h);
            const CVec fd_in = -gradient([&](const Vec& p) { return shape.potential_inside(p); }, in, h);
            CHECK((fd_out - shape.field(out)).norm() <= 1e-7 * shape.field(out).norm());
            CHECK((fd_in - shape.field(in)).norm() <= 1e-7 * std::max(shape.field(in).norm(), 1e-3));
        }
    }
}

TEST_CASE("exterior fields are curl- and divergence-free")
{
    const double R = 30e-9;
    Rng rng;
    for (int n = 1; n <= 7; ++n) {
        const ModeShape shape(n, R);
        for (int k = 0; k < 10; ++k) {
            const Vec r = rng.direction() * rng.uniform(1.05, 3.0) * R;
            const double h = 1e-6 * r.norm();
            const Eigen::Matrix3cd J = jacobian([&](const Vec& p) { return shape.field_outside(p); }, r, h);
            const cdouble div = J.trace();
            const CVec curl(J(2, 1) - J(1, 2), J(0, 2) - J(2, 0), J(1, 0) - J(0, 1));
            // Derivatives scale as |H|/|r|; compare dimensionless quantities.
            const double scale = shape.field_outside(r).norm() / r.norm();
            CHECK(std::abs(div) <= 1e-6 * scale);
            CHECK(curl.norm() <= 1e-6 * scale);
        }
    }
}

TEST_CASE("potential is continuous on the surface")
{
    const double R = 30e-9;
    Rng rng;
    for (int n = 1; n <= 7; ++n) {
        const ModeShape shape(n, R);
        for (int k = 0; k < 20; ++k) {
            const Vec r = rng.direction() * R;
            const cdouble in = shape.potential_inside(r), out = shape.potential_outside(r);
            CHECK(std::abs(in - out) <= 1e-10 * std::max(std::abs(in), 1e-30));
        }
    }
}

TEST_CASE("mode volume: quadrature agrees with the closed form")
{
    const CavityConfig cav = reference_cavity();
    const double analytic = mode_volume_analytic(1, cav);
    CHECK(testing::rel_diff(mode_volume_quadrature(1, cav), analytic) < 1e-6);
    // Kittel closed form 3V(Ms + 3H0)/Ms.
    const double V = cav.volume();
    CHECK(analytic == doctest::Approx(3.0 * V * (cav.material.Ms + 3.0 * cav.fields.H0) / cav.material.Ms).epsilon(1e-12));
    for (int n = 2; n <= 4; ++n)
        CHECK(testing::rel_diff(mode_volume_quadrature(n, cav), mode_volume_analytic(n, cav)) < 1e-6);
}

TEST_CASE("mode volume scales with the particle volume")
{
    CavityConfig cav = reference_cavity();
    const double v1 = mode_volume_analytic(1, cav);
    cav.radius *= 2.0;
    CHECK(mode_volume_analytic(1, cav) == doctest::Approx(8.0 * v1).epsilon(1e-12));
}

TEST_CASE("zero-point field normalization")
{
    const CavityConfig cav = reference_cavity(7);
    for (const MagnonMode& m : quantize_modes(cav)) {
        const double lhs = m.Hzp * m.Hzp * m.Veff * kConstants.mu0();
        CHECK(lhs == doctest::Approx(kConstants.hbar() * m.omega).epsilon(1e-12));
        CHECK(m.m == m.n);
    }
}

TEST_CASE("coupling falls as a^-3 for the Kittel mode")
{
    const CavityConfig cav = reference_cavity();
    const MagnonMode kittel = quantize_mode(1, cav);
    const double R = cav.radius;
    const double g1 = coupling_strength(kittel, EmitterConfig::equatorial(1.2 * R, kittel.omega));
    const double g2 = coupling_strength(kittel, EmitterConfig::equatorial(2.4 * R, kittel.omega));
    CHECK(g2 == doctest::Approx(g1 / 8.0).epsilon(1e-12));
    CHECK_THROWS_AS(coupling_strength(kittel, EmitterConfig::equatorial(0.5 * R, kittel.omega)), std::domain_error);
}

TEST_CASE("coupling along x and z against the potential gradient")
{
    const CavityConfig cav = reference_cavity();
    const MagnonMode kittel = quantize_mode(1, cav);
    const double a = 1.2 * cav.radius;
    auto direct = [&](const EmitterConfig& e) {
        const CVec H = -kittel.Hzp * gradient([&](const Vec& p) { return kittel.shape.potential_outside(p); },
                                              e.position, 1e-6 * a);
        return std::abs(kConstants.mu0() * H.dot(e.transition_dipole().conjugate())) / kConstants.hbar();
    };
    const auto ex = EmitterConfig::equatorial(a, kittel.omega);
    const auto ez = EmitterConfig::at(a, 0.0, 0.0, kittel.omega);
    const double gx = coupling_strength(kittel, ex), gz = coupling_strength(kittel, ez);
    CHECK(gx == doctest::Approx(direct(ex)).epsilon(1e-7));
    CHECK(gz == doctest::Approx(direct(ez)).epsilon(1e-7));
    CHECK(gz == doctest::Approx(2.0 * gx).epsilon(1e-12));
}

TEST_CASE("coupling scales with the dipole moment")
{
    const CavityConfig cav = reference_cavity();
    const MagnonMode kittel = quantize_mode(1, cav);
    EmitterConfig e = EmitterConfig::equatorial(1.2 * cav.radius, kittel.omega);
    const double g = coupling_strength(kittel, e);
    e.dipole_scale = 2.0;
    CHECK(coupling_strength(kittel, e) == doctest::Approx(2.0 * g).epsilon(1e-14));
}
