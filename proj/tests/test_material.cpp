#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nanomag/errors.hpp"
#include "nanomag/material.hpp"
#include "support.hpp"

using namespace nanomag;

namespace {

const MaterialParams yig = MaterialParams::yig();
const double H0 = tesla_to_field(0.5);

} // namespace

TEST_CASE("static susceptibility is Ms/H0")
{
    const auto s = susceptibility(0.0, H0, yig);
    CHECK(s.chi.real() == doctest::Approx(0.356).epsilon(1e-12));
    CHECK(std::abs(s.chi.imag()) < 1e-15);
    CHECK(std::abs(s.kappa) < 1e-15);
}

TEST_CASE("undamped susceptibility diverges at gamma mu0 H0")
{
    const double w_res = yig.gamma_field() * H0;
    const auto s = susceptibility(w_res * (1.0 - 1e-9), H0, yig, 0.0);
    CHECK(std::abs(s.chi) > 1e6);
    CHECK_THROWS_AS(susceptibility(w_res, H0, yig, 0.0), NumericalError);
}

TEST_CASE("resonance sits within one grid step of gamma mu0 H0")
{
    const double w_res = yig.gamma_field() * H0;
    const int points = 4001;
    const double lo = 0.9 * w_res, hi = 1.1 * w_res, step = (hi - lo) / (points - 1);
    double best = 0.0, arg = 0.0;
    for (int i = 0; i < points; ++i) {
        const double w = lo + i * step;
        if (w == w_res)
            continue;
        const double v = std::abs(susceptibility(w, H0, yig, 0.0).chi);
        if (v > best) {
            best = v;
            arg = w;
        }
    }
    CHECK(std::abs(arg - w_res) <= step * (1.0 + 1e-9));
}

TEST_CASE("tensor layout")
{
    const auto s = susceptibility(1e11, H0, yig);
    const Eigen::Matrix3cd m = s.matrix();
    const cdouble i{0.0, 1.0};
    CHECK(m(0, 0) == s.chi);
    CHECK(m(1, 1) == s.chi);
    CHECK(m(0, 1) == i * s.kappa);
    CHECK(m(1, 0) == -i * s.kappa);
    CHECK(m(2, 2) == cdouble{});
    CHECK(m(0, 2) == cdouble{});
}

TEST_CASE("passive medium: Im chi > 0 for omega > 0")
{
    const double w_res = yig.gamma_field() * H0;
    for (int k = 1; k <= 400; ++k) {
        const double w = w_res * k / 200.0;
        CHECK(susceptibility(w, H0, yig).chi.imag() > 0.0);
    }
}

TEST_CASE("reality of the lossless response")
{
    testing::Rng rng;
    const double w_res = yig.gamma_field() * H0;
    for (int k = 0; k < 50; ++k) {
        const double w = rng.uniform(0.01, 3.0) * w_res;
        const auto p = susceptibility(w, H0, yig, 0.0);
        const auto m = susceptibility(-w, H0, yig, 0.0);
        CHECK(std::abs(m.chi - std::conj(p.chi)) <= 1e-12 * std::abs(p.chi));
        CHECK(std::abs(m.kappa + std::conj(p.kappa)) <= 1e-12 * std::abs(p.kappa));
    }
}

TEST_CASE("circular eigenpolarizations")
{
    // mu+- = 1 + gamma mu0 Ms / (gamma mu0 H0 -+ omega) on e-+ (the e- branch is resonant).
    const double w = 0.8 * yig.gamma_field() * H0;
    const Eigen::Matrix3cd mu = Eigen::Matrix3cd::Identity() + susceptibility(w, H0, yig, 0.0).matrix();
    const cdouble i{0.0, 1.0};
    const Eigen::Vector3cd em = Eigen::Vector3cd(1.0, -i, 0.0) / std::sqrt(2.0);
    const Eigen::Vector3cd ep = Eigen::Vector3cd(1.0, i, 0.0) / std::sqrt(2.0);
    const double wM = yig.gamma_field() * yig.Ms, wH = yig.gamma_field() * H0;
    CHECK(((mu * em) - (1.0 + wM / (wH - w)) * em).norm() < 1e-12);
    CHECK(((mu * ep) - (1.0 + wM / (wH + w)) * ep).norm() < 1e-12);
}

TEST_CASE("energy density tensor matches a finite-difference derivative")
{
    const double wH = yig.gamma_field() * H0;
    for (double ratio : {0.3, 0.9, 1.05, 1.4, 2.5}) {
        const double w = ratio * wH, h = 1e-5 * w;
        auto omega_mu = [&](double x) {
            return Eigen::Matrix3cd(x * (Eigen::Matrix3cd::Identity() + susceptibility(x, H0, yig, 0.0).matrix()));
        };
        const Eigen::Matrix3cd fd = (omega_mu(w + h) - omega_mu(w - h)) / (2.0 * h);
        const Eigen::Matrix3cd T = energy_density_tensor(w, H0, yig);
        CHECK((T - fd).norm() <= 1e-6 * T.norm());
    }
}

TEST_CASE("internal field of a sphere")
{
    const double x = tesla_to_field(0.2);
    CHECK(internal_field(yig.Ms / 3.0 + x, yig).H0 == doctest::Approx(x).epsilon(1e-12));
    CHECK(field_to_tesla(internal_field(tesla_to_field(0.5593), yig).H0) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(internal_field(1e12, yig).H0 / 1e12 == doctest::Approx(1.0).epsilon(1e-6));
    const auto s = field_state_for_internal(H0, yig);
    CHECK(s.He == doctest::Approx(H0 + yig.Ms / 3.0));
    CHECK(s.Hd == doctest::Approx(-yig.Ms / 3.0));
}

TEST_CASE("unsaturated sphere is rejected")
{
    CHECK_THROWS_AS(internal_field(yig.Ms / 3.0, yig), std::domain_error);
    CHECK_THROWS_AS(susceptibility(1e10, -1.0, yig), std::domain_error);
}

TEST_CASE("Gilbert damping follows the internal field")
{
    MaterialParams m = yig;
    m.alpha = 1e-4;
    CHECK(m.damping(H0) == doctest::Approx(2e-4 * m.gamma_field() * H0));
    CHECK(yig.damping(H0) == yig.Gamma);
    MaterialParams bad = yig;
    bad.Ms = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
