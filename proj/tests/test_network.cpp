#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nanomag/dynamics.hpp"
#include "nanomag/network.hpp"
#include "support.hpp"

using namespace nanomag;
using nanomag::testing::reference_cavity;

namespace {

// Kittel-mode coupling at a = 36 nm on the equator of the reference sphere.
double reference_g()
{
    const CavityConfig cav = reference_cavity(1, 0.0);
    const MagnonMode k = quantize_mode(1, cav);
    return coupling_strength(k, EmitterConfig::equatorial(36e-9, k.omega));
}

TransferResult dispersive_run(double delta_over_g, double Gamma = 0.0)
{
    const double g = reference_g();
    const double Delta = delta_over_g * g;
    const double t_swap = kPi / (2.0 * g * g / Delta);
    return transfer_dynamics(g, g, Delta, Gamma, 2.0 * t_swap, 2e-9);
}

} // namespace

TEST_CASE("dispersive effective coupling")
{
    const double g = kTwoPi * 1e6;
    CHECK(effective_coupling(g, 10.0 * g) == doctest::Approx(g / 10.0));
    CHECK(units::omega_to_kHz(effective_coupling(g, 10.0 * g)) == doctest::Approx(100.0));
    CHECK(effective_coupling(2.0 * g, 10.0 * g) == doctest::Approx(4.0 * effective_coupling(g, 10.0 * g)));
    CHECK_THROWS_AS(effective_coupling(g, 0.0), std::domain_error);
}

TEST_CASE("direct dipole-dipole coupling")
{
    // mu0 muB^2 / (hbar (2 pi)^2 d^3) evaluated term by term.
    const double mu0 = 4e-7 * kPi, muB = 9.2740100783e-24, hbar = 1.054571817e-34, d = 72e-9;
    const double expected_Hz = mu0 * muB * muB / (hbar * 4.0 * kPi * kPi * d * d * d);
    const double g_dip_Hz = units::omega_to_Hz(dipole_dipole_coupling(d));
    CHECK(g_dip_Hz == doctest::Approx(expected_Hz).epsilon(1e-12));
    CHECK(g_dip_Hz == doctest::Approx(70.0).epsilon(0.01));
    CHECK(dipole_dipole_coupling(2.0 * d) == doctest::Approx(dipole_dipole_coupling(d) / 8.0));
}

TEST_CASE("magnon-mediated coupling dominates the direct one at 72 nm")
{
    const double g = reference_g();
    const double ratio = effective_coupling(g, 10.0 * g) / dipole_dipole_coupling(72e-9);
    CHECK(ratio >= 500.0);
    CHECK(ratio <= 5000.0);
}

TEST_CASE("coupling versus separation sweep")
{
    std::vector<double> radii;
    for (int k = 0; k <= 90; ++k)
        radii.push_back((10.0 + k) * 1e-9);
    const auto rows = coupling_vs_separation_sweep(6e-9, radii, 10.0, reference_cavity(25, 1e6), 3);
    REQUIRE(rows.size() == radii.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].g_eff > rows[i].g_dip);
        if (i > 0)
            CHECK(rows[i].g_eff < rows[i - 1].g_eff);
    }
    const CouplingRow& at30 = rows[20];
    CHECK(at30.radius == doctest::Approx(30e-9));
    CHECK(at30.separation == doctest::Approx(72e-9));
    CHECK(at30.g == doctest::Approx(reference_g()).epsilon(1e-12));
    CHECK(rows == coupling_vs_separation_sweep(6e-9, radii, 10.0, reference_cavity(25, 1e6), 1));
}

TEST_CASE("resonant exchange through the bright state")
{
    // Delta = 0, Gamma = 0: c1 = (1 + cos s t)/2, c2 = (cos s t - 1)/2, s = sqrt(2) g.
    const double g = kTwoPi * 1e6, s = std::sqrt(2.0) * g;
    const auto r = transfer_dynamics(g, g, 0.0, 0.0, 2e-6, 1e-9);
    double worst = 0.0;
    for (std::size_t k = 0; k < r.times.size(); ++k) {
        const double c = std::cos(s * r.times[k]);
        worst = std::max({worst, std::abs(r.p1[k] - std::pow(1.0 + c, 2) / 4.0),
                          std::abs(r.p2[k] - std::pow(1.0 - c, 2) / 4.0),
                          std::abs(r.pb[k] - 0.5 * std::pow(std::sin(s * r.times[k]), 2))});
    }
    CHECK(worst < 1e-8);
    // Complete transfer at pi/s; P1 recovers with period 2 pi/s.
    CHECK(r.swap_time == doctest::Approx(kPi / s).epsilon(2e-3));
    CHECK(r.fidelity == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("dispersive swap at g^2/Delta with fast ripples")
{
    const double g = reference_g();
    const TransferResult r = dispersive_run(10.0);
    const double g_eff = g * g / (10.0 * g);
    CHECK(r.swap_frequency == doctest::Approx(g_eff).epsilon(0.1));
    CHECK(r.fidelity > 0.99);

    // Ripples: many small extrema of P1 within one swap.
    std::vector<double> t, p;
    for (std::size_t k = 0; k < r.times.size() && r.times[k] <= r.swap_time; ++k) {
        t.push_back(r.times[k]);
        p.push_back(r.p1[k]);
    }
    const auto ext = find_extrema(t, p, 1e-6);
    CHECK(ext.minima.size() + ext.maxima.size() > 20);
}

TEST_CASE("swap frequency follows g^2/Delta")
{
    const double g = reference_g();
    double previous = 1.0;
    for (double ratio : {8.0, 10.0, 15.0, 20.0}) {
        const TransferResult r = dispersive_run(ratio);
        const double err = std::abs(r.swap_frequency / (g / ratio) - 1.0);
        CHECK(err < 0.1);
        CHECK(err < previous);
        previous = err;
        // Exact slow frequency: half the bright-state shift E, E(E + Delta) = 2 g^2.
        const double Delta = ratio * g;
        const double E = 0.5 * (std::sqrt(Delta * Delta + 8.0 * g * g) - Delta);
        CHECK(r.swap_frequency == doctest::Approx(0.5 * E).epsilon(1e-3));
    }
}

TEST_CASE("virtual magnon population stays small")
{
    const double g = reference_g();
    for (double ratio : {10.0, 15.0, 20.0}) {
        const TransferResult r = dispersive_run(ratio);
        const double bound = 4.0 / (ratio * ratio) + 1e-3;
        CHECK(*std::max_element(r.pb.begin(), r.pb.end()) <= bound);
        for (std::size_t k = 0; k < r.times.size(); ++k)
            CHECK(r.p1[k] + r.p2[k] + r.pb[k] == doctest::Approx(1.0).epsilon(1e-9));
    }
    (void)g;
}

TEST_CASE("damping reduces the transfer fidelity within the virtual-loss bound")
{
    const double g = reference_g();
    const double ratio = 10.0;
    const double ideal = dispersive_run(ratio).fidelity;
    double previous = ideal;
    for (double Gamma : {1e5, 1e6, 3e6}) {
        const TransferResult r = dispersive_run(ratio, Gamma);
        CHECK(r.fidelity < previous);
        previous = r.fidelity;
        const double bound = (1.0 - std::exp(-2.0 * Gamma * std::pow(g / (ratio * g), 2) * r.swap_time)) * 1.2;
        CHECK(1.0 - r.fidelity <= bound);
    }
}

TEST_CASE("relabelling the emitters swaps their populations exactly")
{
    const double g1 = kTwoPi * 0.4e6, g2 = kTwoPi * 0.3e6;
    SingleExcitationModel a, b;
    a.couplings.resize(2, 1);
    a.couplings << g1, g2;
    b.couplings.resize(2, 1);
    b.couplings << g2, g1;
    a.rates = b.rates = {cdouble{-5e5, 4e6}};
    const auto ra = evolve_single_excitation(a, {1.0, 0.0, 0.0}, 5e-6, 1e-9);
    const auto rb = evolve_single_excitation(b, {0.0, 1.0, 0.0}, 5e-6, 1e-9);
    CHECK(ra.emitter_populations[0] == rb.emitter_populations[1]);
    CHECK(ra.emitter_populations[1] == rb.emitter_populations[0]);
    CHECK(ra.mode_population == rb.mode_population);
}

TEST_CASE("a decoupled second emitter reproduces single-emitter dynamics bit for bit")
{
    const double g = reference_g(), Delta = 3.0 * g, Gamma = 1e6;
    const TransferResult two = transfer_dynamics(g, 0.0, Delta, Gamma, 5e-6, 1e-9);
    const TimeSeries one = evolve_pseudomode(MemoryKernel({{g, cdouble{-0.5 * Gamma, Delta}}}), 5e-6, 1e-9);
    CHECK(two.p1 == one.populations);
    for (double p : two.p2)
        CHECK(p == 0.0);
}

TEST_CASE("antipodal configuration")
{
    const CavityConfig cav = reference_cavity(25, 0.0);
    const double g = reference_g();
    const TwoEmitterConfig cfg = TwoEmitterConfig::antipodal(cav, 36e-9, 10.0 * g);
    CHECK(cfg.gap() == doctest::Approx(6e-9));
    const TransferResult r = transfer_dynamics(cfg, 15e-6, 2e-9);
    CHECK(r.warnings.empty());
    CHECK(r.coupling == doctest::Approx(g).epsilon(1e-12));
    CHECK(r.swap_frequency == doctest::Approx(g / 10.0).epsilon(0.1));

    const auto close = transfer_dynamics(TwoEmitterConfig::antipodal(cav, 36e-9, 0.5 * g), 2e-6, 1e-9);
    CHECK_FALSE(close.warnings.empty());
    const auto far = transfer_dynamics(TwoEmitterConfig::antipodal(cav, 36e-9, kTwoPi * 100e6), 1e-7, 1e-11);
    CHECK_FALSE(far.warnings.empty());
}
