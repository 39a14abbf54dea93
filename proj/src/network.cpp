#include "nanomag/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nanomag/errors.hpp"
#include "nanomag/parallel.hpp"

namespace nanomag {

TwoEmitterConfig TwoEmitterConfig::antipodal(const CavityConfig& cavity, double a, double detuning)
{
    TwoEmitterConfig cfg;
    cfg.cavity = cavity;
    cfg.detuning = detuning;
    const double w0 = kittel_frequency(cavity.fields, cavity.material) + detuning;
    cfg.emitters[0] = EmitterConfig::equatorial(a, w0);
    cfg.emitters[1] = EmitterConfig::equatorial(-a, w0);
    return cfg;
}

double TwoEmitterConfig::gap() const
{
    return emitters[0].position.norm() - cavity.radius;
}

double effective_coupling(double g, double Delta)
{
    if (Delta == 0.0)
        throw std::domain_error("effective_coupling: dispersive estimate needs a nonzero detuning");
    return g * g / Delta;
}

double dipole_dipole_coupling(double separation)
{
    const auto& c = kConstants;
    const double d3 = separation * separation * separation;
    return c.mu0() * c.muB() * c.muB() / (c.hbar() * kTwoPi * d3);
}

std::vector<CouplingRow> coupling_vs_separation_sweep(double gap, const std::vector<double>& radii,
                                                      double delta_over_g,
                                                      const CavityConfig& cavity_template,
                                                      unsigned threads)
{
    if (!(gap >= 0.0))
        throw std::domain_error("coupling sweep: gap must be non-negative");
    for (double R : radii)
        if (!(R > 0.0))
            throw std::domain_error("coupling sweep: radii must be positive");

    std::vector<CouplingRow> rows(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        CavityConfig cavity = cavity_template;
        cavity.radius = radii[i];
        cavity.n_max = 1;
        const double a = radii[i] + gap;
        const MagnonMode kittel = quantize_mode(1, cavity);
        const double g = coupling_strength(kittel, EmitterConfig::equatorial(a, kittel.omega));
        CouplingRow& row = rows[i];
        row.radius = radii[i];
        row.separation = 2.0 * a;
        row.g = g;
        row.g_eff = effective_coupling(g, delta_over_g * g);
        row.g_dip = dipole_dipole_coupling(row.separation);
    });
    return rows;
}

TransferResult transfer_dynamics(double g1, double g2, double Delta, double Gamma,
                                 double t_end, double dt)
{
    // Same time-step guard as the single-emitter solvers.
    check_time_step(MemoryKernel({{std::max(std::abs(g1), std::abs(g2)), cdouble{-0.5 * Gamma, Delta}}}), dt);

    SingleExcitationModel model;
    model.couplings.resize(2, 1);
    model.couplings(0, 0) = g1;
    model.couplings(1, 0) = g2;
    model.rates = {cdouble{-0.5 * Gamma, Delta}};
    const std::vector<cdouble> initial{1.0, 0.0, 0.0};

    auto traj = evolve_single_excitation(model, initial, t_end, dt);

    TransferResult out;
    out.times = std::move(traj.times);
    out.p1 = std::move(traj.emitter_populations[0]);
    out.p2 = std::move(traj.emitter_populations[1]);
    out.pb = std::move(traj.mode_population);
    out.coupling = g1;

    // In the dispersive regime P2 carries ripples at roughly Delta on top of
    // the slow swap; averaging over one ripple period keeps them from
    // deciding where the flat top of the swap is.
    const double G2 = g1 * g1 + g2 * g2;
    std::vector<double> slow = out.p2;
    std::size_t half_window = 0;
    if (Delta * Delta > 4.0 * G2 && out.times.size() > 1) {
        const double ripple_period = kTwoPi / std::sqrt(Delta * Delta + 4.0 * G2);
        half_window = static_cast<std::size_t>(std::llround(0.5 * ripple_period / dt));
        // Two boxcar passes: the ripple holds two nearby frequencies.
        for (int pass = 0; pass < 2 && half_window > 0; ++pass) {
            std::vector<double> prefix(slow.size() + 1, 0.0);
            for (std::size_t k = 0; k < slow.size(); ++k)
                prefix[k + 1] = prefix[k] + slow[k];
            for (std::size_t k = 0; k < slow.size(); ++k) {
                const std::size_t lo = k > half_window ? k - half_window : 0;
                const std::size_t hi = std::min(slow.size(), k + half_window + 1);
                slow[k] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
            }
        }
    }

    // First transfer maximum: P2 crosses 1/2 at t_half; for P2 ~ sin^2(g_eff t)
    // the maximum sits at 2 t_half and the next zero at 4 t_half, so searching
    // [t_half, 3 t_half] isolates it.
    std::size_t best = 0;
    std::size_t half = slow.size();
    for (std::size_t k = 0; k < slow.size(); ++k)
        if (slow[k] >= 0.5) {
            half = k;
            break;
        }
    const std::size_t stop = half < slow.size() && half > 0 ? std::min(slow.size(), 3 * half + 1) : slow.size();
    for (std::size_t k = half < slow.size() ? half : 0; k < stop; ++k)
        if (slow[k] > slow[best])
            best = k;
    out.swap_time = out.times[best];
    // Fidelity: the largest actual P2 within one ripple period of the swap.
    out.fidelity = out.p2[best];
    for (std::size_t k = best > half_window ? best - half_window : 0;
         k < std::min(out.p2.size(), best + half_window + 1); ++k)
        out.fidelity = std::max(out.fidelity, out.p2[k]);
    out.swap_frequency = out.swap_time > 0.0 ? kPi / (2.0 * out.swap_time) : 0.0;
    return out;
}

TransferResult transfer_dynamics(const TwoEmitterConfig& cfg, double t_end, double dt)
{
    cfg.cavity.validate();
    const MagnonMode kittel = quantize_mode(1, cfg.cavity);
    const double g1 = coupling_strength(kittel, cfg.emitters[0]);
    const double g2 = coupling_strength(kittel, cfg.emitters[1]);
    if (std::abs(g1 - g2) > 1e-10 * std::max(g1, g2)) {
        std::ostringstream msg;
        msg << "transfer model assumes equal couplings; got g1 = " << g1 << ", g2 = " << g2 << " rad/s";
        throw std::domain_error(msg.str());
    }
    const double Delta = cfg.emitters[0].omega0 - kittel.omega;
    TransferResult out = transfer_dynamics(g1, g2, Delta, kittel.Gamma, t_end, dt);

    // Single-mode validity: the nearest other mode (n = 2 on this branch) must
    // be much further detuned than the Kittel mode.
    const double w2 = mode_frequency(2, cfg.cavity.fields, cfg.cavity.material);
    const double other = std::abs(cfg.emitters[0].omega0 - w2);
    if (other < 10.0 * std::abs(Delta)) {
        std::ostringstream msg;
        msg << "single-mode approximation questionable: detuning from the n=2 mode ("
            << units::omega_to_MHz(other) << " MHz) is less than 10x the Kittel detuning ("
            << units::omega_to_MHz(std::abs(Delta)) << " MHz)";
        out.warnings.push_back(msg.str());
    }
    if (!(std::abs(Delta) > std::max(g1, kittel.Gamma)))
        out.warnings.push_back("detuning does not exceed max(g, Gamma): not in the dispersive window");
    return out;
}

} // namespace nanomag
