#include "nanomag/spectral.hpp"

#include <stdexcept>

#include "nanomag/parallel.hpp"

namespace nanomag {

SpectralDensity::SpectralDensity(const EmitterConfig& emitter, const CavityConfig& cavity)
    : modes_(quantize_modes(cavity))
{
    couplings_.reserve(modes_.size());
    for (const auto& mode : modes_)
        couplings_.push_back(coupling_strength(mode, emitter));
}

double SpectralDensity::term(int n, double omega) const
{
    const auto& mode = modes_.at(n - 1);
    const double g = couplings_[n - 1];
    const double half = 0.5 * mode.Gamma;
    const double d = omega - mode.omega;
    return g * g * (mode.Gamma / kTwoPi) / (d * d + half * half);
}

double SpectralDensity::operator()(double omega) const
{
    double sum = 0.0;
    for (int n = 1; n <= static_cast<int>(modes_.size()); ++n)
        sum += term(n, omega);
    return sum;
}

double spectral_density(double omega, const EmitterConfig& emitter, const CavityConfig& cavity)
{
    return SpectralDensity(emitter, cavity)(omega);
}

SpectralGrid spectral_scan(const std::vector<double>& omegas, const EmitterConfig& emitter,
                           const CavityConfig& cavity, unsigned threads)
{
    for (std::size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1]))
            throw std::invalid_argument("spectral_scan: frequency grid must be strictly increasing");

    const SpectralDensity J(emitter, cavity);
    SpectralGrid grid;
    grid.omegas = omegas;
    grid.values.assign(omegas.size(), 0.0);
    grid.cavity = cavity;
    grid.emitter_position = emitter.position;
    grid.n_max = cavity.n_max;
    parallel_for(omegas.size(), threads, [&](std::size_t i) { grid.values[i] = J(omegas[i]); });
    return grid;
}

FieldSweepMap field_sweep_map(const std::vector<double>& H0_values,
                              const std::vector<double>& omega_over_kittel,
                              const EmitterConfig& emitter, const CavityConfig& cavity_template,
                              unsigned threads)
{
    if (H0_values.empty() || omega_over_kittel.empty())
        throw std::invalid_argument("field_sweep_map: empty axis");
    for (double H0 : H0_values)
        if (!(H0 > 0.0))
            throw std::domain_error("field_sweep_map: every H0 must be positive");

    FieldSweepMap map;
    map.H0 = H0_values;
    map.omega_over_kittel = omega_over_kittel;
    map.kittel.assign(H0_values.size(), 0.0);
    map.values.assign(H0_values.size() * omega_over_kittel.size(), 0.0);

    const std::size_t cols = omega_over_kittel.size();
    parallel_for(H0_values.size(), threads, [&](std::size_t i) {
        CavityConfig cavity = cavity_template;
        cavity.fields = field_state_for_internal(H0_values[i], cavity.material);
        const double wK = kittel_frequency(cavity.fields, cavity.material);
        const SpectralDensity J(emitter, cavity);
        map.kittel[i] = wK;
        for (std::size_t j = 0; j < cols; ++j)
            map.values[i * cols + j] = J(omega_over_kittel[j] * wK);
    });
    return map;
}

std::vector<std::size_t> local_maxima(const std::vector<double>& values)
{
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < values.size(); ++i)
        if (values[i] > values[i - 1] && values[i] > values[i + 1])
            peaks.push_back(i);
    return peaks;
}

} // namespace nanomag
