#include "nanomag/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "nanomag/errors.hpp"
#include "nanomag/parallel.hpp"

namespace nanomag {

namespace odeint = boost::numeric::odeint;

namespace {

std::size_t step_count(double t_end, double dt)
{
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ConfigError("time step must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end))
        throw ConfigError("end time must be non-negative");
    return static_cast<std::size_t>(std::llround(t_end / dt));
}

} // namespace

MemoryKernel::MemoryKernel(std::vector<KernelTerm> terms) : terms_(std::move(terms)) {}

cdouble MemoryKernel::operator()(double tau) const
{
    cdouble k{0.0, 0.0};
    for (const auto& t : terms_)
        k += t.weight() * std::exp(t.rate * tau);
    return k;
}

double MemoryKernel::at_zero() const
{
    double k = 0.0;
    for (const auto& t : terms_)
        k += t.weight();
    return k;
}

MemoryKernel MemoryKernel::scaled(double s) const
{
    std::vector<KernelTerm> out = terms_;
    for (auto& t : out)
        t.coupling *= s;
    return MemoryKernel(std::move(out));
}

double MemoryKernel::max_coupling() const
{
    double m = 0.0;
    for (const auto& t : terms_)
        m = std::max(m, std::abs(t.coupling));
    return m;
}

double MemoryKernel::max_detuning() const
{
    double m = 0.0;
    for (const auto& t : terms_)
        m = std::max(m, std::abs(t.rate.imag()));
    return m;
}

double MemoryKernel::max_damping() const
{
    double m = 0.0;
    for (const auto& t : terms_)
        m = std::max(m, -2.0 * t.rate.real());
    return m;
}

MemoryKernel build_kernel(const EmitterConfig& emitter, const CavityConfig& cavity)
{
    std::vector<KernelTerm> terms;
    for (const auto& mode : quantize_modes(cavity)) {
        const double g = coupling_strength(mode, emitter);
        terms.push_back({g, cdouble{-0.5 * mode.Gamma, emitter.omega0 - mode.omega}});
    }
    return MemoryKernel(std::move(terms));
}

void check_time_step(const MemoryKernel& kernel, double dt)
{
    struct Limit {
        const char* name;
        double value;
    };
    const double inf = std::numeric_limits<double>::infinity();
    const double det = kernel.max_detuning();
    const double gam = kernel.max_damping();
    const double g = kernel.max_coupling();
    const Limit limits[] = {
        {"detuning 2*pi/max|omega0 - omega_n|", det > 0.0 ? kTwoPi / det : inf},
        {"damping 1/Gamma", gam > 0.0 ? 1.0 / gam : inf},
        {"coupling 1/(10*max g)", g > 0.0 ? 1.0 / (10.0 * g) : inf},
    };
    const Limit* binding = std::min_element(std::begin(limits), std::end(limits),
                                            [](const Limit& a, const Limit& b) { return a.value < b.value; });
    const double max_dt = binding->value / 10.0;
    if (dt > max_dt) {
        std::ostringstream msg;
        msg << "time step " << dt << " s is too coarse: the " << binding->name
            << " constraint requires dt <= " << max_dt << " s";
        throw ConfigError(msg.str());
    }
}

TimeSeries evolve_volterra(const MemoryKernel& kernel, double t_end, double dt)
{
    const std::size_t N = step_count(t_end, dt);
    check_time_step(kernel, dt);

    std::vector<cdouble> K(N + 1);
    for (std::size_t j = 0; j <= N; ++j)
        K[j] = kernel(static_cast<double>(j) * dt);

    // History integral F_k = int_0^{t_k} K(t_k - s) c(s) ds by the trapezoid
    // rule; the amplitude itself advances with the trapezoid rule in time,
    // which makes each step a scalar implicit solve.
    std::vector<cdouble> c(N + 1);
    c[0] = 1.0;
    cdouble F_prev{0.0, 0.0};
    const cdouble implicit = 1.0 + 0.25 * dt * dt * K[0];
    for (std::size_t k = 0; k < N; ++k) {
        const std::size_t next = k + 1;
        cdouble history = 0.5 * K[next] * c[0];
        for (std::size_t j = 1; j < next; ++j)
            history += K[next - j] * c[j];
        history *= dt;
        c[next] = (c[k] - 0.5 * dt * (F_prev + history)) / implicit;
        F_prev = history + 0.5 * dt * K[0] * c[next];
    }

    TimeSeries out;
    out.times.resize(N + 1);
    out.populations.resize(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        out.times[k] = static_cast<double>(k) * dt;
        out.populations[k] = std::norm(c[k]);
    }
    return out;
}

SingleExcitationTrajectory evolve_single_excitation(const SingleExcitationModel& model,
                                                    const std::vector<cdouble>& initial,
                                                    double t_end, double dt, OdeTolerances tol)
{
    using State = std::vector<cdouble>;
    const std::size_t E = model.emitter_count();
    const std::size_t M = model.mode_count();
    if (static_cast<std::size_t>(model.couplings.cols()) != M)
        throw std::invalid_argument("coupling matrix does not match the number of modes");
    if (initial.size() != E + M)
        throw std::invalid_argument("initial state has the wrong dimension");
    const std::size_t N = step_count(t_end, dt);

    const cdouble minus_i{0.0, -1.0};
    auto rhs = [&](const State& x, State& dx, double) {
        for (std::size_t e = 0; e < E; ++e) {
            cdouble s{0.0, 0.0};
            for (std::size_t v = 0; v < M; ++v)
                s += model.couplings(e, v) * x[E + v];
            dx[e] = minus_i * s;
        }
        for (std::size_t v = 0; v < M; ++v) {
            cdouble s{0.0, 0.0};
            for (std::size_t e = 0; e < E; ++e)
                s += model.couplings(e, v) * x[e];
            dx[E + v] = minus_i * s + model.rates[v] * x[E + v];
        }
    };

    SingleExcitationTrajectory out;
    out.times.resize(N + 1);
    out.emitter_populations.assign(E, std::vector<double>(N + 1));
    out.mode_population.resize(N + 1);
    auto record = [&](std::size_t k, const State& x) {
        out.times[k] = static_cast<double>(k) * dt;
        for (std::size_t e = 0; e < E; ++e)
            out.emitter_populations[e][k] = std::norm(x[e]);
        double pb = 0.0;
        for (std::size_t v = 0; v < M; ++v)
            pb += std::norm(x[E + v]);
        out.mode_population[k] = pb;
    };

    State x = initial;
    record(0, x);
    if (N == 0)
        return out;

    double scale = 0.0;
    for (const auto& r : model.rates)
        scale = std::max(scale, std::abs(r));
    // Gershgorin bound on the coupling block; unaffected by decoupled emitters.
    if (model.couplings.size() > 0) {
        const Eigen::MatrixXd a = model.couplings.cwiseAbs();
        scale = std::max({scale, a.rowwise().sum().maxCoeff(), a.colwise().sum().maxCoeff()});
    }
    const double first_step = scale > 0.0 ? std::min(dt, 0.01 / scale) : dt;

    auto stepper = odeint::make_dense_output(tol.absolute, tol.relative, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(x, 0.0, first_step);

    const std::size_t max_steps = 200'000'000;
    std::size_t steps = 0;
    State sample(E + M);
    for (std::size_t k = 1; k <= N; ++k) {
        const double t = static_cast<double>(k) * dt;
        while (stepper.current_time() < t) {
            stepper.do_step(rhs);
            const double h = stepper.current_time_step();
            if (!(h > 64.0 * std::numeric_limits<double>::epsilon() * std::max(stepper.current_time(), dt))
                || ++steps > max_steps) {
                std::ostringstream msg;
                msg << "pseudo-mode integration stalled at t = " << stepper.current_time() << " s (step "
                    << h << " s after " << steps << " steps, " << M << " modes)";
                throw NumericalError(msg.str());
            }
        }
        stepper.calc_state(t, sample);
        record(k, sample);
    }
    return out;
}

TimeSeries evolve_pseudomode(const MemoryKernel& kernel, double t_end, double dt, OdeTolerances tol)
{
    step_count(t_end, dt);
    check_time_step(kernel, dt);

    SingleExcitationModel model;
    const auto& terms = kernel.terms();
    model.couplings.resize(1, static_cast<Eigen::Index>(terms.size()));
    for (std::size_t v = 0; v < terms.size(); ++v) {
        model.couplings(0, static_cast<Eigen::Index>(v)) = terms[v].coupling;
        model.rates.push_back(terms[v].rate);
    }
    std::vector<cdouble> initial(1 + terms.size(), cdouble{0.0, 0.0});
    initial[0] = 1.0;

    auto traj = evolve_single_excitation(model, initial, t_end, dt, tol);
    TimeSeries out;
    out.times = std::move(traj.times);
    out.populations = std::move(traj.emitter_populations[0]);
    out.mode_population = std::move(traj.mode_population);
    return out;
}

OscillationExtrema find_extrema(const std::vector<double>& times, const std::vector<double>& values,
                                double hysteresis)
{
    OscillationExtrema out;
    if (values.empty())
        return out;

    enum class Trend { unknown, falling, rising } trend = Trend::unknown;
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double f = values[i];
        switch (trend) {
        case Trend::unknown:
            if (f < values[lo])
                lo = i;
            if (f > values[hi])
                hi = i;
            if (f < values[hi] - hysteresis) {
                trend = Trend::falling;
                lo = i;
            } else if (f > values[lo] + hysteresis) {
                trend = Trend::rising;
                hi = i;
            }
            break;
        case Trend::falling:
            if (f < values[lo]) {
                lo = i;
            } else if (f > values[lo] + hysteresis) {
                out.minima.push_back(times[lo]);
                trend = Trend::rising;
                hi = i;
            }
            break;
        case Trend::rising:
            if (f > values[hi]) {
                hi = i;
            } else if (f < values[hi] - hysteresis) {
                out.maxima.push_back(times[hi]);
                trend = Trend::falling;
                lo = i;
            }
            break;
        }
    }
    return out;
}

std::optional<double> extract_rabi_frequency(const TimeSeries& series, double hysteresis)
{
    const auto ext = find_extrema(series.times, series.populations, hysteresis);
    if (ext.minima.size() >= 2)
        return kTwoPi / (ext.minima[1] - ext.minima[0]);
    if (ext.minima.size() == 1)
        return kPi / ext.minima[0];
    return std::nullopt;
}

double fit_decay_rate(const TimeSeries& series, double t_from, double t_to)
{
    double n = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < series.times.size(); ++k) {
        const double t = series.times[k];
        if (t < t_from || t > t_to)
            continue;
        const double y = -std::log(series.populations[k]);
        n += 1.0;
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
    }
    if (n < 2.0)
        throw std::invalid_argument("fit_decay_rate: fewer than two samples in the window");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<TimeSeries> radius_sweep_dynamics(const std::vector<double>& radii,
                                              const CavityConfig& cavity_template,
                                              double a_over_R, double theta, double phi,
                                              double t_end, double dt, unsigned threads)
{
    for (double R : radii)
        if (!(R >= 10e-9 * (1.0 - 1e-12) && R <= 500e-9 * (1.0 + 1e-12)))
            throw std::domain_error("radius sweep: radii must lie in [10 nm, 500 nm]");
    if (!(a_over_R >= 1.0))
        throw std::domain_error("radius sweep: emitter must sit outside the sphere (a/R >= 1)");

    std::vector<TimeSeries> out(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) {
        CavityConfig cavity = cavity_template;
        cavity.radius = radii[i];
        const double wK = kittel_frequency(cavity.fields, cavity.material);
        const auto emitter = EmitterConfig::at(a_over_R * radii[i], theta, phi, wK);
        out[i] = evolve_pseudomode(build_kernel(emitter, cavity), t_end, dt);
    });
    return out;
}

} // namespace nanomag
