#include "nanomag/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "nanomag/errors.hpp"

namespace nanomag {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text)
{
    text = trim(text);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !std::isfinite(v))
        throw ConfigError("expected a finite number, got '" + std::string(text) + "'");
    return v;
}

long parse_int(std::string_view text)
{
    text = trim(text);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw ConfigError("expected an integer, got '" + std::string(text) + "'");
    return v;
}

bool is_auto(std::string_view text) { return trim(text) == "auto"; }

void require(bool ok, const char* what)
{
    if (!ok)
        throw ConfigError(what);
}

struct Field {
    ConfigKeyInfo info;
    std::function<void(RunConfig&, std::string_view)> set;
    std::function<std::string(const RunConfig&)> get;
    bool affects_output = true;
};

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : "auto"; }

std::string join(const std::vector<double>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += format_double(v[i]);
    }
    return s;
}

double default_Gamma_Mrad_per_s(const RunConfig& c)
{
    return c.experiment == Experiment::fieldmap ? 10.0 : 1.0;
}

// Helpers to declare fields tersely.
Field number(std::string key, std::string unit, std::string desc, double RunConfig::*member,
             bool (*check)(double), const char* rule)
{
    return {{key, unit, desc},
            [member, check, rule](RunConfig& c, std::string_view v) {
                const double x = parse_double(v);
                require(check(x), rule);
                c.*member = x;
            },
            [member](const RunConfig& c) { return format_double(c.*member); }};
}

Field optional_number(std::string key, std::string unit, std::string desc,
                      std::optional<double> RunConfig::*member, bool (*check)(double), const char* rule,
                      std::function<std::string(const RunConfig&)> get = {})
{
    if (!get)
        get = [member](const RunConfig& c) { return opt(c.*member); };
    return {{key, unit, desc},
            [member, check, rule](RunConfig& c, std::string_view v) {
                if (is_auto(v)) {
                    c.*member = std::nullopt;
                    return;
                }
                const double x = parse_double(v);
                require(check(x), rule);
                c.*member = x;
            },
            std::move(get)};
}

Field integer(std::string key, std::string desc, int RunConfig::*member, long min_value, const char* rule)
{
    return {{key, "", desc},
            [member, min_value, rule](RunConfig& c, std::string_view v) {
                const long x = parse_int(v);
                require(x >= min_value && x <= 100'000'000, rule);
                c.*member = static_cast<int>(x);
            },
            [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

bool positive(double x) { return x > 0.0; }
bool non_negative(double x) { return x >= 0.0; }
bool nonzero(double x) { return x != 0.0; }
bool any(double) { return true; }
bool at_least_one(double x) { return x >= 1.0; }

const std::vector<Field>& fields()
{
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back({{"experiment", "", "modes | spectrum | fieldmap | decay | transfer | coupling-sweep"},
                     [](RunConfig& c, std::string_view v) {
                         auto e = parse_experiment(trim(v));
                         require(e.has_value(), "unknown experiment");
                         c.experiment = e;
                     },
                     [](const RunConfig& c) {
                         return c.experiment ? std::string(to_string(*c.experiment)) : std::string("auto");
                     }});
        f.push_back(number("R_nm", "nm", "sphere radius", &RunConfig::R_nm, positive, "must be positive"));
        f.push_back(optional_number(
            "mu0_H0_T", "T", "internal static field mu0*H0 (default 0.5 unless mu0_He_T is given)",
            &RunConfig::mu0_H0_T, positive, "must be positive", [](const RunConfig& c) {
                if (c.mu0_He_T)
                    return std::string("auto");
                return format_double(c.mu0_H0_T.value_or(0.5));
            }));
        f.push_back(optional_number("mu0_He_T", "T", "external static field mu0*He (alternative to mu0_H0_T)",
                                    &RunConfig::mu0_He_T, positive, "must be positive"));
        f.push_back(number("mu0_Ms_T", "T", "saturation magnetization mu0*Ms", &RunConfig::mu0_Ms_T, positive,
                           "must be positive"));
        f.push_back(number("gamma_GHz_per_T", "GHz/T", "gyromagnetic ratio gamma/(2 pi)",
                           &RunConfig::gamma_GHz_per_T, positive, "must be positive"));
        f.push_back(optional_number(
            "Gamma_Mrad_per_s", "1e6 rad/s",
            "magnon damping Gamma as an angular rate (default 10 for fieldmap, 1 otherwise)",
            &RunConfig::Gamma_Mrad_per_s, non_negative, "must be non-negative", [](const RunConfig& c) {
                if (c.Gamma_MHz || c.alpha)
                    return std::string("auto");
                return format_double(c.Gamma_Mrad_per_s.value_or(default_Gamma_Mrad_per_s(c)));
            }));
        f.push_back(optional_number("Gamma_MHz", "MHz", "magnon damping given as Gamma/(2 pi)",
                                    &RunConfig::Gamma_MHz, non_negative, "must be non-negative"));
        f.push_back(optional_number("alpha", "", "Gilbert parameter; sets Gamma = 2 alpha gamma mu0 H0",
                                    &RunConfig::alpha, non_negative, "must be non-negative"));
        f.push_back(optional_number("a_nm", "nm", "emitter distance from the sphere centre", &RunConfig::a_nm,
                                    positive, "must be positive"));
        f.push_back(optional_number(
            "a_over_R", "", "emitter distance in units of R (default 1.2 unless a_nm is given)",
            &RunConfig::a_over_R, at_least_one, "must be >= 1", [](const RunConfig& c) {
                if (c.a_nm)
                    return std::string("auto");
                return format_double(c.a_over_R.value_or(1.2));
            }));
        f.push_back(number("emitter_theta_deg", "deg", "emitter polar angle from the magnetization axis",
                           &RunConfig::emitter_theta_deg, any, ""));
        f.push_back(number("emitter_phi_deg", "deg", "emitter azimuth", &RunConfig::emitter_phi_deg, any, ""));
        f.push_back(number("dipole_scale", "", "transition dipole in units of the Bohr magneton",
                           &RunConfig::dipole_scale, positive, "must be positive"));
        f.push_back(optional_number("omega0_GHz", "GHz", "spin transition frequency (auto: Kittel frequency)",
                                    &RunConfig::omega0_GHz, positive, "must be positive"));
        f.push_back({{"n_max", "", "highest multipole order (default 7 for fieldmap, 25 otherwise)"},
                     [](RunConfig& c, std::string_view v) {
                         if (is_auto(v)) {
                             c.n_max.reset();
                             return;
                         }
                         const long x = parse_int(v);
                         require(x >= 1 && x <= 200, "must be in [1, 200]");
                         c.n_max = static_cast<int>(x);
                     },
                     [](const RunConfig& c) { return std::to_string(c.resolved_n_max()); }});
        f.push_back(optional_number(
            "Delta_over_g", "", "spin-Kittel detuning in units of g (default 10)", &RunConfig::Delta_over_g,
            nonzero, "must be nonzero", [](const RunConfig& c) {
                if (c.Delta_MHz)
                    return std::string("auto");
                return format_double(c.resolved_Delta_over_g());
            }));
        f.push_back(optional_number("Delta_MHz", "MHz", "spin-Kittel detuning Delta/(2 pi)",
                                    &RunConfig::Delta_MHz, nonzero, "must be nonzero"));
        f.push_back(number("gap_nm", "nm", "emitter-surface gap G for the coupling sweep", &RunConfig::gap_nm,
                           non_negative, "must be non-negative"));
        f.push_back(number("R_min_nm", "nm", "coupling sweep: smallest radius", &RunConfig::R_min_nm, positive,
                           "must be positive"));
        f.push_back(number("R_max_nm", "nm", "coupling sweep: largest radius", &RunConfig::R_max_nm, positive,
                           "must be positive"));
        f.push_back(integer("R_points", "coupling sweep: number of radii", &RunConfig::R_points, 1, "must be >= 1"));
        f.push_back({{"R_list_nm", "nm", "decay: comma-separated radii for a radius sweep"},
                     [](RunConfig& c, std::string_view v) {
                         c.R_list_nm.clear();
                         v = trim(v);
                         while (!v.empty()) {
                             const auto comma = v.find(',');
                             const double r = parse_double(v.substr(0, comma));
                             require(r >= 10.0 && r <= 500.0, "radii must lie in [10, 500] nm");
                             c.R_list_nm.push_back(r);
                             if (comma == std::string_view::npos)
                                 break;
                             v.remove_prefix(comma + 1);
                         }
                     },
                     [](const RunConfig& c) { return join(c.R_list_nm); }});
        f.push_back({{"solver", "", "decay solver: pseudomode | volterra"},
                     [](RunConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "pseudomode")
                             c.solver = Solver::pseudomode;
                         else if (v == "volterra")
                             c.solver = Solver::volterra;
                         else
                             throw ConfigError("expected pseudomode or volterra");
                     },
                     [](const RunConfig& c) {
                         return std::string(c.solver == Solver::pseudomode ? "pseudomode" : "volterra");
                     }});
        f.push_back(optional_number(
            "t_end_us", "us", "time horizon (default 3 for decay, 20 for transfer, 1 otherwise)", &RunConfig::t_end_us, positive,
            "must be positive", [](const RunConfig& c) { return format_double(c.resolved_t_end_us()); }));
        f.push_back({{"samples", "", "number of time steps (default 100000)"},
                     [](RunConfig& c, std::string_view v) {
                         if (is_auto(v)) {
                             c.samples.reset();
                             return;
                         }
                         const long x = parse_int(v);
                         require(x >= 1 && x <= 100'000'000, "must be in [1, 1e8]");
                         c.samples = static_cast<int>(x);
                     },
                     [](const RunConfig& c) { return std::to_string(c.resolved_samples()); }});
        f.push_back(optional_number("omega_min_GHz", "GHz", "spectrum: lower frequency (auto: below omega_K)",
                                    &RunConfig::omega_min_GHz, positive, "must be positive"));
        f.push_back(optional_number("omega_max_GHz", "GHz", "spectrum: upper frequency (auto: above the branch limit)",
                                    &RunConfig::omega_max_GHz, positive, "must be positive"));
        f.push_back(integer("omega_points", "spectrum: number of frequencies", &RunConfig::omega_points, 2,
                            "must be >= 2"));
        f.push_back(number("mu0_H0_min_T", "T", "fieldmap: lowest internal field", &RunConfig::mu0_H0_min_T,
                           positive, "must be positive"));
        f.push_back(number("mu0_H0_max_T", "T", "fieldmap: highest internal field", &RunConfig::mu0_H0_max_T,
                           positive, "must be positive"));
        f.push_back(integer("H0_points", "fieldmap: number of fields", &RunConfig::H0_points, 1, "must be >= 1"));
        f.push_back(number("ratio_min", "", "fieldmap: lowest omega/omega_K", &RunConfig::ratio_min, positive,
                           "must be positive"));
        f.push_back(number("ratio_max", "", "fieldmap: highest omega/omega_K", &RunConfig::ratio_max, positive,
                           "must be positive"));
        f.push_back(integer("ratio_points", "fieldmap: number of frequencies", &RunConfig::ratio_points, 2,
                            "must be >= 2"));
        f.push_back({{"out", "", "output directory"},
                     [](RunConfig& c, std::string_view v) { c.out_dir = std::string(trim(v)); },
                     [](const RunConfig& c) { return c.out_dir; }, false});
        f.push_back({{"format", "", "csv | json"},
                     [](RunConfig& c, std::string_view v) {
                         v = trim(v);
                         if (v == "csv")
                             c.format = OutputFormat::csv;
                         else if (v == "json")
                             c.format = OutputFormat::json;
                         else
                             throw ConfigError("expected csv or json");
                     },
                     [](const RunConfig& c) { return std::string(c.format == OutputFormat::csv ? "csv" : "json"); }});
        f.push_back({{"threads", "", "worker threads for sweeps (0 = all cores)"},
                     [](RunConfig& c, std::string_view v) {
                         const long x = parse_int(v);
                         require(x >= 0 && x <= 4096, "must be in [0, 4096]");
                         c.threads = static_cast<unsigned>(x);
                     },
                     [](const RunConfig& c) { return std::to_string(c.threads); }, false});
        return f;
    }();
    return table;
}

const Field* find_field(std::string_view key)
{
    for (const auto& f : fields())
        if (f.info.key == key)
            return &f;
    return nullptr;
}

void apply(RunConfig& cfg, std::string_view key, std::string_view value, const std::string& where)
{
    const Field* f = find_field(key);
    if (!f)
        throw ConfigError(where + ": unknown key '" + std::string(key) + "'");
    try {
        f->set(cfg, value);
    } catch (const ConfigError& e) {
        throw ConfigError(where + ": invalid value for " + std::string(key) + ": " + e.what());
    }
}

} // namespace

std::string_view to_string(Experiment e)
{
    switch (e) {
    case Experiment::modes: return "modes";
    case Experiment::spectrum: return "spectrum";
    case Experiment::fieldmap: return "fieldmap";
    case Experiment::decay: return "decay";
    case Experiment::transfer: return "transfer";
    case Experiment::coupling_sweep: return "coupling-sweep";
    }
    return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name)
{
    for (auto e : {Experiment::modes, Experiment::spectrum, Experiment::fieldmap, Experiment::decay,
                   Experiment::transfer, Experiment::coupling_sweep})
        if (to_string(e) == name)
            return e;
    return std::nullopt;
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

const std::vector<ConfigKeyInfo>& config_keys()
{
    static const std::vector<ConfigKeyInfo> keys = [] {
        std::vector<ConfigKeyInfo> k;
        for (const auto& f : fields())
            k.push_back(f.info);
        return k;
    }();
    return keys;
}

RunConfig parse_config(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides)
{
    RunConfig cfg;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(line_no);
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(where + ": expected key=value, got '" + std::string(line) + "'");
        apply(cfg, trim(line.substr(0, eq)), line.substr(eq + 1), where);
    }
    for (const auto& [key, value] : overrides)
        apply(cfg, key, value, "flag --" + key);

    if (!cfg.experiment)
        throw ConfigError("missing required key 'experiment'");
    validate(cfg);
    return cfg;
}

void validate(const RunConfig& c)
{
    auto fail = [](const std::string& msg) { throw ConfigError(msg); };
    if (c.mu0_H0_T && c.mu0_He_T)
        fail("mu0_H0_T and mu0_He_T are mutually exclusive");
    if (c.mu0_He_T && !(*c.mu0_He_T > c.mu0_Ms_T / 3.0))
        fail("mu0_He_T must exceed mu0_Ms_T/3: the sphere would not be saturated (H0 <= 0)");
    if (int(c.Gamma_Mrad_per_s.has_value()) + int(c.Gamma_MHz.has_value()) + int(c.alpha.has_value()) > 1)
        fail("Gamma_Mrad_per_s, Gamma_MHz and alpha are mutually exclusive");
    if (c.a_nm && c.a_over_R)
        fail("a_nm and a_over_R are mutually exclusive");
    if (c.a_nm && !(*c.a_nm >= c.R_nm))
        fail("a_nm must be at least R_nm: the emitter has to sit outside the sphere");
    if (c.Delta_over_g && c.Delta_MHz)
        fail("Delta_over_g and Delta_MHz are mutually exclusive");
    if (c.R_min_nm > c.R_max_nm)
        fail("R_min_nm must not exceed R_max_nm");
    if (c.omega_min_GHz && c.omega_max_GHz && !(*c.omega_min_GHz < *c.omega_max_GHz))
        fail("omega_min_GHz must be below omega_max_GHz");
    if (c.mu0_H0_min_T > c.mu0_H0_max_T)
        fail("mu0_H0_min_T must not exceed mu0_H0_max_T");
    if (!(c.ratio_min < c.ratio_max))
        fail("ratio_min must be below ratio_max");
}

MaterialParams RunConfig::material() const
{
    MaterialParams m;
    m.Ms = tesla_to_field(mu0_Ms_T);
    m.gamma = kTwoPi * gamma_GHz_per_T * 1e9;
    if (alpha)
        m.alpha = *alpha;
    else if (Gamma_MHz)
        m.Gamma = units::MHz_to_omega(*Gamma_MHz);
    else
        m.Gamma = 1e6 * Gamma_Mrad_per_s.value_or(default_Gamma_Mrad_per_s(*this));
    return m;
}

CavityConfig RunConfig::cavity() const
{
    const MaterialParams mat = material();
    CavityConfig c;
    c.radius = units::nm_to_m(R_nm);
    c.material = mat;
    c.fields = mu0_He_T ? internal_field(tesla_to_field(*mu0_He_T), mat)
                        : field_state_for_internal(tesla_to_field(mu0_H0_T.value_or(0.5)), mat);
    c.n_max = resolved_n_max();
    c.validate();
    return c;
}

double RunConfig::emitter_distance() const
{
    return a_nm ? units::nm_to_m(*a_nm) : a_over_R.value_or(1.2) * units::nm_to_m(R_nm);
}

EmitterConfig RunConfig::emitter() const
{
    const CavityConfig cav = cavity();
    const double w0 = omega0_GHz ? units::GHz_to_omega(*omega0_GHz) : kittel_frequency(cav.fields, cav.material);
    constexpr double deg = kPi / 180.0;
    EmitterConfig e = EmitterConfig::at(emitter_distance(), emitter_theta_deg * deg, emitter_phi_deg * deg, w0);
    e.dipole_scale = dipole_scale;
    return e;
}

int RunConfig::resolved_n_max() const
{
    if (n_max)
        return *n_max;
    if (experiment == Experiment::fieldmap)
        return 7;
    if (experiment == Experiment::coupling_sweep)
        return 1;
    return 25;
}

double RunConfig::resolved_t_end_us() const
{
    if (t_end_us)
        return *t_end_us;
    if (experiment == Experiment::transfer)
        return 20.0;
    return experiment == Experiment::decay ? 3.0 : 1.0;
}

int RunConfig::resolved_samples() const { return samples.value_or(100000); }

double RunConfig::resolved_Delta_over_g() const { return Delta_over_g.value_or(10.0); }

std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& f : fields())
        out.emplace_back(f.info.key, f.get(cfg));
    return out;
}

std::string config_hash(const RunConfig& cfg)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::string_view s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto& f : fields()) {
        if (!f.affects_output)
            continue;
        mix(f.info.key);
        mix("=");
        mix(f.get(cfg));
        mix("\n");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace nanomag
