#include "nanomag/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nanomag/dynamics.hpp"
#include "nanomag/errors.hpp"
#include "nanomag/network.hpp"
#include "nanomag/parallel.hpp"
#include "nanomag/spectral.hpp"

namespace nanomag {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Table {
    std::string name; // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> notes;
};

struct Derived {
    double omega_K = 0.0;
    double Veff = 0.0;
    double g = 0.0;
    double g_eff = 0.0;
};

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

bool echoed_in_files(const std::string& key) { return key != "out" && key != "threads"; }

class Writer {
public:
    Writer(const RunConfig& cfg, std::string hash) : cfg_(cfg), hash_(std::move(hash)) {}

    std::string write(const Table& t)
    {
        const bool csv = cfg_.format == OutputFormat::csv;
        const fs::path path = fs::path(cfg_.out_dir) / (t.name + (csv ? ".csv" : ".json"));
        std::ofstream f(path, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        if (csv)
            write_csv(f, t);
        else
            write_json(f, t);
        f.close();
        if (!f)
            throw std::runtime_error("failed writing " + path.string());
        files_.push_back(path.filename().string());
        return files_.back();
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    void write_csv(std::ostream& f, const Table& t) const
    {
        f << "# nanomag " << kVersion << " experiment=" << to_string(*cfg_.experiment) << '\n';
        f << "# manifest_hash=" << hash_ << '\n';
        for (const auto& [k, v] : resolved_entries(cfg_))
            if (echoed_in_files(k))
                f << "# " << k << '=' << v << '\n';
        for (const auto& note : t.notes)
            f << "# note: " << note << '\n';
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            f << (c ? "," : "") << t.columns[c];
        f << '\n';
        std::string line;
        for (const auto& row : t.rows) {
            line.clear();
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c)
                    line += ',';
                line += format_double(row[c]);
            }
            line += '\n';
            f << line;
        }
    }

    void write_json(std::ostream& f, const Table& t) const
    {
        ojson j;
        j["nanomag_version"] = kVersion;
        j["experiment"] = to_string(*cfg_.experiment);
        j["manifest_hash"] = hash_;
        ojson config = ojson::object();
        for (const auto& [k, v] : resolved_entries(cfg_))
            if (echoed_in_files(k))
                config[k] = v;
        j["config"] = config;
        if (!t.notes.empty())
            j["notes"] = t.notes;
        j["columns"] = t.columns;
        j["rows"] = t.rows;
        f << j.dump(1) << '\n';
    }

    const RunConfig& cfg_;
    std::string hash_;
    std::vector<std::string> files_;
};

Derived derive(const RunConfig& cfg)
{
    Derived d;
    CavityConfig cav = cfg.cavity();
    cav.n_max = 1;
    const MagnonMode kittel = quantize_mode(1, cav);
    d.omega_K = kittel.omega;
    d.Veff = kittel.Veff;
    d.g = coupling_strength(kittel, cfg.emitter());
    if (cfg.Delta_MHz)
        d.g_eff = effective_coupling(d.g, units::MHz_to_omega(*cfg.Delta_MHz));
    else
        d.g_eff = effective_coupling(d.g, cfg.resolved_Delta_over_g() * d.g);
    return d;
}

double time_step(const RunConfig& cfg) { return units::us_to_s(cfg.resolved_t_end_us()) / cfg.resolved_samples(); }

TimeSeries evolve(const RunConfig& cfg)
{
    const MemoryKernel kernel = build_kernel(cfg.emitter(), cfg.cavity());
    const double t_end = units::us_to_s(cfg.resolved_t_end_us());
    const double dt = time_step(cfg);
    return cfg.solver == Solver::volterra ? evolve_volterra(kernel, t_end, dt)
                                          : evolve_pseudomode(kernel, t_end, dt);
}

Table decay_table(const std::string& name, const TimeSeries& s)
{
    Table t{name, {"t_us", "population"}, {}, {}};
    t.rows.reserve(s.times.size());
    for (std::size_t i = 0; i < s.times.size(); ++i)
        t.rows.push_back({units::s_to_us(s.times[i]), s.populations[i]});
    return t;
}

void print_value(std::ostream& out, const std::string& label, double v, const std::string& unit)
{
    out << label << " = " << format_double(v) << (unit.empty() ? "" : " ") << unit << '\n';
}

class Experiments {
public:
    Experiments(const RunConfig& cfg, Writer& writer, std::ostream& out, std::ostream& err, std::string& stage)
        : cfg_(cfg), writer_(writer), out_(out), err_(err), stage_(stage)
    {
    }

    void run()
    {
        switch (*cfg_.experiment) {
        case Experiment::modes: modes(); break;
        case Experiment::spectrum: spectrum(); break;
        case Experiment::fieldmap: fieldmap(); break;
        case Experiment::decay: decay(); break;
        case Experiment::transfer: transfer(); break;
        case Experiment::coupling_sweep: coupling_sweep(); break;
        }
    }

private:
    void modes()
    {
        stage_ = "magnon_modes";
        const CavityConfig cav = cfg_.cavity();
        const EmitterConfig em = cfg_.emitter();
        Table t{"modes",
                {"n", "omega_over_2pi_GHz", "Gamma_rad_per_s", "Veff_mm3", "Hzp_A_per_m", "g_over_2pi_MHz"},
                {},
                {}};
        for (int n = 1; n <= cav.n_max; ++n) {
            const MagnonMode m = quantize_mode(n, cav);
            t.rows.push_back({double(n), units::omega_to_GHz(m.omega), m.Gamma, units::m3_to_mm3(m.Veff), m.Hzp,
                              units::omega_to_MHz(coupling_strength(m, em))});
        }
        stage_ = "output";
        writer_.write(t);
    }

    void spectrum()
    {
        stage_ = "spectral_density";
        const CavityConfig cav = cfg_.cavity();
        const double w1 = mode_frequency(1, cav.fields, cav.material);
        const double w_inf = cav.material.gamma_field() * (cav.fields.H0 + 0.5 * cav.material.Ms);
        const double margin = 0.05 * (w_inf - w1);
        const double lo = cfg_.omega_min_GHz ? units::GHz_to_omega(*cfg_.omega_min_GHz) : w1 - margin;
        const double hi = cfg_.omega_max_GHz ? units::GHz_to_omega(*cfg_.omega_max_GHz) : w_inf + margin;
        if (!(lo < hi))
            throw ConfigError("omega_min_GHz must be below omega_max_GHz");
        const SpectralGrid grid = spectral_scan(linspace(lo, hi, cfg_.omega_points), cfg_.emitter(), cav, cfg_.threads);
        Table t{"spectrum", {"omega_over_2pi_GHz", "J_rad_per_s"}, {}, {}};
        t.rows.reserve(grid.omegas.size());
        for (std::size_t i = 0; i < grid.omegas.size(); ++i)
            t.rows.push_back({units::omega_to_GHz(grid.omegas[i]), grid.values[i]});
        stage_ = "output";
        writer_.write(t);
    }

    void fieldmap()
    {
        stage_ = "spectral_density";
        std::vector<double> H0;
        for (double b : linspace(cfg_.mu0_H0_min_T, cfg_.mu0_H0_max_T, cfg_.H0_points))
            H0.push_back(tesla_to_field(b));
        const std::vector<double> ratios = linspace(cfg_.ratio_min, cfg_.ratio_max, cfg_.ratio_points);
        const FieldSweepMap map = field_sweep_map(H0, ratios, cfg_.emitter(), cfg_.cavity(), cfg_.threads);
        Table t{"fieldmap", {"H0_T", "omega_over_omega_K", "omega_GHz", "J_rad_per_s"}, {}, {FieldSweepMap::kColorScaleNote}};
        t.rows.reserve(H0.size() * ratios.size());
        for (std::size_t i = 0; i < H0.size(); ++i)
            for (std::size_t j = 0; j < ratios.size(); ++j)
                t.rows.push_back({field_to_tesla(H0[i]), ratios[j], units::omega_to_GHz(map.omega(i, j)), map.at(i, j)});
        stage_ = "output";
        writer_.write(t);
    }

    void decay()
    {
        stage_ = "emitter_dynamics";
        if (cfg_.R_list_nm.empty()) {
            const TimeSeries s = evolve(cfg_);
            report_rabi(s, "");
            stage_ = "output";
            writer_.write(decay_table("decay", s));
            return;
        }
        std::vector<TimeSeries> runs(cfg_.R_list_nm.size());
        parallel_for(runs.size(), cfg_.threads, [&](std::size_t i) {
            RunConfig c = cfg_;
            c.R_nm = cfg_.R_list_nm[i];
            runs[i] = evolve(c);
        });
        for (std::size_t i = 0; i < runs.size(); ++i)
            report_rabi(runs[i], " (R = " + format_double(cfg_.R_list_nm[i]) + " nm)");
        stage_ = "output";
        for (std::size_t i = 0; i < runs.size(); ++i)
            writer_.write(decay_table("decay_R" + format_double(cfg_.R_list_nm[i]) + "nm", runs[i]));
    }

    void report_rabi(const TimeSeries& s, const std::string& suffix)
    {
        if (const auto rabi = extract_rabi_frequency(s))
            print_value(out_, "Omega/2pi" + suffix, units::omega_to_MHz(*rabi), "MHz");
        else
            out_ << "Omega/2pi" << suffix << " = none (no oscillation resolved)\n";
    }

    void transfer()
    {
        stage_ = "spin_network";
        const CavityConfig cav = cfg_.cavity();
        const double a = cfg_.emitter_distance();
        double Delta = 0.0;
        if (cfg_.Delta_MHz) {
            Delta = units::MHz_to_omega(*cfg_.Delta_MHz);
        } else {
            CavityConfig k = cav;
            k.n_max = 1;
            const double w_K = kittel_frequency(cav.fields, cav.material);
            const double g = coupling_strength(quantize_mode(1, k), EmitterConfig::equatorial(a, w_K));
            Delta = cfg_.resolved_Delta_over_g() * g;
        }
        TwoEmitterConfig tc = TwoEmitterConfig::antipodal(cav, a, Delta);
        for (auto& e : tc.emitters)
            e.dipole_scale = cfg_.dipole_scale;
        const TransferResult r = transfer_dynamics(tc, units::us_to_s(cfg_.resolved_t_end_us()), time_step(cfg_));
        for (const auto& w : r.warnings)
            err_ << "warning: " << w << '\n';
        print_value(out_, "swap_frequency/2pi", units::omega_to_kHz(r.swap_frequency), "kHz");
        print_value(out_, "g^2/Delta/2pi", units::omega_to_kHz(effective_coupling(r.coupling, Delta)), "kHz");
        print_value(out_, "swap_time", units::s_to_us(r.swap_time), "us");
        print_value(out_, "P2(swap_time)", r.fidelity, "");
        Table t{"transfer", {"t_us", "P1", "P2", "Pb"}, {}, {}};
        t.rows.reserve(r.times.size());
        for (std::size_t i = 0; i < r.times.size(); ++i)
            t.rows.push_back({units::s_to_us(r.times[i]), r.p1[i], r.p2[i], r.pb[i]});
        stage_ = "output";
        writer_.write(t);
    }

    void coupling_sweep()
    {
        stage_ = "spin_network";
        if (cfg_.Delta_MHz)
            throw ConfigError("coupling-sweep takes the detuning as Delta_over_g, not Delta_MHz");
        std::vector<double> radii;
        for (double r : linspace(cfg_.R_min_nm, cfg_.R_max_nm, cfg_.R_points))
            radii.push_back(units::nm_to_m(r));
        const auto rows = coupling_vs_separation_sweep(units::nm_to_m(cfg_.gap_nm), radii,
                                                       cfg_.resolved_Delta_over_g(), cfg_.cavity(), cfg_.threads);
        Table t{"coupling_sweep",
                {"R_nm", "separation_nm", "g_over_2pi_Hz", "g_eff_Hz", "g_dip_Hz", "g_eff_over_g_dip"},
                {},
                {"g_eff_Hz and g_dip_Hz are the couplings divided by 2 pi"}};
        for (const auto& row : rows)
            t.rows.push_back({units::m_to_nm(row.radius), units::m_to_nm(row.separation), units::omega_to_Hz(row.g),
                              units::omega_to_Hz(row.g_eff), units::omega_to_Hz(row.g_dip), row.g_eff / row.g_dip});
        stage_ = "output";
        writer_.write(t);
    }

    const RunConfig& cfg_;
    Writer& writer_;
    std::ostream& out_;
    std::ostream& err_;
    std::string& stage_;
};

void write_error(const std::string& out_dir, const std::string& stage, const std::string& type,
                 const std::string& message, int code, std::ostream& err)
{
    err << "error [" << stage << "]: " << message << '\n';
    ojson j;
    j["stage"] = stage;
    j["error_type"] = type;
    j["message"] = message;
    j["exit_code"] = code;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream f(fs::path(out_dir) / "error.json", std::ios::binary);
    if (f)
        f << j.dump(2) << '\n';
}

int classify(const std::exception& e, std::string& type)
{
    if (dynamic_cast<const ConfigError*>(&e)) {
        type = "config_error";
        return kExitConfig;
    }
    if (dynamic_cast<const std::domain_error*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) {
        type = "domain_error";
        return kExitConfig;
    }
    if (dynamic_cast<const NumericalError*>(&e)) {
        type = "numerical_error";
        return kExitNumerical;
    }
    type = "runtime_error";
    return kExitNumerical;
}

} // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto start = std::chrono::steady_clock::now();
    std::string stage = "setup";
    try {
        if (!cfg.experiment)
            throw ConfigError("missing required key 'experiment'");
        validate(cfg);
        fs::create_directories(cfg.out_dir);
        // A stale error report from a previous failed run would be misleading.
        fs::remove(fs::path(cfg.out_dir) / "error.json");

        const std::string hash = config_hash(cfg);
        stage = "magnon_modes";
        const Derived d = derive(cfg);
        print_value(out, "omega_K/2pi", units::omega_to_GHz(d.omega_K), "GHz");
        print_value(out, "V_eff", units::m3_to_mm3(d.Veff), "mm^3");
        print_value(out, "g/2pi", units::omega_to_MHz(d.g), "MHz");
        print_value(out, "g_eff/2pi", units::omega_to_kHz(d.g_eff), "kHz");

        Writer writer(cfg, hash);
        Experiments(cfg, writer, out, err, stage).run();

        stage = "output";
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        ojson m;
        m["name"] = "nanomag";
        m["version"] = kVersion;
        m["experiment"] = to_string(*cfg.experiment);
        m["manifest_hash"] = hash;
        ojson config = ojson::object();
        for (const auto& [k, v] : resolved_entries(cfg))
            config[k] = v;
        m["config"] = config;
        m["derived"] = {{"omega_K_over_2pi_GHz", units::omega_to_GHz(d.omega_K)},
                        {"Veff_mm3", units::m3_to_mm3(d.Veff)},
                        {"g_over_2pi_MHz", units::omega_to_MHz(d.g)},
                        {"g_eff_over_2pi_kHz", units::omega_to_kHz(d.g_eff)}};
        m["files"] = writer.files();
        m["wall_clock_s"] = wall;
        std::ofstream f(fs::path(cfg.out_dir) / "manifest.json", std::ios::binary);
        f << m.dump(2) << '\n';
        if (!f)
            throw std::runtime_error("failed writing manifest.json");
        out << "manifest_hash = " << hash << '\n';
        return kExitOk;
    } catch (const std::exception& e) {
        std::string type;
        const int code = classify(e, type);
        write_error(cfg.out_dir, stage, type, e.what(), code, err);
        return code;
    }
}

std::string manifest_to_config_text(const std::string& manifest_json)
{
    ojson j;
    try {
        j = ojson::parse(manifest_json);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("manifest is not valid JSON: ") + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object())
        throw ConfigError("manifest has no \"config\" object");
    std::string text;
    for (const auto& [k, v] : j["config"].items()) {
        if (!v.is_string())
            throw ConfigError("manifest config value for " + k + " must be a string");
        text += k + '=' + v.get<std::string>() + '\n';
    }
    return text;
}

int run_command(const std::string& command, const std::string& config_text,
                const std::vector<std::pair<std::string, std::string>>& overrides, std::ostream& out,
                std::ostream& err)
{
    std::string out_dir = ".";
    for (const auto& [k, v] : overrides)
        if (k == "out")
            out_dir = v;
    RunConfig cfg;
    try {
        if (!parse_experiment(command))
            throw ConfigError("unknown command '" + command +
                              "' (expected modes, spectrum, fieldmap, decay, transfer or coupling-sweep)");
        const auto first = config_text.find_first_not_of(" \t\r\n");
        const std::string text =
            first != std::string::npos && config_text[first] == '{' ? manifest_to_config_text(config_text) : config_text;
        auto all = overrides;
        all.emplace_back("experiment", command);
        cfg = parse_config(text, all);
    } catch (const std::exception& e) {
        std::string type;
        const int code = classify(e, type);
        write_error(out_dir, "config", type, e.what(), code, err);
        return code;
    }
    return run(cfg, out, err);
}

} // namespace nanomag
