#pragma once

// Run configuration for the batch front end.
//
// A configuration is a list of `key=value` lines ('#' starts a comment).
// Every physical quantity is given in the unit it is usually quoted in:
// tesla for mu0*H, nanometres for lengths, GHz/MHz for frequencies,
// microseconds for times. Unknown keys are rejected. Command-line overrides
// use the same keys and take precedence over file values.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nanomag/modes.hpp"

namespace nanomag {

enum class Experiment { modes, spectrum, fieldmap, decay, transfer, coupling_sweep };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

enum class Solver { pseudomode, volterra };
enum class OutputFormat { csv, json };

struct RunConfig {
    std::optional<Experiment> experiment;

    double R_nm = 30.0;
    std::optional<double> mu0_H0_T;
    std::optional<double> mu0_He_T;
    double mu0_Ms_T = 0.178;
    double gamma_GHz_per_T = 28.0;
    std::optional<double> Gamma_Mrad_per_s;
    std::optional<double> Gamma_MHz;
    std::optional<double> alpha;

    std::optional<double> a_nm;
    std::optional<double> a_over_R;
    double emitter_theta_deg = 90.0;
    double emitter_phi_deg = 0.0;
    double dipole_scale = 1.0;
    std::optional<double> omega0_GHz;
    std::optional<int> n_max;

    std::optional<double> Delta_over_g;
    std::optional<double> Delta_MHz;
    double gap_nm = 6.0;
    double R_min_nm = 10.0;
    double R_max_nm = 100.0;
    int R_points = 91;
    std::vector<double> R_list_nm;

    Solver solver = Solver::pseudomode;
    std::optional<double> t_end_us;
    std::optional<int> samples;

    std::optional<double> omega_min_GHz;
    std::optional<double> omega_max_GHz;
    int omega_points = 20001;

    double mu0_H0_min_T = 0.1;
    double mu0_H0_max_T = 1.0;
    int H0_points = 46;
    double ratio_min = 0.95;
    double ratio_max = 1.25;
    int ratio_points = 3001;

    std::string out_dir = ".";
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 0;

    // Resolved physical objects (valid after validate_and_resolve()).
    MaterialParams material() const;
    CavityConfig cavity() const;
    EmitterConfig emitter() const;
    double emitter_distance() const;

    int resolved_n_max() const;
    double resolved_t_end_us() const;
    int resolved_samples() const;
    double resolved_Delta_over_g() const;
};

struct ConfigKeyInfo {
    std::string key;
    std::string unit;
    std::string description;
};

/// All recognised keys with units and a short description, in display order.
const std::vector<ConfigKeyInfo>& config_keys();

/// Parses `text`, then applies `overrides` (key, value) on top. Throws
/// ConfigError naming the key and line for unknown keys, unparsable values,
/// out-of-range values or a missing experiment.
RunConfig parse_config(std::string_view text,
                       const std::vector<std::pair<std::string, std::string>>& overrides = {});

/// Checks cross-key constraints and physical validity. Throws ConfigError.
void validate(const RunConfig& cfg);

/// Resolved configuration as ordered key/value strings, experiment defaults
/// filled in. Feeding these back through parse_config reproduces cfg.
std::vector<std::pair<std::string, std::string>> resolved_entries(const RunConfig& cfg);

/// Stable 64-bit FNV-1a hash of resolved_entries, excluding output location
/// and thread count, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

} // namespace nanomag
