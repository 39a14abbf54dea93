#pragma once

// Batch experiment runner behind the `nanomag` command-line tool.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nanomag/config.hpp"

namespace nanomag {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

/// Runs one experiment, writing data files, manifest.json and (on failure)
/// error.json into cfg.out_dir. Headline numbers go to `out`, diagnostics to
/// `err`. Returns one of ExitCode.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full pipeline for the command-line tool: parses `config_text` (key=value
/// lines or a previously written manifest.json), applies overrides, sets the
/// experiment from `command` and runs it. Configuration errors are reported
/// in error.json with stage "config" when an output directory is known.
int run_command(const std::string& command, const std::string& config_text,
                const std::vector<std::pair<std::string, std::string>>& overrides, std::ostream& out,
                std::ostream& err);

/// Converts the "config" object of a manifest into key=value text.
std::string manifest_to_config_text(const std::string& manifest_json);

} // namespace nanomag
