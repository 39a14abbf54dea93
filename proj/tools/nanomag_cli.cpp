// Command-line front end: nanomag <command> [--config FILE] [--KEY VALUE ...]

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "nanomag/config.hpp"
#include "nanomag/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Nanomagnonic cavity simulations: magnon modes, spectral densities and spin dynamics"};
    app.set_version_flag("--version", nanomag::kVersion);

    std::string command;
    std::string config_path;
    bool list_keys = false;
    app.add_option("command", command, "modes | spectrum | fieldmap | decay | transfer | coupling-sweep");
    app.add_option("--config", config_path, "key=value configuration file, or a manifest.json from an earlier run")
        ->check(CLI::ExistingFile);
    app.add_flag("--list-keys", list_keys, "print every configuration key with its unit and exit");

    // Every configuration key doubles as an override flag.
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> key_options;
    for (const auto& info : nanomag::config_keys()) {
        if (info.key == "experiment")
            continue;
        std::string help = info.description;
        if (!info.unit.empty())
            help += " [" + info.unit + "]";
        key_options.emplace_back(info.key, app.add_option("--" + info.key, values[info.key], help));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // Help and version requests exit cleanly; malformed command lines are configuration errors.
        return app.exit(e) == 0 ? nanomag::kExitOk : nanomag::kExitConfig;
    }

    if (list_keys) {
        for (const auto& info : nanomag::config_keys())
            std::cout << info.key << (info.unit.empty() ? "" : " [" + info.unit + "]") << "  " << info.description
                      << '\n';
        return 0;
    }
    if (command.empty()) {
        std::cerr << app.help();
        return nanomag::kExitConfig;
    }

    std::string text;
    if (!config_path.empty()) {
        std::ifstream f(config_path, std::ios::binary);
        std::ostringstream buf;
        buf << f.rdbuf();
        text = buf.str();
    }

    std::vector<std::pair<std::string, std::string>> overrides;
    for (const auto& [key, opt] : key_options)
        if (opt->count() > 0)
            overrides.emplace_back(key, values[key]);

    return nanomag::run_command(command, text, overrides, std::cout, std::cerr);
}
