// mrb — command-line front end for the matter-radiation integrability toolkit.

#include "mrbethe/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

using namespace mrbethe;

int main(int argc, char** argv) {
    CLI::App app{"Integrable matter-radiation models: spectra, Bethe ansatz, "
                 "Yang-Baxter verification, Rabi dynamics"};
    app.require_subcommand(1);

    // Every flag lands in a string map; the config file is applied first and
    // flags override it through the same parser.
    std::map<std::string, std::string> flags;
    std::string config_path;

    const std::pair<const char*, const char*> options[] = {
        {"--model", "model"},       {"--na", "na"},
        {"--spin", "spin"},         {"--omega-f", "omega_f"},
        {"--alpha", "alpha"},       {"--delta", "delta"},
        {"--omega-a", "omega_a"},   {"--c-params", "raw_c"},
        {"--cutoff", "cutoff"},     {"--sectors", "sectors"},
        {"--q", "q"},               {"--t-max", "t_max"},
        {"--steps", "steps"},       {"--out", "out"},
        {"--seed", "seed"},         {"--delta-min", "delta_min"},
        {"--delta-max", "delta_max"}, {"--delta-steps", "delta_steps"},
    };

    for (const char* name : {"spectrum", "bethe", "rabi", "verify", "sweep", "compare"}) {
        CLI::App* sub = app.add_subcommand(name);
        for (const auto& [flag, key] : options) {
            const std::string key_copy = key;
            sub->add_option_function<std::string>(
                flag, [&flags, key_copy](const std::string& v) { flags[key_copy] = v; });
        }
        sub->add_option("--config", config_path, "config file (key = value)");
    }

    CLI11_PARSE(app, argc, argv);

    cli::RunConfig cfg;
    try {
        if (!config_path.empty()) cli::apply_entries(cfg, cli::parse_config_file(config_path));
        cli::apply_entries(cfg, flags);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cli::kExitConfig;
    }

    const std::string sub_name = app.get_subcommands().front()->get_name();
    return cli::run_command(sub_name, cfg);
}
