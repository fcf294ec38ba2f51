#include "phaseflow/scenario.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"phase-space scenario runner (hbar = m = 1)"};
    app.set_version_flag("--version", std::string("phaseflow ") + phaseflow::artifact_version);
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "run a scenario config and write CSV files plus manifest.json");
    run->add_option("config", config_path, "scenario config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory (default: the config's \"output\" field)");

    bool as_json = false;
    auto* list = app.add_subcommand("list", "list scenarios, their parameters and regime gates");
    list->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    if (*list) {
        if (as_json)
            std::cout << phaseflow::catalog_json().dump(2) << '\n';
        else
            std::cout << phaseflow::catalog_table();
        return 0;
    }

    try {
        std::ifstream in(config_path);
        if (!in) {
            std::cerr << "error: cannot open config " << config_path << '\n';
            return 2;
        }
        const auto config = phaseflow::Json::parse(in);
        if (out_dir.empty()) {
            if (config.is_object() && config.contains("output") && config["output"].is_string())
                out_dir = config["output"].get<std::string>();
            else {
                std::cerr << "error: no output directory (use --out)\n";
                return 2;
            }
        }
        const auto manifest = phaseflow::run_scenario(config, out_dir);
        for (const auto& w : manifest["warnings"])
            std::cerr << "warning: " << w.get<std::string>() << '\n';
        std::cout << "wrote " << manifest["files"].size() << " files and manifest.json to " << out_dir << '\n';
        return 0;
    } catch (const std::exception& e) {
        const int code = phaseflow::exit_code_for(e);
        std::cerr << "error: " << e.what() << '\n';
        return code;
    }
}
