#include "fracwave/errors.hpp"
#include "fracwave/run_config.hpp"
#include "fracwave/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

namespace {

void print_error_json(const std::string& msg, const std::string& field) {
    nlohmann::json j;
    j["error"] = msg;
    if (!field.empty()) j["field"] = field;
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fracwave: fractional diffusion-wave kernels, solvers and distributions"};
    app.set_version_flag("--version", FRACWAVE_VERSION_STRING);
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    int threads = 1;

    const std::vector<std::string> commands = {"aux", "ivp", "ibvp", "pdf", "verify", "figures"};
    for (const std::string& name : commands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON run configuration")
            ->required(name != "verify");
        sub->add_option("--out", out_path, "output path (overrides config output_path)");
        sub->add_option("--threads", threads, "grid evaluation workers")->check(CLI::Range(1, 256));
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    nlohmann::json j;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            print_error_json("cannot open config file: " + config_path, "");
            return 2;
        }
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            print_error_json(std::string("config is not valid JSON: ") + e.what(), "");
            return 2;
        }
    } else {
        j = {{"version", 1}, {"command", command}};
    }

    try {
        if (j.value("command", command) != command) {
            print_error_json("config command '" + j.value("command", "") +
                                 "' does not match the subcommand '" + command + "'",
                             "command");
            return 2;
        }
        const fracwave::RunConfig cfg = fracwave::parse_config(j);
        const fracwave::RunResult result = fracwave::run(cfg, out_path, threads, std::cout);
        for (const std::string& f : result.files) std::cout << "wrote " << f << "\n";
        return result.ok ? 0 : 1;
    } catch (const fracwave::ConfigError& e) {
        print_error_json(e.what(), e.field());
        return 2;
    } catch (const std::exception& e) {
        print_error_json(e.what(), "");
        return 1;
    }
}
