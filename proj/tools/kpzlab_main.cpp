#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "kpzlab/errors.hpp"

namespace {

const char* summary(const std::string& name) {
    if (name == "env") return "sample a random environment";
    if (name == "lpp") return "last passage, first passage and multi-point values";
    if (name == "melon") return "melon transform of a line environment";
    if (name == "geodesic") return "leftmost or rightmost geodesic, optionally rescaled";
    if (name == "scale") return "scaling parameter table and rescaled values";
    if (name == "lis") return "longest increasing subsequences";
    if (name == "tasep") return "tasep height functions";
    if (name == "stats") return "Monte Carlo statistics";
    if (name == "verify") return "randomized invariant checks";
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace kpzlab::cli;

    CLI::App app{"kpzlab: directed landscape and last passage toolkit"};
    app.set_version_flag("--version", std::string("kpzlab ") + KPZLAB_VERSION);
    app.require_subcommand(1);

    struct sub_args {
        std::string config;
        std::vector<std::string> args;
        int threads = -1;
        std::string output, format;
    };
    std::vector<sub_args> parsed(command_names().size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < command_names().size(); ++i) {
        auto* sub = app.add_subcommand(command_names()[i], summary(command_names()[i]));
        sub->add_option("-c,--config", parsed[i].config, "key=value config file");
        sub->add_option("-t,--threads", parsed[i].threads, "worker threads (0 = hardware)");
        sub->add_option("-o,--output", parsed[i].output, "output file (default stdout)");
        sub->add_option("-f,--format", parsed[i].format, "csv or json");
        sub->add_option("args", parsed[i].args, "key=value overrides, a config file, or an action word");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (!subs[i]->parsed()) continue;
        const auto& a = parsed[i];
        const std::string& name = command_names()[i];
        try {
            run_config cfg;
            if (!a.config.empty()) cfg = load_config(a.config);
            for (const auto& arg : a.args) {
                if (arg.find('=') != std::string::npos) {
                    apply_override(cfg, arg);
                } else if (std::filesystem::is_regular_file(arg)) {
                    const run_config file = load_config(arg);
                    for (const auto& [k, v] : file.values()) cfg.set(k, v);
                } else {
                    cfg.set("action", arg);
                }
            }
            if (a.threads >= 0) cfg.set("threads", std::to_string(a.threads));
            if (!a.output.empty()) cfg.set("output", a.output);
            if (!a.format.empty()) cfg.set("format", a.format);
            return run_command(name, cfg, std::cout, std::cerr);
        } catch (const kpzlab::invariant_violation& e) {
            std::cerr << "kpzlab " << name << ": " << e.what() << '\n';
            return 1;
        } catch (const kpzlab::contract_violation& e) {
            std::cerr << "kpzlab " << name << ": " << e.what() << '\n';
            return 1;
        } catch (const kpzlab::error& e) {
            std::cerr << "kpzlab " << name << ": " << e.what() << '\n';
            return 2;
        } catch (const config_error& e) {
            std::cerr << "kpzlab " << name << ": " << e.what() << '\n';
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "kpzlab " << name << ": unexpected failure: " << e.what() << '\n';
            return 2;
        }
    }
    return 2;
}
