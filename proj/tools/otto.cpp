// otto: command-line front end for the two-qubit Otto engine simulator.
//
//   otto run <scenario.cfg> | --preset NAME   [--output-dir DIR] [--workers N]
//                                            [--format csv|json|both] [--timing]
//   otto search <scenario.cfg> | --preset NAME
//   otto validate
//   otto preset [NAME]
//
// Exit codes: 0 success, 1 validation or numerical failure, 2 usage or parse error.

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "otto/errors.hpp"
#include "otto/runner.hpp"
#include "otto/scenario.hpp"
#include "otto/validate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Common {
    std::string file;
    std::string preset;
    std::string output_dir = ".";
    unsigned workers = 1;
    std::string format;
    std::uint64_t seed = 0;
    bool timing = false;
};

void add_run_options(CLI::App* cmd, Common& c) {
    cmd->add_option("scenario", c.file, "Scenario file");
    cmd->add_option("--preset", c.preset, "Built-in scenario instead of a file");
    cmd->add_option("--output-dir", c.output_dir, "Directory for CSV/JSON outputs");
    cmd->add_option("--workers", c.workers, "Concurrent sweep/grid evaluations (0 = all cores)");
    cmd->add_option("--format", c.format, "Override the output format")->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--seed", c.seed, "Reserved; all computation is deterministic");
    cmd->add_flag("--timing", c.timing, "Record wall-clock runtime in the JSON summary");
}

otto::Scenario resolve(const Common& c) {
    if (c.file.empty() == c.preset.empty()) {
        throw otto::ConfigError("give exactly one of a scenario file or --preset");
    }
    return c.preset.empty() ? otto::load_scenario(c.file) : otto::preset(c.preset);
}

int execute(const otto::Scenario& s, const Common& c) {
    otto::RunOptions options;
    options.output_dir = c.output_dir;
    options.workers = c.workers == 0 ? std::max(1U, std::thread::hardware_concurrency()) : c.workers;
    options.format = otto::parse_output_format(c.format);
    options.timing = c.timing;
    const auto result = otto::run_scenario(s, options, std::cout);
    for (const auto& f : result.files) std::cout << "wrote " << f.string() << '\n';
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-qubit quantum Otto engine simulator"};
    app.require_subcommand(1);

    Common run_args;
    auto* run = app.add_subcommand("run", "Run a scenario file or preset");
    add_run_options(run, run_args);

    Common search_args;
    auto* search = app.add_subcommand("search", "Grid-search the coherent work advantage");
    add_run_options(search, search_args);

    auto* validate = app.add_subcommand("validate", "Run the oracle and invariant suite");

    std::string preset_name;
    auto* show = app.add_subcommand("preset", "Print a built-in scenario, or list them");
    show->add_option("name", preset_name, "Preset name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (run->parsed()) return execute(resolve(run_args), run_args);
        if (search->parsed()) {
            const auto s = resolve(search_args);
            if (s.kind != otto::ScenarioKind::search_advantage) {
                throw otto::ConfigError("search needs a search-advantage scenario");
            }
            return execute(s, search_args);
        }
        if (validate->parsed()) {
            return otto::print_validation_table(std::cout, otto::run_validation_suite()) ? kOk : kFailure;
        }
        if (show->parsed()) {
            if (preset_name.empty()) {
                for (const auto& name : otto::preset_names()) std::cout << name << '\n';
            } else {
                std::cout << otto::preset_source(preset_name);
            }
            return kOk;
        }
    } catch (const otto::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const otto::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailure;
    }
    return kOk;
}
