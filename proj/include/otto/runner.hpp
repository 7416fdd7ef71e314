#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "otto/scenario.hpp"

namespace otto {

struct RunOptions {
    std::filesystem::path output_dir = ".";
    unsigned workers = 1;
    std::optional<OutputFormat> format;  // overrides the scenario's [output] format
    bool timing = false;                 // add wall-clock runtime to the JSON summary
};

struct RunResult {
    int exit_code = 0;  // 0 success, 1 validation failure
    std::vector<std::filesystem::path> files;
};

// Runs the scenario and writes its CSV/JSON artifacts under
// options.output_dir, named after the output prefix. Progress and tables go
// to `log`. Engine validation errors propagate as ValidationError; I/O
// failures as std::runtime_error.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options, std::ostream& log);

}  // namespace otto
