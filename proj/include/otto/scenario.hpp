#pragma once

// Scenario files: INI-style text with strict key checking. Comments are
// whole lines starting with ';' or '#'.
//
//   schema_version = 1
//   ; single-cycle-sweep | multicycle | compare | validate | search-advantage
//   scenario = compare
//
//   [engine]
//   theta = 0.21
//   p_mx = 0.49
//   hot_populations = 0.515, 0.485
//   cold_populations = 0.97, 0.03
//   ; (P^x, P^y, P^z)
//   battery_init = 0, 0, -0.5
//   cycles = 20
//   ; also theta_compression, omega_m, omega_b
//
//   [noise]
//   battery_dephasing_per_reset = 1
//   battery_t2_per_cycle = 0.95
//
//   ; single-cycle-sweep only
//   [sweep]
//   field = theta
//   values = 0:1.5707963267948966:33
//
//   ; optional; cartesian product of the axes, one output series each
//   [variants]
//   p_mx = 0, 0.49
//
//   ; search-advantage only; one grid axis per key
//   [search]
//   theta = 0.05:1.5:30
//
//   [output]
//   prefix = fig3
//   ; csv | json | both
//   format = both
//
// Value lists are either comma separated or "lo:hi:n" (n evenly spaced
// points, endpoints included). Sweep, variant and search axes accept any
// name from sweepable_fields().

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otto/engine.hpp"

namespace otto {

enum class ScenarioKind { single_cycle_sweep, multicycle, compare, validate, search_advantage };
enum class OutputFormat { csv, json, both };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);

struct Axis {
    std::string field;
    std::vector<double> values;

    bool operator==(const Axis&) const = default;
};

struct OutputSpec {
    std::string prefix = "otto";
    OutputFormat format = OutputFormat::both;

    bool operator==(const OutputSpec&) const = default;
};

struct Scenario {
    std::string schema_version = "1";
    ScenarioKind kind = ScenarioKind::multicycle;
    EngineConfig engine{};
    std::optional<Axis> sweep;
    std::vector<Axis> variants;
    std::vector<Axis> search;
    OutputSpec output{};

    bool operator==(const Scenario&) const = default;
};

// Parse errors and unknown keys raise ConfigError ("<source>:<line>: ...");
// engine invariants raise ValidationError.
Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

// Inverse of parse_scenario; numbers carry 17 significant digits.
std::string format_scenario(const Scenario& scenario);

// Expands "lo:hi:n" or "a, b, c".
std::vector<double> parse_value_list(std::string_view text);

const std::vector<std::string>& preset_names();
// Both throw ConfigError for unknown names.
Scenario preset(std::string_view name);
std::string_view preset_source(std::string_view name);

}  // namespace otto
