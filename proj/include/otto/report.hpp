#pragma once

// CSV and JSON serialization of engine results.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "otto/multicycle.hpp"

namespace otto {

// 17 significant digits, so every double round-trips.
std::string format_number(double value);

// Per-record columns, in file order.
const std::vector<std::string>& record_columns();

// record_columns(), optionally preceded by the swept field name.
std::string csv_header(std::optional<std::string_view> lead = std::nullopt);

void write_record_row(std::ostream& out, const CycleRecord& record, std::optional<double> lead = std::nullopt);

// One row per cycle.
void write_trace_csv(std::ostream& out, const EngineTrace& trace);

// One row per (value, cycle), the value in the leading column.
void write_sweep_csv(std::ostream& out, std::string_view field, const std::vector<double>& values,
                     const std::vector<EngineTrace>& traces);

// cycle_index, work_coherent, work_incoherent, advantage (empty when undefined).
void write_advantage_csv(std::ostream& out, const Comparison& comparison);

nlohmann::ordered_json config_to_json(const EngineConfig& config);
// Missing keys keep their defaults; unknown keys raise ConfigError.
EngineConfig config_from_json(const nlohmann::json& j);

nlohmann::ordered_json peak_to_json(const std::optional<AdvantagePoint>& peak);

}  // namespace otto
