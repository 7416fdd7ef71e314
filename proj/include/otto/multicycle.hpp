#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "otto/engine.hpp"

namespace otto {

struct EngineTrace {
    EngineConfig config;
    std::vector<CycleRecord> records;  // one per cycle, in order
    DensityOperator final_joint = DensityOperator::assume_valid(ComplexMatrix::identity(4) * 0.25);
};

// Multiplies every element connecting different battery sigma^z levels by
// `factor` (phase-flip channel with p = (1 - factor) / 2).
DensityOperator dephase_battery(const DensityOperator& joint, double factor);

// Called with a stage label and the joint state after every stage of every
// cycle; used by validity checks.
using StageObserver = std::function<void(std::string_view stage, int cycle, const DensityOperator& joint)>;

// Per cycle: hot reset -> per-reset dephasing -> expansion stroke -> cold
// reset -> per-reset dephasing -> compression stroke -> per-cycle dephasing.
EngineTrace run_engine(const EngineConfig& config, const StageObserver& observer = {});

struct AdvantagePoint {
    int cycle_index = 1;
    double work_coherent = 0.0;    // cumulative work after this cycle
    double work_incoherent = 0.0;
    // (W_coh - W_incoh) / W_incoh; empty when W_incoh <= kRatioFloor.
    std::optional<double> ratio;
};

struct Comparison {
    EngineTrace coherent;
    EngineTrace incoherent;  // same config with p_mx = 0
    std::vector<AdvantagePoint> advantage;

    // Largest defined ratio and its cycle (first occurrence); empty when no
    // ratio is defined.
    std::optional<AdvantagePoint> peak() const;
};

Comparison compare_coherent_incoherent(const EngineConfig& config);

// Names accepted by set_field / sweep.
const std::vector<std::string>& sweepable_fields();

// Assigns a scalar field by name (battery_px/py/pz address single
// components). Throws ConfigError for unknown names.
void set_field(EngineConfig& config, std::string_view field, double value);

// Independent run per value; results follow the order of `values`. Points are
// evaluated on up to `workers` threads.
std::vector<EngineTrace> sweep(const EngineConfig& base, std::string_view field, const std::vector<double>& values,
                               unsigned workers = 1);

}  // namespace otto
