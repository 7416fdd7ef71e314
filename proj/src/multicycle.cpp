#include "otto/multicycle.hpp"

#include <cmath>
#include <string>

#include "otto/errors.hpp"
#include "otto/parallel.hpp"
#include "otto/tolerances.hpp"

namespace otto {

DensityOperator dephase_battery(const DensityOperator& joint, double factor) {
    if (joint.dim() != 4) throw DimensionError("dephase_battery: expected a two-qubit state");
    if (!(factor >= 0.0 && factor <= 1.0)) {
        throw ValidationError("dephase_battery: factor must lie in [0, 1] (got " + std::to_string(factor) + ")");
    }
    if (factor == 1.0) return joint;
    ComplexMatrix out = joint.matrix();
    // Battery index is the low bit of |m b>.
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if ((r & 1U) != (c & 1U)) out(r, c) *= factor;
        }
    }
    return DensityOperator::assume_valid(std::move(out));
}

EngineTrace run_engine(const EngineConfig& config, const StageObserver& observer) {
    config.validate();
    const auto hot = prepare_medium_hot(config.p_mx, config.hot_populations);
    const auto cold = prepare_bath_state(config.cold_populations);
    const auto& noise = config.noise;
    auto notify = [&](std::string_view stage, int cycle, const DensityOperator& rho) {
        if (observer) observer(stage, cycle, rho);
    };

    EngineTrace trace;
    trace.config = config;
    trace.records.reserve(static_cast<std::size_t>(config.cycles));

    auto battery = prepare_battery(config.battery_init);
    std::optional<DensityOperator> joint;
    double cumulative = 0.0;
    for (int n = 1; n <= config.cycles; ++n) {
        auto state = joint ? reset_medium(*joint, hot)
                           : DensityOperator::assume_valid(kron(hot.matrix(), battery.matrix()));
        notify("hot_reset", n, state);
        state = dephase_battery(state, noise.battery_dephasing_per_reset);
        notify("hot_dephasing", n, state);
        const auto expanded = power_stroke(state, config.theta);
        notify("expansion", n, expanded);
        state = reset_medium(expanded, cold);
        notify("cold_reset", n, state);
        state = dephase_battery(state, noise.battery_dephasing_per_reset);
        notify("cold_dephasing", n, state);
        state = power_stroke(state, config.compression_angle());
        notify("compression", n, state);
        state = dephase_battery(state, noise.battery_t2_per_cycle);
        notify("t2_dephasing", n, state);

        auto record = make_record(n, battery, expanded, state, config, cumulative);
        cumulative = record.cumulative_work;
        trace.records.push_back(std::move(record));
        battery = DensityOperator::assume_valid(partial_trace(state.matrix(), Subsystem::battery));
        joint = std::move(state);
    }
    trace.final_joint = *joint;
    return trace;
}

std::optional<AdvantagePoint> Comparison::peak() const {
    std::optional<AdvantagePoint> best;
    for (const auto& point : advantage) {
        if (point.ratio && (!best || *point.ratio > *best->ratio)) best = point;
    }
    return best;
}

Comparison compare_coherent_incoherent(const EngineConfig& config) {
    Comparison out;
    out.coherent = run_engine(config);
    auto classical = config;
    classical.p_mx = 0.0;
    out.incoherent = run_engine(classical);

    out.advantage.reserve(out.coherent.records.size());
    for (std::size_t i = 0; i < out.coherent.records.size(); ++i) {
        AdvantagePoint p;
        p.cycle_index = out.coherent.records[i].cycle_index;
        p.work_coherent = out.coherent.records[i].cumulative_work;
        p.work_incoherent = out.incoherent.records[i].cumulative_work;
        if (p.work_incoherent > tol::kRatioFloor) {
            p.ratio = (p.work_coherent - p.work_incoherent) / p.work_incoherent;
        }
        out.advantage.push_back(p);
    }
    return out;
}

const std::vector<std::string>& sweepable_fields() {
    static const std::vector<std::string> names{
        "theta",      "theta_compression", "p_mx",    "battery_px", "battery_py",
        "battery_pz", "battery_dephasing_per_reset", "battery_t2_per_cycle", "hot_p0",
        "cold_p0",    "cycles",            "omega_m", "omega_b"};
    return names;
}

void set_field(EngineConfig& config, std::string_view field, double value) {
    if (field == "theta") {
        config.theta = value;
    } else if (field == "theta_compression") {
        config.theta_compression = value;
    } else if (field == "p_mx") {
        config.p_mx = value;
    } else if (field == "battery_px") {
        config.battery_init.px = value;
    } else if (field == "battery_py") {
        config.battery_init.py = value;
    } else if (field == "battery_pz") {
        config.battery_init.pz = value;
    } else if (field == "battery_dephasing_per_reset") {
        config.noise.battery_dephasing_per_reset = value;
    } else if (field == "battery_t2_per_cycle") {
        config.noise.battery_t2_per_cycle = value;
    } else if (field == "hot_p0") {
        config.hot_populations = {value, 1.0 - value};
    } else if (field == "cold_p0") {
        config.cold_populations = {value, 1.0 - value};
    } else if (field == "cycles") {
        if (value != std::floor(value) || value < 1.0 || value > 1e6) {
            throw ConfigError("cycles must be a positive integer (got " + std::to_string(value) + ")");
        }
        config.cycles = static_cast<int>(value);
    } else if (field == "omega_m") {
        config.omega_m = value;
    } else if (field == "omega_b") {
        config.omega_b = value;
    } else {
        throw ConfigError("unknown sweep field '" + std::string(field) + "'");
    }
}

std::vector<EngineTrace> sweep(const EngineConfig& base, std::string_view field, const std::vector<double>& values,
                               unsigned workers) {
    std::vector<EngineConfig> configs(values.size(), base);
    for (std::size_t i = 0; i < values.size(); ++i) set_field(configs[i], field, values[i]);
    return parallel_map(values.size(), workers, [&](std::size_t i) { return run_engine(configs[i]); });
}

}  // namespace otto
