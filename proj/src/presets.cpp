#include <algorithm>
#include <string>
#include <utility>

#include "otto/errors.hpp"
#include "otto/scenario.hpp"

namespace otto {

namespace {

// Qualitative presets: illustrative parameters, not fits to measured data.
const std::pair<std::string, std::string> kPresets[] = {
    {"fig2", R"(schema_version = 1
scenario = single-cycle-sweep

# Closed-form regime: maximally mixed hot bath, pure cold bath.
[engine]
hot_populations = 0.5, 0.5
cold_populations = 1, 0
battery_init = 0, 0, 0
cycles = 1

[sweep]
field = theta
values = 0:1.5707963267948966:33

[variants]
p_mx = 0, 0.5
battery_py = 0, 0.5

[output]
prefix = fig2
)"},
    {"fig2c", R"(schema_version = 1
scenario = single-cycle-sweep

# Battery coherence generated by the strokes from a classical, partly
# discharged battery.
[engine]
hot_populations = 0.5, 0.5
cold_populations = 1, 0
battery_init = 0, 0, -0.25
cycles = 1

[sweep]
field = theta
values = 0:1.5707963267948966:33

[variants]
p_mx = 0, 0.5

[output]
prefix = fig2c
)"},
    {"fig3", R"(schema_version = 1
scenario = compare

[engine]
theta = 0.22
p_mx = 0.49
hot_populations = 0.515, 0.485
cold_populations = 0.97, 0.03
battery_init = 0, 0, -0.5
cycles = 20

[noise]
battery_dephasing_per_reset = 1
battery_t2_per_cycle = 0.95

[output]
prefix = fig3
)"},
    {"fig3-optical", R"(schema_version = 1
scenario = compare

# Merged-role variant: both resets are the optical pump to (0.97, 0.03);
# the hot preparation additionally rotates that Bloch vector until its
# population imbalance matches (0.515, 0.485), which fixes p_mx.
[engine]
theta = 0.22
p_mx = 0.4697605773157215
hot_populations = 0.515, 0.485
cold_populations = 0.97, 0.03
battery_init = 0, 0, -0.5
cycles = 20

[noise]
battery_dephasing_per_reset = 1
battery_t2_per_cycle = 0.95

[output]
prefix = fig3_optical
)"},
    {"advantage-search", R"(schema_version = 1
scenario = search-advantage

[engine]
hot_populations = 0.5, 0.5
cold_populations = 1, 0
battery_init = 0, 0.1, -0.4
cycles = 10

[search]
theta = 0.07479982508547127:1.4959965017094252:20
p_mx = 0.025:0.5:20

[output]
prefix = advantage
)"},
    {"validate", R"(schema_version = 1
scenario = validate
)"},
};

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, text] : kPresets) out.push_back(name);
        return out;
    }();
    return names;
}

std::string_view preset_source(std::string_view name) {
    const auto* it = std::find_if(std::begin(kPresets), std::end(kPresets),
                                  [&](const auto& entry) { return entry.first == name; });
    if (it == std::end(kPresets)) throw ConfigError("unknown preset '" + std::string(name) + "'");
    return it->second;
}

Scenario preset(std::string_view name) {
    return parse_scenario(preset_source(name), "preset:" + std::string(name));
}

}  // namespace otto
