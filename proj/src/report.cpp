#include "otto/report.hpp"

#include <charconv>
#include <ostream>
#include <set>

#include "otto/errors.hpp"

namespace otto {

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> columns{
        "cycle_index",    "cycle_work",         "cumulative_work",       "p_bx",        "p_by",
        "p_bz",           "ergotropy_total",    "ergotropy_coherent",    "rel_entropy_coherence",
        "concurrence",    "sm_x",               "sm_y",                  "sm_z",        "sb_x",
        "sb_y",           "sb_z",               "sxx",                   "syy",         "szz"};
    return columns;
}

std::string csv_header(std::optional<std::string_view> lead) {
    std::string out = lead ? std::string(*lead) + "," : std::string{};
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i > 0) out += ',';
        out += cols[i];
    }
    return out;
}

void write_record_row(std::ostream& out, const CycleRecord& r, std::optional<double> lead) {
    if (lead) out << format_number(*lead) << ',';
    out << r.cycle_index;
    const auto& p = r.battery_polarization;
    const auto& c = r.correlators;
    for (double v : {r.cycle_work, r.cumulative_work, p.px, p.py, p.pz, r.ergotropy.total, r.ergotropy.coherent,
                     r.coherence_rel_entropy, r.concurrence_post_stroke}) {
        out << ',' << format_number(v);
    }
    for (const auto* group : {&c.medium, &c.battery, &c.joint}) {
        for (double v : *group) out << ',' << format_number(v);
    }
    out << '\n';
}

void write_trace_csv(std::ostream& out, const EngineTrace& trace) {
    out << csv_header() << '\n';
    for (const auto& r : trace.records) write_record_row(out, r);
}

void write_sweep_csv(std::ostream& out, std::string_view field, const std::vector<double>& values,
                     const std::vector<EngineTrace>& traces) {
    out << csv_header(field) << '\n';
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (const auto& r : traces[i].records) write_record_row(out, r, values[i]);
    }
}

void write_advantage_csv(std::ostream& out, const Comparison& comparison) {
    out << "cycle_index,work_coherent,work_incoherent,advantage\n";
    for (const auto& a : comparison.advantage) {
        out << a.cycle_index << ',' << format_number(a.work_coherent) << ',' << format_number(a.work_incoherent) << ',';
        if (a.ratio) out << format_number(*a.ratio);
        out << '\n';
    }
}

nlohmann::ordered_json config_to_json(const EngineConfig& c) {
    nlohmann::ordered_json j;
    j["omega_m"] = c.omega_m;
    j["omega_b"] = c.omega_b;
    j["theta"] = c.theta;
    j["theta_compression"] = c.theta_compression ? nlohmann::ordered_json(*c.theta_compression) : nullptr;
    j["p_mx"] = c.p_mx;
    j["hot_populations"] = {c.hot_populations.p0, c.hot_populations.p1};
    j["cold_populations"] = {c.cold_populations.p0, c.cold_populations.p1};
    j["battery_init"] = {c.battery_init.px, c.battery_init.py, c.battery_init.pz};
    j["noise"] = {{"battery_dephasing_per_reset", c.noise.battery_dephasing_per_reset},
                  {"battery_t2_per_cycle", c.noise.battery_t2_per_cycle}};
    j["cycles"] = c.cycles;
    return j;
}

namespace {

template <std::size_t N>
std::array<double, N> fixed_array(const nlohmann::json& j, const char* key) {
    if (!j.is_array() || j.size() != N) {
        throw ConfigError(std::string("config: '") + key + "' must be an array of " + std::to_string(N) + " numbers");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = j[i].get<double>();
    return out;
}

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

}  // namespace

EngineConfig config_from_json(const nlohmann::json& j) {
    reject_unknown(j,
                   {"omega_m", "omega_b", "theta", "theta_compression", "p_mx", "hot_populations",
                    "cold_populations", "battery_init", "noise", "cycles"},
                   "config");
    EngineConfig c;
    try {
        if (j.contains("omega_m")) c.omega_m = j["omega_m"].get<double>();
        if (j.contains("omega_b")) c.omega_b = j["omega_b"].get<double>();
        if (j.contains("theta")) c.theta = j["theta"].get<double>();
        if (j.contains("theta_compression") && !j["theta_compression"].is_null()) {
            c.theta_compression = j["theta_compression"].get<double>();
        }
        if (j.contains("p_mx")) c.p_mx = j["p_mx"].get<double>();
        if (j.contains("hot_populations")) {
            const auto p = fixed_array<2>(j["hot_populations"], "hot_populations");
            c.hot_populations = {p[0], p[1]};
        }
        if (j.contains("cold_populations")) {
            const auto p = fixed_array<2>(j["cold_populations"], "cold_populations");
            c.cold_populations = {p[0], p[1]};
        }
        if (j.contains("battery_init")) {
            const auto p = fixed_array<3>(j["battery_init"], "battery_init");
            c.battery_init = {p[0], p[1], p[2]};
        }
        if (j.contains("noise")) {
            const auto& n = j["noise"];
            reject_unknown(n, {"battery_dephasing_per_reset", "battery_t2_per_cycle"}, "config.noise");
            if (n.contains("battery_dephasing_per_reset")) {
                c.noise.battery_dephasing_per_reset = n["battery_dephasing_per_reset"].get<double>();
            }
            if (n.contains("battery_t2_per_cycle")) c.noise.battery_t2_per_cycle = n["battery_t2_per_cycle"].get<double>();
        }
        if (j.contains("cycles")) {
            if (!j["cycles"].is_number_integer()) throw ConfigError("config: 'cycles' must be an integer");
            c.cycles = j["cycles"].get<int>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    c.validate();
    return c;
}

nlohmann::ordered_json peak_to_json(const std::optional<AdvantagePoint>& peak) {
    if (!peak) return {{"cycle", nullptr}, {"ratio", nullptr}};
    return {{"cycle", peak->cycle_index}, {"ratio", *peak->ratio}};
}

}  // namespace otto
