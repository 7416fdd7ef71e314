#include "otto/runner.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "otto/errors.hpp"
#include "otto/multicycle.hpp"
#include "otto/parallel.hpp"
#include "otto/report.hpp"
#include "otto/search.hpp"
#include "otto/validate.hpp"

namespace otto {

namespace {

using json = nlohmann::ordered_json;

class Writer {
public:
    Writer(const Scenario& s, const RunOptions& o)
        : dir_(o.output_dir), prefix_(s.output.prefix), format_(o.format.value_or(s.output.format)) {}

    bool csv() const { return format_ != OutputFormat::json; }
    bool json_enabled() const { return format_ != OutputFormat::csv; }

    void file(const std::string& suffix, const std::function<void(std::ostream&)>& body) {
        std::filesystem::create_directories(dir_);
        const auto path = dir_ / (prefix_ + suffix);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
        body(out);
        out.flush();
        if (!out) throw std::runtime_error("write to " + path.string() + " failed");
        files_.push_back(path);
    }

    void csv_file(const std::string& suffix, const std::function<void(std::ostream&)>& body) {
        if (csv()) file(suffix + ".csv", body);
    }

    const std::vector<std::filesystem::path>& files() const { return files_; }

private:
    std::filesystem::path dir_;
    std::string prefix_;
    OutputFormat format_;
    std::vector<std::filesystem::path> files_;
};

// Cartesian product of the variant axes; a single empty combination when
// there are none.
std::vector<std::vector<double>> combinations(const std::vector<Axis>& axes) {
    std::vector<std::vector<double>> out{{}};
    for (const auto& axis : axes) {
        std::vector<std::vector<double>> next;
        for (const auto& prefix : out) {
            for (double v : axis.values) {
                auto combo = prefix;
                combo.push_back(v);
                next.push_back(std::move(combo));
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string variant_suffix(const std::vector<Axis>& axes, const std::vector<double>& combo) {
    std::string out;
    for (std::size_t i = 0; i < axes.size(); ++i) out += "__" + axes[i].field + "_" + format_number(combo[i]);
    return out;
}

json file_names(const std::vector<std::filesystem::path>& files) {
    json out = json::array();
    for (const auto& f : files) out.push_back(f.filename().string());
    return out;
}

json trace_summary(const EngineTrace& trace) {
    const auto& last = trace.records.back();
    json j;
    j["cycles"] = trace.records.size();
    j["final_cumulative_work"] = last.cumulative_work;
    j["final_battery_polarization"] = {last.battery_polarization.px, last.battery_polarization.py,
                                      last.battery_polarization.pz};
    j["final_ergotropy"] = {{"total", last.ergotropy.total}, {"coherent", last.ergotropy.coherent}};
    return j;
}

void run_sweep(const Scenario& s, const RunOptions& o, Writer& w, json& summary, std::ostream& log) {
    const auto& sweep_axis = *s.sweep;
    json series = json::array();
    for (const auto& combo : combinations(s.variants)) {
        auto base = s.engine;
        for (std::size_t i = 0; i < combo.size(); ++i) set_field(base, s.variants[i].field, combo[i]);
        const auto traces = sweep(base, sweep_axis.field, sweep_axis.values, o.workers);
        const auto suffix = variant_suffix(s.variants, combo);
        w.csv_file(suffix, [&](std::ostream& out) { write_sweep_csv(out, sweep_axis.field, sweep_axis.values, traces); });

        json entry;
        json variant = json::object();
        for (std::size_t i = 0; i < combo.size(); ++i) variant[s.variants[i].field] = combo[i];
        entry["variant"] = variant;
        entry["csv"] = w.csv() ? json(s.output.prefix + suffix + ".csv") : json(nullptr);
        double best_work = traces.front().records.back().cumulative_work;
        double best_value = sweep_axis.values.front();
        for (std::size_t i = 1; i < traces.size(); ++i) {
            if (traces[i].records.back().cumulative_work > best_work) {
                best_work = traces[i].records.back().cumulative_work;
                best_value = sweep_axis.values[i];
            }
        }
        entry["max_work"] = {{sweep_axis.field, best_value}, {"cumulative_work", best_work}};
        series.push_back(entry);
        log << "series" << (suffix.empty() ? std::string(" (base)") : suffix) << ": " << traces.size()
            << " points, max work " << format_number(best_work) << " at " << sweep_axis.field << " = "
            << format_number(best_value) << '\n';
    }
    summary["sweep"] = {{"field", sweep_axis.field}, {"values", sweep_axis.values}};
    summary["series"] = series;
}

void run_multicycle(const Scenario& s, Writer& w, json& summary, std::ostream& log) {
    const auto trace = run_engine(s.engine);
    w.csv_file("", [&](std::ostream& out) { write_trace_csv(out, trace); });
    summary["trace"] = trace_summary(trace);
    log << "ran " << trace.records.size() << " cycles, cumulative work "
        << format_number(trace.records.back().cumulative_work) << '\n';
}

void run_compare(const Scenario& s, Writer& w, json& summary, std::ostream& log) {
    const auto cmp = compare_coherent_incoherent(s.engine);
    w.csv_file("_coherent", [&](std::ostream& out) { write_trace_csv(out, cmp.coherent); });
    w.csv_file("_incoherent", [&](std::ostream& out) { write_trace_csv(out, cmp.incoherent); });
    w.csv_file("_advantage", [&](std::ostream& out) { write_advantage_csv(out, cmp); });
    const auto peak = cmp.peak();
    summary["coherent"] = trace_summary(cmp.coherent);
    summary["incoherent"] = trace_summary(cmp.incoherent);
    summary["peak_advantage"] = peak_to_json(peak);
    if (peak) {
        log << "peak advantage " << format_number(*peak->ratio) << " at cycle " << peak->cycle_index << '\n';
    } else {
        log << "advantage undefined at every cycle\n";
    }
}

void run_search(const Scenario& s, const RunOptions& o, Writer& w, json& summary, std::ostream& log) {
    const auto result = search_advantage(s.engine, s.search, o.workers);
    w.csv_file("_search", [&](std::ostream& out) {
        for (const auto& f : result.fields) out << f << ',';
        out << "valid,peak_cycle,peak_advantage\n";
        for (const auto& p : result.points) {
            for (double v : p.coords) out << format_number(v) << ',';
            out << (p.valid ? 1 : 0) << ',';
            if (p.peak) out << p.peak->cycle_index << ',' << format_number(*p.peak->ratio);
            else out << ',';
            out << '\n';
        }
    });

    json best = nullptr;
    if (result.best) {
        const auto& p = result.points[*result.best];
        Scenario fixture;
        fixture.kind = ScenarioKind::compare;
        fixture.engine = p.config;
        fixture.output.prefix = s.output.prefix + "_best";
        w.file("_best.cfg", [&](std::ostream& out) { out << format_scenario(fixture); });
        best = {{"point", json::object()}, {"config", config_to_json(p.config)}, {"peak_advantage", peak_to_json(p.peak)}};
        for (std::size_t i = 0; i < result.fields.size(); ++i) best["point"][result.fields[i]] = p.coords[i];
        log << "best peak advantage " << format_number(result.best_ratio) << " at cycle " << p.peak->cycle_index;
        for (std::size_t i = 0; i < result.fields.size(); ++i) {
            log << ", " << result.fields[i] << " = " << format_number(p.coords[i]);
        }
        log << '\n';
    } else {
        log << "no grid point has a defined advantage\n";
    }
    std::size_t invalid = 0;
    for (const auto& p : result.points) invalid += p.valid ? 0 : 1;
    summary["grid_points"] = result.points.size();
    summary["invalid_points"] = invalid;
    summary["best_advantage"] = result.best_ratio;
    summary["best"] = best;
}

}  // namespace

RunResult run_scenario(const Scenario& s, const RunOptions& o, std::ostream& log) {
    const auto start = std::chrono::steady_clock::now();
    Writer w(s, o);
    RunResult result;

    json summary;
    summary["schema_version"] = s.schema_version;
    summary["scenario"] = std::string(to_string(s.kind));
    summary["config"] = config_to_json(s.engine);

    switch (s.kind) {
        case ScenarioKind::single_cycle_sweep: run_sweep(s, o, w, summary, log); break;
        case ScenarioKind::multicycle: run_multicycle(s, w, summary, log); break;
        case ScenarioKind::compare: run_compare(s, w, summary, log); break;
        case ScenarioKind::search_advantage: run_search(s, o, w, summary, log); break;
        case ScenarioKind::validate: {
            const auto checks = run_validation_suite();
            const bool ok = print_validation_table(log, checks);
            json table = json::array();
            for (const auto& c : checks) {
                table.push_back({{"check", c.name}, {"passed", c.passed}, {"measured", c.measured},
                                 {"tolerance", c.tolerance}});
            }
            summary["checks"] = table;
            summary["passed"] = ok;
            result.exit_code = ok ? 0 : 1;
            break;
        }
    }

    if (w.json_enabled()) {
        summary["outputs"] = file_names(w.files());
        if (o.timing) {
            summary["runtime_seconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        w.file(".json", [&](std::ostream& out) { out << summary.dump(2) << '\n'; });
    }
    result.files = w.files();
    return result;
}

}  // namespace otto
