#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "otto/errors.hpp"
#include "otto/report.hpp"
#include "otto/runner.hpp"
#include "otto/scenario.hpp"
#include "otto/search.hpp"

using namespace otto;
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("otto_app_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string error_of(std::string_view text) {
    try {
        parse_scenario(text, "t.cfg");
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal scenario takes defaults") {
    const auto s = parse_scenario("schema_version = 1\nscenario = multicycle\n[engine]\ncycles = 20\n");
    CHECK(s.kind == ScenarioKind::multicycle);
    CHECK(s.engine.cycles == 20);
    EngineConfig defaults;
    defaults.cycles = 20;
    CHECK(s.engine == defaults);
    CHECK(s.engine.hot_populations == Populations{0.515, 0.485});
    CHECK(s.engine.cold_populations == Populations{0.97, 0.03});
    CHECK(s.output.prefix == "otto");
    CHECK(s.output.format == OutputFormat::both);
}

TEST_CASE("scenario fields") {
    const auto s = parse_scenario(R"(schema_version = 1
; comment
# another
scenario = single-cycle-sweep
[engine]
theta = 0.3
theta_compression = 0.4
p_mx = -0.2
omega_m = 2
omega_b = 0.5
hot_populations = 0.6, 0.4
cold_populations = 0.9,0.1
battery_init = 0.1, -0.2, 0.3
cycles = 4
[noise]
battery_dephasing_per_reset = 0.8
battery_t2_per_cycle = 0.7
[sweep]
field = p_mx
values = -0.2:0.2:5
[variants]
battery_pz = 0, -0.25
cycles = 1, 2
[output]
prefix = run1
format = csv
)");
    const auto& c = s.engine;
    CHECK(c.theta == 0.3);
    CHECK(c.theta_compression == 0.4);
    CHECK(c.p_mx == -0.2);
    CHECK(c.omega_m == 2.0);
    CHECK(c.omega_b == 0.5);
    CHECK(c.hot_populations == Populations{0.6, 0.4});
    CHECK(c.cold_populations == Populations{0.9, 0.1});
    CHECK(c.battery_init == PolarizationVector{0.1, -0.2, 0.3});
    CHECK(c.cycles == 4);
    CHECK(c.noise == NoiseConfig{0.8, 0.7});
    REQUIRE(s.sweep);
    CHECK(s.sweep->field == "p_mx");
    const std::vector<double> expected{-0.2, -0.1, 0.0, 0.1, 0.2};
    REQUIRE(s.sweep->values.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(s.sweep->values[i] - expected[i]) < 1e-16);
    REQUIRE(s.variants.size() == 2);
    CHECK(s.variants[0] == Axis{"battery_pz", {0.0, -0.25}});
    CHECK(s.variants[1] == Axis{"cycles", {1.0, 2.0}});
    CHECK(s.output == OutputSpec{"run1", OutputFormat::csv});

    CHECK(parse_scenario(format_scenario(s)) == s);
}

TEST_CASE("value lists") {
    CHECK(parse_value_list("1, 2.5,-3") == std::vector<double>{1.0, 2.5, -3.0});
    CHECK(parse_value_list("0:1:3") == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(parse_value_list("2:5:1") == std::vector<double>{2.0});
    CHECK(parse_value_list("0:1.5707963267948966:33").back() == 1.5707963267948966);
    CHECK(parse_value_list("").empty());
    CHECK_THROWS_AS(parse_value_list("0:1"), ConfigError);
    CHECK_THROWS_AS(parse_value_list("0:1:0"), ConfigError);
    CHECK_THROWS_AS(parse_value_list("0:1:2.5"), ConfigError);
    CHECK_THROWS_AS(parse_value_list("1,,2"), ConfigError);
    CHECK_THROWS_AS(parse_value_list("1e"), ConfigError);
}

TEST_CASE("strict parsing reports the line") {
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\nfoo = 1\n") ==
          "t.cfg:4: unknown key 'foo' in [engine]");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\nfoo = 1\n") == "t.cfg:3: unknown key or section 'foo'");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[extras]\na = 1\n") ==
          "t.cfg:3: unknown key or section 'extras'");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\ntheta = fast\n") ==
          "t.cfg:4: 'fast' is not a number");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\ncycles = 2.5\n") ==
          "t.cfg:4: '2.5' is not an integer");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\nbattery_init = 0, 0\n") ==
          "t.cfg:4: expected 3 comma-separated numbers");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\ntheta\n") ==
          "t.cfg:4: '=' character not found in line");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\ntheta = 1\ntheta = 2\n") ==
          "t.cfg:5: duplicate key name");
    CHECK(error_of("schema_version = 2\nscenario = multicycle\n") ==
          "t.cfg:1: unsupported schema_version '2' (expected 1)");
    CHECK(error_of("scenario = multicycle\n") == "t.cfg: missing schema_version");
    CHECK(error_of("schema_version = 1\nscenario = plot\n") == "t.cfg:2: unknown scenario 'plot'");
    CHECK(error_of("schema_version = 1\nscenario = single-cycle-sweep\n") ==
          "t.cfg:2: single-cycle-sweep requires a [sweep] section");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[sweep]\nfield = gamma\nvalues = 1\n") ==
          "t.cfg:4: unknown sweep field 'gamma'");
    CHECK(error_of("schema_version = 1\nscenario = search-advantage\n") ==
          "t.cfg:2: search-advantage requires a non-empty [search] grid");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[output]\nformat = xml\n") ==
          "t.cfg:4: format must be csv, json or both (got 'xml')");
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[variants]\ngamma = 1\n") ==
          "t.cfg:4: unknown key 'gamma' in [variants]");
}

TEST_CASE("engine invariants are enforced at load") {
    const auto text = "schema_version = 1\nscenario = multicycle\n[engine]\np_mx = 0.6\nhot_populations = 0.515, 0.485\n";
    CHECK_THROWS_AS(parse_scenario(text, "t.cfg"), ValidationError);
    const auto message = error_of(text);
    CHECK(message.find("positivity bound") != std::string::npos);
    CHECK(message.find("sqrt(p0*p1)") != std::string::npos);

    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\nhot_populations = 0.5, 0.6\n")
              .find("sum to 1") != std::string::npos);
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[engine]\nbattery_init = 0.5, 0.5, 0\n")
              .find("battery_init") != std::string::npos);
    CHECK(error_of("schema_version = 1\nscenario = multicycle\n[noise]\nbattery_t2_per_cycle = 1.5\n")
              .find("battery_t2_per_cycle") != std::string::npos);
}

TEST_CASE("presets match the shipped scenario files") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        const auto path = fs::path(OTTO_SOURCE_DIR) / "scenarios" / (name + ".cfg");
        REQUIRE(fs::exists(path));
        CHECK(load_scenario(path) == preset(name));
    }
    CHECK(preset("fig3").kind == ScenarioKind::compare);
    CHECK(preset("fig3").engine.cycles == 20);
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.25) == "-0.25");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1e-20) == "9.9999999999999995e-21");
    for (double v : {std::numbers::pi, 1.0 / 3.0, -2.5e-300, 6.02e23}) CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("golden CSV header") {
    CHECK(csv_header() ==
          "cycle_index,cycle_work,cumulative_work,p_bx,p_by,p_bz,ergotropy_total,ergotropy_coherent,"
          "rel_entropy_coherence,concurrence,sm_x,sm_y,sm_z,sb_x,sb_y,sb_z,sxx,syy,szz");
    CHECK(csv_header("theta").rfind("theta,cycle_index,cycle_work,", 0) == 0);

    auto c = ideal_config(0.5, 0.3, {0.0, 0.2, -0.1});
    c.cycles = 3;
    std::ostringstream out;
    write_trace_csv(out, run_engine(c));
    std::istringstream lines(out.str());
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        CHECK(std::count(line.begin(), line.end(), ',') == 18);
        ++rows;
    }
    CHECK(rows == 4);
}

TEST_CASE("config JSON round trip reproduces the trace") {
    auto c = preset("fig3").engine;
    c.theta_compression = 0.3;
    const auto echoed = nlohmann::json::parse(config_to_json(c).dump());
    const auto back = config_from_json(echoed);
    CHECK(back == c);
    CHECK(run_engine(back).final_joint == run_engine(c).final_joint);

    CHECK(config_from_json(nlohmann::json::object()) == EngineConfig{});
    CHECK_THROWS_AS(config_from_json({{"thetta", 1.0}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"noise", {{"t1", 0.5}}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"cycles", 2.5}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"battery_init", {0.0, 0.1}}}), ConfigError);
    CHECK_THROWS_AS(config_from_json({{"p_mx", 0.6}}), ValidationError);
}

TEST_CASE("search_advantage") {
    const auto base = ideal_config(0.3, 0.0, {0.0, 0.1, -0.4});

    SUBCASE("only incoherent heating gives zero advantage") {
        auto c = base;
        c.cycles = 5;
        const auto r = search_advantage(c, {{"p_mx", {0.0}}, {"theta", {0.2, 0.4, 0.6}}});
        REQUIRE(r.best);
        CHECK(r.best_ratio == 0.0);
        CHECK(r.points[*r.best].coords == std::vector<double>{0.0, 0.2});
    }
    SUBCASE("grid order, validity and ties") {
        auto c = base;
        c.cycles = 4;
        const std::vector<Axis> grid{{"theta", {0.4, 0.2}}, {"p_mx", {0.3, 0.8, 0.1}}};
        const auto r = search_advantage(c, grid, 3);
        REQUIRE(r.points.size() == 6);
        CHECK(r.points[0].coords == std::vector<double>{0.4, 0.3});
        CHECK(r.points[1].coords == std::vector<double>{0.4, 0.8});
        CHECK(r.points[3].coords == std::vector<double>{0.2, 0.3});
        CHECK_FALSE(r.points[1].valid);
        CHECK_FALSE(r.points[4].valid);

        double best = -1.0;
        for (const auto& p : r.points) {
            if (p.peak) best = std::max(best, *p.peak->ratio);
        }
        CHECK(r.best_ratio == best);

        const auto serial = search_advantage(c, grid, 1);
        CHECK(serial.best == r.best);

        // Duplicate points tie exactly; the smaller tuple wins.
        const auto tied = search_advantage(c, {{"theta", {0.4, 0.4}}, {"omega_m", {2.0, 1.0}}});
        REQUIRE(tied.best);
        CHECK(tied.points[*tied.best].coords == std::vector<double>{0.4, 1.0});
    }
    SUBCASE("empty grid") {
        CHECK_THROWS_AS(search_advantage(base, {}), ConfigError);
        CHECK_THROWS_AS(search_advantage(base, {{"theta", {}}}), ConfigError);
    }
}

TEST_CASE("run_scenario writes the artifacts") {
    const auto dir = scratch("run");
    std::ostringstream log;
    RunOptions options;
    options.output_dir = dir;

    const auto fig3 = run_scenario(preset("fig3"), options, log);
    CHECK(fig3.exit_code == 0);
    CHECK(fig3.files.size() == 4);
    const auto summary = nlohmann::json::parse(read_file(dir / "fig3.json"));
    CHECK(summary["scenario"] == "compare");
    CHECK(summary["peak_advantage"]["cycle"].is_number_integer());
    CHECK_FALSE(summary.contains("runtime_seconds"));
    CHECK(config_from_json(summary["config"]) == preset("fig3").engine);
    CHECK(read_file(dir / "fig3_coherent.csv").rfind(csv_header() + "\n", 0) == 0);

    options.format = OutputFormat::csv;
    const auto fig2 = run_scenario(preset("fig2"), options, log);
    CHECK(fig2.files.size() == 4);
    const auto sweep_csv = read_file(dir / "fig2__p_mx_0.5__battery_py_0.5.csv");
    CHECK(sweep_csv.rfind(csv_header("theta") + "\n", 0) == 0);
    CHECK(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 34);

    options.format = OutputFormat::json;
    options.timing = true;
    const auto multi = run_scenario(
        parse_scenario("schema_version = 1\nscenario = multicycle\n[output]\nprefix = m\n"), options, log);
    REQUIRE(multi.files.size() == 1);
    CHECK(nlohmann::json::parse(read_file(dir / "m.json")).contains("runtime_seconds"));

    options.format.reset();
    options.timing = false;
    auto search = preset("advantage-search");
    search.search = {{"theta", {0.1, 0.3}}, {"p_mx", {0.25, 0.5}}};
    search.output.prefix = "s";
    run_scenario(search, options, log);
    const auto best = load_scenario(dir / "s_best.cfg");
    CHECK(best.kind == ScenarioKind::compare);
    const auto s_summary = nlohmann::json::parse(read_file(dir / "s.json"));
    CHECK(s_summary["grid_points"] == 4);
    CHECK(config_from_json(s_summary["best"]["config"]) == best.engine);
    CHECK(s_summary["best_advantage"].get<double>() == s_summary["best"]["peak_advantage"]["ratio"].get<double>());

    fs::remove_all(dir);
}

TEST_CASE("validation scenario") {
    std::ostringstream log;
    RunOptions options;
    options.output_dir = scratch("validate");
    options.format = OutputFormat::csv;
    const auto r = run_scenario(preset("validate"), options, log);
    CHECK(r.exit_code == 0);
    CHECK(log.str().find("all checks passed") != std::string::npos);
    CHECK(log.str().find("FAIL") == std::string::npos);
    fs::remove_all(options.output_dir);
}
