#include "otto/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "otto/errors.hpp"
#include "otto/multicycle.hpp"
#include "otto/report.hpp"

namespace otto {

namespace pt = boost::property_tree;

namespace {

constexpr std::string_view kSchemaVersion = "1";

constexpr std::pair<ScenarioKind, std::string_view> kKindNames[] = {
    {ScenarioKind::single_cycle_sweep, "single-cycle-sweep"},
    {ScenarioKind::multicycle, "multicycle"},
    {ScenarioKind::compare, "compare"},
    {ScenarioKind::validate, "validate"},
    {ScenarioKind::search_advantage, "search-advantage"},
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Line number of every "section.key", replaying the INI grammar.
std::map<std::string, int> index_lines(std::string_view text) {
    std::map<std::string, int> lines;
    std::string section;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = trim(raw);
        if (line.empty() || line[0] == ';' || line[0] == '#') continue;
        if (line[0] == '[') {
            section = std::string(trim(line.substr(1, line.find(']') - 1)));
            lines.emplace(section, line_no);
            continue;
        }
        const auto key = std::string(trim(line.substr(0, line.find('='))));
        lines.emplace(section.empty() ? key : section + "." + key, line_no);
    }
    return lines;
}

class Reader {
public:
    Reader(std::string source, std::map<std::string, int> lines) : source_(std::move(source)), lines_(std::move(lines)) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        const auto it = lines_.find(path);
        const std::string where = it == lines_.end() ? source_ : source_ + ":" + std::to_string(it->second);
        throw ConfigError(where + ": " + message);
    }

    double number(const std::string& path, std::string_view text) const {
        text = trim(text);
        double value = 0.0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
            fail(path, "'" + std::string(text) + "' is not a number");
        }
        return value;
    }

    std::vector<double> numbers(const std::string& path, std::string_view text) const {
        try {
            return parse_value_list(text);
        } catch (const ConfigError& e) {
            fail(path, e.what());
        }
    }

    template <std::size_t N>
    std::array<double, N> tuple(const std::string& path, std::string_view text) const {
        std::array<double, N> out{};
        std::size_t count = 0;
        for (std::size_t start = 0; start <= text.size();) {
            auto end = text.find(',', start);
            if (end == std::string_view::npos) end = text.size();
            if (count == N) fail(path, "expected " + std::to_string(N) + " comma-separated numbers");
            out[count++] = number(path, text.substr(start, end - start));
            start = end + 1;
        }
        if (count != N) fail(path, "expected " + std::to_string(N) + " comma-separated numbers");
        return out;
    }

    int integer(const std::string& path, std::string_view text) const {
        text = trim(text);
        int value = 0;
        const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
        if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
            fail(path, "'" + std::string(text) + "' is not an integer");
        }
        return value;
    }

    void check_keys(const pt::ptree& tree, const std::string& section, const std::set<std::string>& known) const {
        for (const auto& [key, child] : tree) {
            const std::string path = section.empty() ? key : section + "." + key;
            if (!known.contains(key)) {
                fail(path, section.empty() ? "unknown key or section '" + key + "'"
                                           : "unknown key '" + key + "' in [" + section + "]");
            }
            if (!section.empty() && !child.empty()) fail(path, "nested keys are not supported");
        }
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::map<std::string, int> lines_;
};

void read_engine(const Reader& r, const pt::ptree& tree, EngineConfig& c) {
    r.check_keys(tree, "engine",
                 {"theta", "theta_compression", "p_mx", "omega_m", "omega_b", "hot_populations",
                  "cold_populations", "battery_init", "cycles"});
    for (const auto& [key, child] : tree) {
        const auto path = "engine." + key;
        const auto& text = child.data();
        if (key == "theta") {
            c.theta = r.number(path, text);
        } else if (key == "theta_compression") {
            c.theta_compression = r.number(path, text);
        } else if (key == "p_mx") {
            c.p_mx = r.number(path, text);
        } else if (key == "omega_m") {
            c.omega_m = r.number(path, text);
        } else if (key == "omega_b") {
            c.omega_b = r.number(path, text);
        } else if (key == "hot_populations") {
            const auto p = r.tuple<2>(path, text);
            c.hot_populations = {p[0], p[1]};
        } else if (key == "cold_populations") {
            const auto p = r.tuple<2>(path, text);
            c.cold_populations = {p[0], p[1]};
        } else if (key == "battery_init") {
            const auto p = r.tuple<3>(path, text);
            c.battery_init = {p[0], p[1], p[2]};
        } else if (key == "cycles") {
            c.cycles = r.integer(path, text);
        }
    }
}

void read_noise(const Reader& r, const pt::ptree& tree, NoiseConfig& n) {
    r.check_keys(tree, "noise", {"battery_dephasing_per_reset", "battery_t2_per_cycle"});
    for (const auto& [key, child] : tree) {
        const double value = r.number("noise." + key, child.data());
        (key == "battery_dephasing_per_reset" ? n.battery_dephasing_per_reset : n.battery_t2_per_cycle) = value;
    }
}

std::vector<Axis> read_axes(const Reader& r, const pt::ptree& tree, const std::string& section) {
    const auto& fields = sweepable_fields();
    r.check_keys(tree, section, {fields.begin(), fields.end()});
    std::vector<Axis> axes;
    for (const auto& [key, child] : tree) {
        auto values = r.numbers(section + "." + key, child.data());
        if (values.empty()) r.fail(section + "." + key, "empty value list");
        axes.push_back({key, std::move(values)});
    }
    return axes;
}

Axis read_sweep(const Reader& r, const pt::ptree& tree) {
    r.check_keys(tree, "sweep", {"field", "values"});
    const auto field = tree.get_optional<std::string>("field");
    const auto values = tree.get_optional<std::string>("values");
    if (!field || !values) r.fail("sweep", "[sweep] needs both 'field' and 'values'");
    const auto& known = sweepable_fields();
    if (std::find(known.begin(), known.end(), *field) == known.end()) {
        r.fail("sweep.field", "unknown sweep field '" + *field + "'");
    }
    auto list = r.numbers("sweep.values", *values);
    if (list.empty()) r.fail("sweep.values", "empty value list");
    return {*field, std::move(list)};
}

void read_output(const Reader& r, const pt::ptree& tree, OutputSpec& out) {
    r.check_keys(tree, "output", {"prefix", "format"});
    if (const auto prefix = tree.get_optional<std::string>("prefix")) {
        if (prefix->empty() || prefix->find_first_of("/\\") != std::string::npos) {
            r.fail("output.prefix", "prefix must be a non-empty file name without directories");
        }
        out.prefix = *prefix;
    }
    if (const auto format = tree.get_optional<std::string>("format")) {
        const auto parsed = parse_output_format(*format);
        if (!parsed) r.fail("output.format", "format must be csv, json or both (got '" + *format + "')");
        out.format = *parsed;
    }
}

std::string join_numbers(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ", ";
        out += format_number(values[i]);
    }
    return out;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::string_view to_string(OutputFormat format) {
    switch (format) {
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
        case OutputFormat::both: return "both";
    }
    return "both";
}

std::optional<OutputFormat> parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    if (text == "both") return OutputFormat::both;
    return std::nullopt;
}

std::vector<double> parse_value_list(std::string_view text) {
    auto parse = [](std::string_view token) {
        token = trim(token);
        double value = 0.0;
        const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
        if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
            throw ConfigError("'" + std::string(token) + "' is not a number");
        }
        return value;
    };

    text = trim(text);
    std::vector<double> out;
    if (text.empty()) return out;
    if (text.find(':') != std::string_view::npos) {
        const auto a = text.find(':');
        const auto b = text.find(':', a + 1);
        if (b == std::string_view::npos || text.find(':', b + 1) != std::string_view::npos) {
            throw ConfigError("range must read lo:hi:n");
        }
        const double lo = parse(text.substr(0, a));
        const double hi = parse(text.substr(a + 1, b - a - 1));
        const double n = parse(text.substr(b + 1));
        if (n < 1.0 || n != static_cast<double>(static_cast<long>(n)) || n > 1e6) {
            throw ConfigError("range count must be a positive integer");
        }
        const auto count = static_cast<std::size_t>(n);
        if (count == 1) return {lo};
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(i + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
        }
        return out;
    }
    for (std::size_t start = 0; start <= text.size();) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        out.push_back(parse(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

Scenario parse_scenario(std::string_view text, const std::string& source) {
    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(source + ":" + std::to_string(e.line()) + ": " + e.message());
    }

    const Reader r(source, index_lines(text));
    r.check_keys(tree, "",
                 {"schema_version", "scenario", "engine", "noise", "sweep", "variants", "search", "output"});
    for (const auto& [key, child] : tree) {
        const bool is_section = key != "schema_version" && key != "scenario";
        if (is_section && child.empty()) r.fail(key, "'" + key + "' must be a section");
        if (!is_section && !child.empty()) r.fail(key, "'" + key + "' must be a top-level key");
    }

    Scenario s;
    const auto version = tree.get_optional<std::string>("schema_version");
    if (!version) r.fail("", "missing schema_version");
    if (*version != kSchemaVersion) {
        r.fail("schema_version", "unsupported schema_version '" + *version + "' (expected " +
                                     std::string(kSchemaVersion) + ")");
    }
    s.schema_version = *version;

    const auto kind = tree.get_optional<std::string>("scenario");
    if (!kind) r.fail("", "missing 'scenario'");
    const auto* match = std::find_if(std::begin(kKindNames), std::end(kKindNames),
                                     [&](const auto& entry) { return entry.second == *kind; });
    if (match == std::end(kKindNames)) r.fail("scenario", "unknown scenario '" + *kind + "'");
    s.kind = match->first;

    if (const auto engine = tree.get_child_optional("engine")) read_engine(r, *engine, s.engine);
    if (const auto noise = tree.get_child_optional("noise")) read_noise(r, *noise, s.engine.noise);
    if (const auto sweep = tree.get_child_optional("sweep")) s.sweep = read_sweep(r, *sweep);
    if (const auto variants = tree.get_child_optional("variants")) s.variants = read_axes(r, *variants, "variants");
    if (const auto search = tree.get_child_optional("search")) s.search = read_axes(r, *search, "search");
    if (const auto output = tree.get_child_optional("output")) read_output(r, *output, s.output);

    if (s.kind == ScenarioKind::single_cycle_sweep && !s.sweep) {
        r.fail("scenario", "single-cycle-sweep requires a [sweep] section");
    }
    if (s.kind != ScenarioKind::single_cycle_sweep && s.sweep) {
        r.fail("sweep", "[sweep] only applies to single-cycle-sweep");
    }
    if (s.kind == ScenarioKind::search_advantage && s.search.empty()) {
        r.fail("scenario", "search-advantage requires a non-empty [search] grid");
    }
    if (s.kind != ScenarioKind::search_advantage && !s.search.empty()) {
        r.fail("search", "[search] only applies to search-advantage");
    }

    try {
        s.engine.validate();
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string() + ": cannot open scenario file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str(), path.string());
}

std::string format_scenario(const Scenario& s) {
    const auto& c = s.engine;
    std::ostringstream out;
    out << "schema_version = " << s.schema_version << '\n';
    out << "scenario = " << to_string(s.kind) << "\n\n";
    out << "[engine]\n";
    out << "theta = " << format_number(c.theta) << '\n';
    if (c.theta_compression) out << "theta_compression = " << format_number(*c.theta_compression) << '\n';
    out << "p_mx = " << format_number(c.p_mx) << '\n';
    out << "omega_m = " << format_number(c.omega_m) << '\n';
    out << "omega_b = " << format_number(c.omega_b) << '\n';
    out << "hot_populations = " << join_numbers({c.hot_populations.p0, c.hot_populations.p1}) << '\n';
    out << "cold_populations = " << join_numbers({c.cold_populations.p0, c.cold_populations.p1}) << '\n';
    out << "battery_init = " << join_numbers({c.battery_init.px, c.battery_init.py, c.battery_init.pz}) << '\n';
    out << "cycles = " << c.cycles << "\n\n";
    out << "[noise]\n";
    out << "battery_dephasing_per_reset = " << format_number(c.noise.battery_dephasing_per_reset) << '\n';
    out << "battery_t2_per_cycle = " << format_number(c.noise.battery_t2_per_cycle) << '\n';
    if (s.sweep) {
        out << "\n[sweep]\nfield = " << s.sweep->field << "\nvalues = " << join_numbers(s.sweep->values) << '\n';
    }
    for (const auto* axes : {&s.variants, &s.search}) {
        if (axes->empty()) continue;
        out << '\n' << (axes == &s.variants ? "[variants]" : "[search]") << '\n';
        for (const auto& axis : *axes) out << axis.field << " = " << join_numbers(axis.values) << '\n';
    }
    out << "\n[output]\nprefix = " << s.output.prefix << "\nformat = " << to_string(s.output.format) << '\n';
    return out.str();
}

}  // namespace otto
