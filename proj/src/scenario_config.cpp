#include "pilotwave/scenario_config.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pilotwave/grid.hpp"

namespace pilotwave {

namespace {

const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& value, std::size_t line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        fail_line(line_no, "not a number: '" + value + "'");
    }
    if (used != value.size()) fail_line(line_no, "trailing characters in number: '" + value + "'");
    return v;
}

std::uint64_t parse_uint(const std::string& value, std::size_t line_no) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        if (!value.empty() && value[0] == '-') throw std::invalid_argument("negative");
        v = std::stoull(value, &used);
    } catch (const std::exception&) {
        fail_line(line_no, "not a non-negative integer: '" + value + "'");
    }
    if (used != value.size()) fail_line(line_no, "trailing characters in number: '" + value + "'");
    return v;
}

int parse_orientation(const std::string& value, std::size_t line_no) {
    const std::string v = trim(value);
    if (v == "+1" || v == "1" || v == "up") return +1;
    if (v == "-1" || v == "down") return -1;
    fail_line(line_no, "orientation must be +1 or -1");
}

} // namespace

std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::double_slit: return "double_slit";
        case ScenarioKind::spin_measurement: return "spin_measurement";
        case ScenarioKind::momentum_measurement: return "momentum_measurement";
    }
    return "unknown";
}

std::optional<ScenarioKind> scenario_from_string(const std::string& name) {
    if (name == "double_slit") return ScenarioKind::double_slit;
    if (name == "spin_measurement") return ScenarioKind::spin_measurement;
    if (name == "momentum_measurement") return ScenarioKind::momentum_measurement;
    return std::nullopt;
}

std::size_t ScenarioConfig::steps() const {
    return static_cast<std::size_t>(std::llround(t_final / dt));
}

std::vector<double> ScenarioConfig::check_times() const {
    const auto stored = steps() / store_every;
    const double h = dt * static_cast<double>(store_every);
    std::vector<double> times;
    for (double f : {0.25, 0.5, 1.0}) {
        const auto idx = std::max<long long>(1, std::llround(f * static_cast<double>(stored)));
        const double t = static_cast<double>(idx) * h;
        if (times.empty() || times.back() != t) times.push_back(t);
    }
    return times;
}

ScenarioConfig default_config(ScenarioKind kind) {
    ScenarioConfig c;
    c.scenario = kind;
    switch (kind) {
        case ScenarioKind::double_slit:
            c.t_final = 6.0;
            break;
        case ScenarioKind::spin_measurement:
            c.t_final = 2.0;
            c.c1 = complexd{inv_sqrt2, 0.0};
            c.c2 = complexd{inv_sqrt2, 0.0};
            break;
        case ScenarioKind::momentum_measurement:
            c.x_min = -120.0;
            c.x_max = 120.0;
            c.n = 8192;
            c.t_final = 25.0;
            c.store_every = 25;
            break;
    }
    return c;
}

ScenarioConfig parse_config(const std::string& text,
                            std::optional<ScenarioKind> force_scenario) {
    struct Entry {
        std::string value;
        std::size_t line;
    };
    std::map<std::string, Entry> entries;

    std::istringstream in(text);
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail_line(line_no, "expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail_line(line_no, "empty key");
        if (entries.count(key)) fail_line(line_no, "duplicate key '" + key + "'");
        entries[key] = Entry{value, line_no};
    }

    ScenarioKind kind;
    if (force_scenario) {
        kind = *force_scenario;
        entries.erase("scenario");
    } else {
        const auto it = entries.find("scenario");
        if (it == entries.end()) throw ConfigError("config: missing required key 'scenario'");
        const auto parsed = scenario_from_string(it->second.value);
        if (!parsed) fail_line(it->second.line, "unknown scenario '" + it->second.value + "'");
        kind = *parsed;
        entries.erase(it);
    }

    ScenarioConfig cfg = default_config(kind);
    double c1_re = cfg.c1.real(), c1_im = cfg.c1.imag();
    double c2_re = cfg.c2.real(), c2_im = cfg.c2.imag();

    for (const auto& [key, entry] : entries) {
        const auto& [value, line] = entry;
        if (key == "x_min") cfg.x_min = parse_double(value, line);
        else if (key == "x_max") cfg.x_max = parse_double(value, line);
        else if (key == "n") cfg.n = parse_uint(value, line);
        else if (key == "dt") cfg.dt = parse_double(value, line);
        else if (key == "t_final") cfg.t_final = parse_double(value, line);
        else if (key == "store_every") cfg.store_every = parse_uint(value, line);
        else if (key == "trajectories") cfg.trajectories = parse_uint(value, line);
        else if (key == "seed") cfg.seed = parse_uint(value, line);
        else if (key == "slit_separation" && kind == ScenarioKind::double_slit)
            cfg.slit_separation = parse_double(value, line);
        else if (key == "slit_width" && kind == ScenarioKind::double_slit)
            cfg.slit_width = parse_double(value, line);
        else if (key == "c1_re" && kind == ScenarioKind::spin_measurement)
            c1_re = parse_double(value, line);
        else if (key == "c1_im" && kind == ScenarioKind::spin_measurement)
            c1_im = parse_double(value, line);
        else if (key == "c2_re" && kind == ScenarioKind::spin_measurement)
            c2_re = parse_double(value, line);
        else if (key == "c2_im" && kind == ScenarioKind::spin_measurement)
            c2_im = parse_double(value, line);
        else if (key == "packet_width" && kind == ScenarioKind::spin_measurement)
            cfg.packet_width = parse_double(value, line);
        else if (key == "lambda" && kind == ScenarioKind::spin_measurement)
            cfg.lambda = parse_double(value, line);
        else if (key == "orientation" && kind == ScenarioKind::spin_measurement)
            cfg.orientation = parse_orientation(value, line);
        else
            fail_line(line, "unknown key '" + key + "' for scenario " + to_string(kind));
    }
    cfg.c1 = complexd{c1_re, c1_im};
    cfg.c2 = complexd{c2_re, c2_im};

    validate_config(cfg);
    return cfg;
}

void validate_config(const ScenarioConfig& cfg) {
    if (!(cfg.x_max > cfg.x_min)) throw ConfigError("x_max must exceed x_min");
    if (!is_power_of_two(cfg.n) || cfg.n < 16)
        throw ConfigError("n must be a power of two >= 16 (got " + std::to_string(cfg.n) + ")");
    if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
    if (!(cfg.t_final > 0.0)) throw ConfigError("t_final must be positive");

    const double steps_real = cfg.t_final / cfg.dt;
    const auto steps = static_cast<double>(cfg.steps());
    if (std::abs(steps_real - steps) > 1e-9 * std::max(1.0, steps_real))
        throw ConfigError("t_final must be an integer multiple of dt");
    if (cfg.store_every == 0 || cfg.steps() % cfg.store_every != 0)
        throw ConfigError("store_every must divide the step count t_final/dt");
    if (cfg.trajectories < 1) throw ConfigError("trajectories must be >= 1");

    switch (cfg.scenario) {
        case ScenarioKind::double_slit: {
            if (!(cfg.slit_width > 0.0)) throw ConfigError("slit_width must be positive");
            if (!(cfg.slit_separation > 0.0))
                throw ConfigError("slit_separation must be positive");
            const double a = 0.5 * cfg.slit_separation;
            if (!(a > 2.0 * cfg.slit_width))
                throw ConfigError(
                    "slits not resolvable: require slit_separation/2 > 2*slit_width");
            break;
        }
        case ScenarioKind::spin_measurement: {
            const double total = std::norm(cfg.c1) + std::norm(cfg.c2);
            if (std::abs(total - 1.0) > 1e-12)
                throw ConfigError("c1/c2 must satisfy |c1|^2 + |c2|^2 = 1 (got " +
                                  std::to_string(total) + ")");
            if (!(cfg.packet_width > 0.0)) throw ConfigError("packet_width must be positive");
            if (!(cfg.lambda > 0.0)) throw ConfigError("lambda must be positive");
            if (cfg.orientation != +1 && cfg.orientation != -1)
                throw ConfigError("orientation must be +1 or -1");
            const double w = cfg.packet_width;
            const double spread =
                std::sqrt(w * w + cfg.t_final * cfg.t_final / (4.0 * w * w));
            if (cfg.lambda * cfg.t_final * cfg.t_final < 6.0 * spread)
                throw ConfigError(
                    "packets not separated: require lambda*t_final^2 >= 6*sigma(t_final)");
            break;
        }
        case ScenarioKind::momentum_measurement:
            break;
    }
}

} // namespace pilotwave
