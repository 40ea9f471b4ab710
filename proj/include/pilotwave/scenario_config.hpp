#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pilotwave/state.hpp"

namespace pilotwave {

enum class ScenarioKind { double_slit, spin_measurement, momentum_measurement };

std::string to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_string(const std::string& name);

/// Configuration or config-file errors; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    ScenarioKind scenario = ScenarioKind::momentum_measurement;

    double x_min = -30.0;
    double x_max = 30.0;
    std::size_t n = 2048;
    double dt = 1e-3;
    double t_final = 1.0;
    std::size_t store_every = 5;
    std::size_t trajectories = 10000;
    std::uint64_t seed = 12345;

    // double_slit: packet centers at +-slit_separation/2, each of r.m.s.
    // width slit_width
    double slit_separation = 6.0;
    double slit_width = 0.7;

    // spin_measurement
    complexd c1{0.0, 0.0};
    complexd c2{0.0, 0.0};
    double packet_width = 1.0;
    double lambda = 4.0;
    int orientation = +1;

    std::size_t steps() const;

    /// Equivariance check times: t_final * {1/4, 1/2, 1} snapped onto the
    /// stored lattice.
    std::vector<double> check_times() const;
};

/// Pinned defaults for each scenario.
ScenarioConfig default_config(ScenarioKind kind);

/// Parses the flat key=value config format (UTF-8, '#' comments). Unknown or
/// inapplicable keys are rejected with their line number; missing keys take
/// the scenario defaults; every invariant is enforced. `force_scenario`
/// (the CLI positional) takes precedence over a scenario key in the text.
ScenarioConfig parse_config(const std::string& text,
                            std::optional<ScenarioKind> force_scenario = {});

/// Invariant checks shared by parse_config and programmatic construction.
/// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& config);

} // namespace pilotwave
