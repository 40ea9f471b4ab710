#pragma once

#include <map>
#include <string>

#include "pilotwave/equilibrium.hpp"
#include "pilotwave/scenario_config.hpp"

namespace pilotwave {

/// One pass/fail criterion: `value op threshold` with op "<" or ">".
struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    std::string op = "<";
    bool passed = false;
};

Check make_check(std::string name, double value, std::string op, double threshold);

struct ScenarioResult {
    ScenarioConfig config;
    EvolutionRecord evolution;
    Ensemble ensemble;
    std::map<std::string, double> metrics;
    std::vector<Check> checks;
    EquivarianceReport equivariance;
    std::vector<std::pair<double, RealField>> densities;  // at check times
    std::string outcome_labels;  // spin measurement: 'U'/'D' per trajectory
    bool passed = false;
};

/// Transverse double-slit experiment: symmetric two-Gaussian initial state
/// in free flight. Metrics: midline_crossings, fringe_min_occupancy,
/// fringe_alignment, endpoint_ks.
ScenarioResult scenario_double_slit(const ScenarioConfig& config);

/// Stern-Gerlach spin measurement: spinor (c1 psi, c2 psi) under the linear
/// spin-diagonal coupling. Runs the configured orientation plus its
/// field-reversed twin at the same seed; metrics carry both outcomes
/// (up_fraction is the fraction of spin-up *labels*, i.e. trajectories that
/// exit on the side the up-component packet moved toward).
ScenarioResult scenario_spin_measurement(const ScenarioConfig& config);

/// Same, with a caller-supplied scalar packet; rejects packets that are not
/// symmetric about z = 0.
ScenarioResult scenario_spin_measurement_with_packet(const ScenarioConfig& config,
                                                     const WaveState& packet);

/// Momentum measurement: the unit Gaussian at rest, released and timed.
/// Metrics: initial_velocity_max, ks_momentum, trajectory_law_error.
ScenarioResult scenario_momentum_measurement(const ScenarioConfig& config);

ScenarioResult run_scenario(const ScenarioConfig& config);

/// p = X(t_last)/t_last, the time-of-flight momentum read off a trajectory.
double extract_asymptotic_momentum(const Trajectory& trajectory);

} // namespace pilotwave
