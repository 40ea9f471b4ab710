#include "pilotwave/scenarios.hpp"

#include <algorithm>
#include <cmath>

namespace pilotwave {

namespace {

constexpr double ks_alpha = 0.01;
constexpr double norm_drift_limit = 1e-8;
constexpr double two_prop_z_limit = 2.5758293035489004;  // N(0,1) quantile at alpha=0.01

double max_norm_drift(const EvolutionRecord& rec) {
    double worst = 0.0;
    for (const auto& s : rec.states) worst = std::max(worst, std::abs(norm_squared(s) - 1.0));
    return worst;
}

std::size_t count_sign_changes(const Trajectory& traj) {
    std::size_t count = 0;
    for (std::size_t i = 1; i < traj.positions.size(); ++i)
        if (traj.positions[i - 1] * traj.positions[i] < 0.0) ++count;
    return count;
}

/// Shared scenario plumbing: evolve, Born-sample, integrate, equivariance.
struct ScenarioCore {
    EvolutionRecord evolution;
    Ensemble ensemble;
    EquivarianceReport equivariance;
    std::vector<std::pair<double, RealField>> densities;
    double norm_drift = 0.0;
};

ScenarioCore run_core(const ScenarioConfig& cfg, const WaveState& initial,
                      const Potential& potential) {
    ScenarioCore core;
    core.evolution =
        split_step_evolve(initial, potential, cfg.dt, cfg.steps(), cfg.store_every);
    const auto initial_positions =
        sample_born(core.evolution.states.front(), cfg.trajectories, cfg.seed);
    core.ensemble = run_trajectories(initial_positions, core.evolution, cfg.seed);
    const auto checks = cfg.check_times();
    core.equivariance =
        equivariance_of_ensemble(core.evolution, core.ensemble, checks, ks_alpha);
    for (double t : checks)
        core.densities.emplace_back(t,
                                    density(core.evolution.states[core.evolution.index_of_time(t)]));
    core.norm_drift = max_norm_drift(core.evolution);
    return core;
}

void add_common_checks(ScenarioResult& r, const ScenarioCore& core) {
    double ks_max = 0.0;
    for (double d : core.equivariance.ks_statistics) ks_max = std::max(ks_max, d);
    r.metrics["equivariance_ks_max"] = ks_max;
    r.metrics["norm_drift"] = core.norm_drift;
    r.checks.push_back(
        make_check("equivariance_ks_max", ks_max, "<", core.equivariance.threshold));
    r.checks.push_back(make_check("norm_drift", core.norm_drift, "<", norm_drift_limit));
}

void finalize(ScenarioResult& r) {
    r.passed = std::all_of(r.checks.begin(), r.checks.end(),
                           [](const Check& c) { return c.passed; });
}

/// Strict local minima of rho inside the central region holding all but
/// `tail_mass` of the probability. Returns node indices.
std::vector<std::size_t> central_minima(const RealField& rho, double tail_mass) {
    const std::size_t n = rho.grid.n;
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) cum[k + 1] = cum[k] + rho.values[k] * rho.grid.dx;
    const double total = cum[n];
    std::size_t lo = 0, hi = n - 1;
    while (lo + 1 < n && cum[lo + 1] < tail_mass * total) ++lo;
    while (hi > lo + 1 && cum[hi] > (1.0 - tail_mass) * total) --hi;

    std::vector<std::size_t> minima;
    for (std::size_t k = lo + 1; k < hi; ++k)
        if (rho.values[k] < rho.values[k - 1] && rho.values[k] < rho.values[k + 1])
            minima.push_back(k);
    return minima;
}

} // namespace

Check make_check(std::string name, double value, std::string op, double threshold) {
    Check c;
    c.name = std::move(name);
    c.value = value;
    c.threshold = threshold;
    c.op = std::move(op);
    c.passed = (c.op == "<") ? (value < threshold) : (value > threshold);
    return c;
}

ScenarioResult scenario_double_slit(const ScenarioConfig& cfg) {
    validate_config(cfg);
    if (cfg.scenario != ScenarioKind::double_slit)
        throw ConfigError("scenario_double_slit: config is for another scenario");

    const Grid1D grid = make_grid(cfg.x_min, cfg.x_max, cfg.n);
    const WaveState initial = two_gaussian(grid, 0.5 * cfg.slit_separation, cfg.slit_width);
    ScenarioCore core = run_core(cfg, initial, Potential::free_space());

    ScenarioResult r;
    r.config = cfg;

    std::size_t crossings = 0;
    for (const auto& traj : core.ensemble.trajectories) crossings += count_sign_changes(traj);
    r.metrics["midline_crossings"] = static_cast<double>(crossings);

    // endpoint distribution vs |psi(., t_final)|^2
    const RealField& rho_final = core.densities.back().second;
    std::vector<double> endpoints;
    endpoints.reserve(core.ensemble.trajectories.size());
    for (const auto& traj : core.ensemble.trajectories) endpoints.push_back(traj.final());
    const GridCdf final_cdf(rho_final);
    const double endpoint_ks = ks_distance(endpoints, std::cref(final_cdf));
    r.metrics["endpoint_ks"] = endpoint_ks;

    // how many endpoints sit inside a dx-window around each interference
    // minimum; equivariance demands these stay nearly empty
    const auto minima = central_minima(rho_final, 5e-4);
    double worst_occupancy = 0.0;
    for (std::size_t k : minima) {
        const double x0 = rho_final.grid.node(k);
        const double half = 0.5 * rho_final.grid.dx;
        std::size_t inside = 0;
        for (double x : endpoints)
            if (std::abs(x - x0) <= half) ++inside;
        worst_occupancy = std::max(
            worst_occupancy, static_cast<double>(inside) / static_cast<double>(endpoints.size()));
    }
    r.metrics["fringe_minima_count"] = static_cast<double>(minima.size());
    r.metrics["fringe_min_occupancy"] = worst_occupancy;

    // alignment of trajectory-density minima with |psi|^2 minima: compare
    // against minima of a coarse endpoint histogram
    double alignment = 0.0;
    if (!minima.empty()) {
        const std::size_t bin_nodes = 8;
        const double bin_w = static_cast<double>(bin_nodes) * grid.dx;
        const auto nbins = grid.n / bin_nodes;
        std::vector<double> hist(nbins, 0.0);
        for (double x : endpoints) {
            auto b = static_cast<std::size_t>((grid.wrap(x) - grid.x_min) / bin_w);
            if (b >= nbins) b = nbins - 1;
            hist[b] += 1.0;
        }
        std::vector<double> hist_min_centers;
        for (std::size_t b = 1; b + 1 < nbins; ++b)
            if (hist[b] < hist[b - 1] && hist[b] <= hist[b + 1])
                hist_min_centers.push_back(grid.x_min + (static_cast<double>(b) + 0.5) * bin_w);
        for (std::size_t k : minima) {
            const double x0 = grid.node(k);
            double best = grid.length();
            for (double c : hist_min_centers) best = std::min(best, std::abs(c - x0));
            alignment = std::max(alignment, best);
        }
    }
    r.metrics["fringe_alignment"] = alignment;

    r.checks.push_back(make_check("midline_crossings", static_cast<double>(crossings), "<", 0.5));
    r.checks.push_back(
        make_check("endpoint_ks", endpoint_ks, "<",
                   ks_critical_value(ks_alpha, core.ensemble.trajectories.size())));
    r.checks.push_back(make_check("fringe_min_occupancy", worst_occupancy, "<", 5e-3));
    add_common_checks(r, core);

    r.evolution = std::move(core.evolution);
    r.ensemble = std::move(core.ensemble);
    r.equivariance = std::move(core.equivariance);
    r.densities = std::move(core.densities);
    finalize(r);
    return r;
}

namespace {

struct SpinRun {
    Ensemble ensemble;
    std::string labels;        // 'U' iff the particle exits on the up-packet side
    double up_fraction = 0.0;  // fraction of 'U' labels
    double positive_side_fraction = 0.0;
    std::size_t nodal_crossings = 0;
};

SpinRun label_spin_run(const ScenarioCore& core, int orientation) {
    SpinRun run;
    const auto count = core.ensemble.trajectories.size();
    run.labels.reserve(count);
    std::size_t up = 0, positive = 0;
    for (const auto& traj : core.ensemble.trajectories) {
        const bool ends_positive = traj.final() > 0.0;
        if (ends_positive) ++positive;
        const bool label_up = (ends_positive == (orientation > 0));
        if (label_up) ++up;
        run.labels.push_back(label_up ? 'U' : 'D');
        run.nodal_crossings += count_sign_changes(traj);
    }
    run.up_fraction = static_cast<double>(up) / static_cast<double>(count);
    run.positive_side_fraction = static_cast<double>(positive) / static_cast<double>(count);
    return run;
}

// Matched-seed orientation pairs share their initial samples, so the two
// up-fractions are correlated; the test uses the paired per-trajectory
// difference d_i in {-1, 0, +1} rather than the unpaired pooled variance.
double paired_two_proportion_z(const std::string& labels_a, const std::string& labels_b) {
    const double n = static_cast<double>(labels_a.size());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < labels_a.size(); ++i) {
        const double d = (labels_a[i] == 'U' ? 1.0 : 0.0) - (labels_b[i] == 'U' ? 1.0 : 0.0);
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    if (var <= 0.0) return 0.0;
    return std::abs(mean) / std::sqrt(var / n);
}

} // namespace

ScenarioResult scenario_spin_measurement_with_packet(const ScenarioConfig& cfg,
                                                     const WaveState& packet) {
    validate_config(cfg);
    if (cfg.scenario != ScenarioKind::spin_measurement)
        throw ConfigError("scenario_spin_measurement: config is for another scenario");
    if (!packet.is_scalar())
        throw std::invalid_argument("spin measurement: packet must be scalar");

    // the nodal-line argument needs psi(z) = psi(-z); demand a symmetric
    // domain and a mirror-symmetric packet
    const Grid1D& grid = packet.grid;
    if (std::abs(grid.x_min + grid.x_max) > 1e-12 * std::max(1.0, std::abs(grid.x_max)))
        throw std::invalid_argument("spin measurement: domain must be symmetric about 0");
    double asym = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < grid.n; ++k) {
        const std::size_t mirror = (grid.n - k) % grid.n;
        asym = std::max(asym, std::abs(packet.components[0][k] - packet.components[0][mirror]));
        scale = std::max(scale, std::abs(packet.components[0][k]));
    }
    if (asym > 1e-9 * scale)
        throw std::invalid_argument("spin measurement: packet is not symmetric about z = 0");

    const WaveState initial = spinor_from_packet(packet, cfg.c1, cfg.c2);
    const Potential field = Potential::linear_sg(cfg.lambda, cfg.orientation);
    ScenarioCore core = run_core(cfg, initial, field);
    const SpinRun primary = label_spin_run(core, cfg.orientation);

    // field-reversed twin at the same master seed
    ScenarioConfig flipped_cfg = cfg;
    flipped_cfg.orientation = -cfg.orientation;
    const Potential flipped_field = Potential::linear_sg(cfg.lambda, flipped_cfg.orientation);
    ScenarioCore flipped_core = run_core(flipped_cfg, initial, flipped_field);
    const SpinRun flipped = label_spin_run(flipped_core, flipped_cfg.orientation);

    ScenarioResult r;
    r.config = cfg;
    const auto count = core.ensemble.trajectories.size();

    r.metrics["up_fraction"] = primary.up_fraction;
    r.metrics["up_fraction_flipped"] = flipped.up_fraction;
    r.metrics["positive_side_fraction"] = primary.positive_side_fraction;
    r.metrics["nodal_crossings"] = static_cast<double>(primary.nodal_crossings);
    r.metrics["nodal_crossings_flipped"] = static_cast<double>(flipped.nodal_crossings);

    const double z_stat = paired_two_proportion_z(primary.labels, flipped.labels);
    r.metrics["orientation_two_prop_z"] = z_stat;

    // matched-seed flip comparison: final positions as multisets, labels
    // trajectory by trajectory
    std::vector<double> fin_a, fin_b;
    fin_a.reserve(count);
    fin_b.reserve(count);
    for (const auto& t : core.ensemble.trajectories) fin_a.push_back(t.final());
    for (const auto& t : flipped_core.ensemble.trajectories) fin_b.push_back(t.final());
    std::sort(fin_a.begin(), fin_a.end());
    std::sort(fin_b.begin(), fin_b.end());
    const bool positions_identical = fin_a == fin_b;
    double positions_max_diff = 0.0;
    for (std::size_t i = 0; i < count; ++i)
        positions_max_diff = std::max(positions_max_diff, std::abs(fin_a[i] - fin_b[i]));
    bool labels_complementary = true;
    for (std::size_t i = 0; i < count; ++i)
        if (primary.labels[i] == flipped.labels[i]) labels_complementary = false;

    r.metrics["flip_positions_identical"] = positions_identical ? 1.0 : 0.0;
    r.metrics["flip_positions_max_diff"] = positions_max_diff;
    r.metrics["flip_labels_complementary"] = labels_complementary ? 1.0 : 0.0;

    const double p_up = std::norm(cfg.c1);
    const double sigma_bin =
        std::sqrt(std::max(p_up * (1.0 - p_up), 0.0) / static_cast<double>(count));
    const double tol = std::max(3.0 * sigma_bin, 1e-12);
    r.checks.push_back(
        make_check("up_fraction_dev", std::abs(primary.up_fraction - p_up), "<", tol));
    r.checks.push_back(
        make_check("up_fraction_flipped_dev", std::abs(flipped.up_fraction - p_up), "<", tol));
    r.checks.push_back(make_check("orientation_two_prop_z", z_stat, "<", two_prop_z_limit));

    const bool equal_weights = std::abs(std::norm(cfg.c1) - std::norm(cfg.c2)) < 1e-12;
    if (equal_weights) {
        r.checks.push_back(make_check("nodal_crossings",
                                      static_cast<double>(primary.nodal_crossings), "<", 0.5));
        r.checks.push_back(make_check("flip_positions_max_diff", positions_max_diff, "<", 1e-9));
        r.checks.push_back(make_check("flip_labels_complementary",
                                      labels_complementary ? 1.0 : 0.0, ">", 0.5));
    }
    add_common_checks(r, core);

    r.outcome_labels = primary.labels;
    r.evolution = std::move(core.evolution);
    r.ensemble = std::move(core.ensemble);
    r.equivariance = std::move(core.equivariance);
    r.densities = std::move(core.densities);
    finalize(r);
    return r;
}

ScenarioResult scenario_spin_measurement(const ScenarioConfig& cfg) {
    validate_config(cfg);
    const Grid1D grid = make_grid(cfg.x_min, cfg.x_max, cfg.n);
    return scenario_spin_measurement_with_packet(
        cfg, gaussian_packet(grid, 0.0, cfg.packet_width));
}

ScenarioResult scenario_momentum_measurement(const ScenarioConfig& cfg) {
    validate_config(cfg);
    if (cfg.scenario != ScenarioKind::momentum_measurement)
        throw ConfigError("scenario_momentum_measurement: config is for another scenario");

    const Grid1D grid = make_grid(cfg.x_min, cfg.x_max, cfg.n);
    // the packet of the momentum analysis: pi^{-1/4} exp(-x^2/2), at rest
    const WaveState initial = gaussian_packet(grid, 0.0, 1.0 / std::sqrt(2.0));
    ScenarioCore core = run_core(cfg, initial, Potential::free_space());

    ScenarioResult r;
    r.config = cfg;

    const RealField v0 = velocity_field(core.evolution.states.front());
    double v0_max = 0.0;
    for (const auto& traj : core.ensemble.trajectories)
        v0_max = std::max(v0_max, std::abs(v0.at(traj.initial())));
    r.metrics["initial_velocity_max"] = v0_max;

    // time-of-flight momenta against the Fourier prediction
    // |psi_hat(p)|^2 = pi^{-1/2} exp(-p^2), CDF (1 + erf(p))/2
    std::vector<double> momenta;
    momenta.reserve(core.ensemble.trajectories.size());
    for (const auto& traj : core.ensemble.trajectories)
        momenta.push_back(extract_asymptotic_momentum(traj));
    const double ks_momentum = ks_distance(
        std::move(momenta), [](double p) { return 0.5 * (1.0 + std::erf(p)); });
    r.metrics["ks_momentum"] = ks_momentum;

    // |X(t)| = |X(0)| sqrt(1+t^2) on the early segment t <= 5
    double law_error = 0.0;
    const auto& times = *core.ensemble.times;
    for (const auto& traj : core.ensemble.trajectories) {
        const double x0 = traj.initial();
        if (std::abs(x0) <= 0.1) continue;
        for (std::size_t i = 1; i < times.size() && times[i] <= 5.0 + 1e-12; ++i) {
            const double expected = x0 * std::sqrt(1.0 + times[i] * times[i]);
            law_error = std::max(law_error, std::abs(traj.positions[i] / expected - 1.0));
        }
    }
    r.metrics["trajectory_law_error"] = law_error;

    r.checks.push_back(make_check("initial_velocity_max", v0_max, "<", 1e-10));
    r.checks.push_back(
        make_check("ks_momentum", ks_momentum, "<",
                   ks_critical_value(ks_alpha, core.ensemble.trajectories.size())));
    r.checks.push_back(make_check("trajectory_law_error", law_error, "<", 1e-3));
    add_common_checks(r, core);

    r.evolution = std::move(core.evolution);
    r.ensemble = std::move(core.ensemble);
    r.equivariance = std::move(core.equivariance);
    r.densities = std::move(core.densities);
    finalize(r);
    return r;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
    switch (config.scenario) {
        case ScenarioKind::double_slit: return scenario_double_slit(config);
        case ScenarioKind::spin_measurement: return scenario_spin_measurement(config);
        case ScenarioKind::momentum_measurement: return scenario_momentum_measurement(config);
    }
    throw ConfigError("run_scenario: unknown scenario");
}

double extract_asymptotic_momentum(const Trajectory& trajectory) {
    if (trajectory.positions.empty() || !trajectory.times || trajectory.times->empty())
        throw std::invalid_argument("extract_asymptotic_momentum: empty trajectory");
    const double t_last = trajectory.times->back();
    if (!(t_last > 0.0))
        throw std::invalid_argument("extract_asymptotic_momentum: final time must be positive");
    return trajectory.final() / t_last;
}

} // namespace pilotwave
