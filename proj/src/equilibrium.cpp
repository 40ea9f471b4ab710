#include "pilotwave/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pilotwave {

GridCdf::GridCdf(const RealField& rho) : grid_(rho.grid), rho_(rho.values) {
    const std::size_t n = grid_.n;
    if (rho_.size() != n) throw std::invalid_argument("GridCdf: field/grid mismatch");
    for (double& r : rho_) r = std::max(r, 0.0);  // clip float noise at nodes of psi

    cum_.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double right = rho_[(k + 1) % n];
        cum_[k + 1] = cum_[k] + 0.5 * grid_.dx * (rho_[k] + right);
    }
    total_ = cum_[n];
    if (!(total_ > 0.0)) throw std::invalid_argument("GridCdf: zero total mass");
}

double GridCdf::operator()(double x) const {
    if (x <= grid_.x_min) return 0.0;
    if (x >= grid_.x_max) return 1.0;
    const double u = (x - grid_.x_min) / grid_.dx;
    auto k = static_cast<std::size_t>(u);
    if (k >= grid_.n) k = grid_.n - 1;
    const double xi = (u - static_cast<double>(k)) * grid_.dx;
    const double left = rho_[k];
    const double slope = (rho_[(k + 1) % grid_.n] - left) / grid_.dx;
    const double mass = cum_[k] + xi * (left + 0.5 * slope * xi);
    return std::clamp(mass / total_, 0.0, 1.0);
}

double GridCdf::inverse(double u) const {
    const double target = std::clamp(u, 0.0, 1.0) * total_;
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), target);
    std::size_t k = (it == cum_.begin()) ? 0 : static_cast<std::size_t>(it - cum_.begin()) - 1;
    if (k >= grid_.n) k = grid_.n - 1;

    const double rem = target - cum_[k];
    const double left = rho_[k];
    const double slope = (rho_[(k + 1) % grid_.n] - left) / grid_.dx;

    // solve left*xi + slope*xi^2/2 = rem for xi in [0, dx]
    double xi;
    if (std::abs(slope) * grid_.dx < 1e-12 * std::max(left, 1e-300)) {
        xi = (left > 0.0) ? rem / left : 0.0;
    } else {
        const double disc = std::max(left * left + 2.0 * slope * rem, 0.0);
        xi = (slope > 0.0) ? (std::sqrt(disc) - left) / slope
                           : (left - std::sqrt(disc)) / (-slope);
        if (!std::isfinite(xi)) xi = (left > 0.0) ? rem / left : 0.0;
    }
    xi = std::clamp(xi, 0.0, grid_.dx);
    return grid_.wrap(grid_.x_min + static_cast<double>(k) * grid_.dx + xi);
}

std::vector<double> sample_born(const WaveState& state, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_born: count must be >= 1");
    if (norm_squared(state) <= 0.0) throw std::invalid_argument("sample_born: zero-norm state");
    const GridCdf cdf(density(state));
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(cdf.inverse(rng.uniform01()));
    return out;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& reference_cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = reference_cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

double ks_critical_value(double alpha, std::size_t sample_count) {
    if (!(alpha > 0.0 && alpha < 1.0) || sample_count == 0)
        throw std::invalid_argument("ks_critical_value: bad arguments");
    return std::sqrt(-std::log(alpha / 2.0) / (2.0 * static_cast<double>(sample_count)));
}

EquivarianceReport equivariance_of_ensemble(const EvolutionRecord& evolution,
                                            const Ensemble& ensemble,
                                            const std::vector<double>& check_times,
                                            double alpha) {
    if (ensemble.trajectories.empty())
        throw std::invalid_argument("equivariance_of_ensemble: empty ensemble");
    EquivarianceReport rep;
    rep.check_times = check_times;
    rep.sample_count = ensemble.trajectories.size();
    rep.threshold = ks_critical_value(alpha, rep.sample_count);
    rep.passed = true;
    for (double t : check_times) {
        const std::size_t idx = evolution.index_of_time(t);
        const GridCdf cdf(density(evolution.states[idx]));
        std::vector<double> xs;
        xs.reserve(rep.sample_count);
        for (const auto& traj : ensemble.trajectories) xs.push_back(traj.positions[idx]);
        const double d = ks_distance(std::move(xs), std::cref(cdf));
        rep.ks_statistics.push_back(d);
        if (!(d < rep.threshold)) rep.passed = false;
    }
    return rep;
}

EquivarianceReport verify_equivariance(const EvolutionRecord& evolution, std::size_t count,
                                       std::uint64_t seed,
                                       const std::vector<double>& check_times, double alpha) {
    if (count < 1000)
        throw std::invalid_argument("verify_equivariance: count must be >= 1000");
    if (evolution.states.empty())
        throw std::invalid_argument("verify_equivariance: empty evolution record");
    const auto initial = sample_born(evolution.states.front(), count, seed);
    const Ensemble ens = run_trajectories(initial, evolution, seed);
    return equivariance_of_ensemble(evolution, ens, check_times, alpha);
}

} // namespace pilotwave
