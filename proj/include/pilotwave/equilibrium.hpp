#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "pilotwave/guidance.hpp"

namespace pilotwave {

/// Deterministic uniform stream; the sole randomness source of the project.
/// The 53-bit mt19937_64 mapping is pinned so identical seeds reproduce
/// identical draws bit-for-bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

/// Cumulative distribution of the piecewise-linear density built from grid
/// node values (periodic closing cell included). Exact inverse sampling and
/// evaluation for that discretized model.
class GridCdf {
public:
    explicit GridCdf(const RealField& rho);

    double operator()(double x) const;   // CDF, monotone 0 -> 1 on [x_min, x_max]
    double inverse(double u) const;      // quantile, u in [0, 1)
    double total_mass() const { return total_; }

private:
    Grid1D grid_;
    std::vector<double> rho_;   // node densities, >= 0
    std::vector<double> cum_;   // cumulative mass at cell starts, cum_[n] = total
    double total_ = 0.0;
};

/// `count` independent Born-rule draws from density(state) via inverse-CDF
/// transform of the seeded uniform stream. Throws on a zero-norm state.
std::vector<double> sample_born(const WaveState& state, std::size_t count, std::uint64_t seed);

/// Two-sided Kolmogorov-Smirnov statistic sup_x |F_empirical - F_reference|.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& reference_cdf);

/// Asymptotic KS critical value sqrt(-ln(alpha/2) / (2 n)).
double ks_critical_value(double alpha, std::size_t sample_count);

/// Statistical comparison of an evolved ensemble against |psi(.,t)|^2.
struct EquivarianceReport {
    std::vector<double> check_times;
    std::vector<double> ks_statistics;
    std::size_t sample_count = 0;
    double threshold = 0.0;
    bool passed = false;
};

/// KS comparison of an existing ensemble against the record's densities at
/// the given check times (each must lie on the stored lattice).
EquivarianceReport equivariance_of_ensemble(const EvolutionRecord& evolution,
                                            const Ensemble& ensemble,
                                            const std::vector<double>& check_times,
                                            double alpha);

/// Samples count >= 1000 initial positions from the record's first state,
/// integrates them, and KS-tests the empirical distribution against
/// |psi(.,t)|^2 at every check time.
EquivarianceReport verify_equivariance(const EvolutionRecord& evolution, std::size_t count,
                                       std::uint64_t seed,
                                       const std::vector<double>& check_times, double alpha);

} // namespace pilotwave
