#pragma once

#include <memory>

#include "pilotwave/propagator.hpp"
#include "pilotwave/state.hpp"

namespace pilotwave {

/// Particle path sampled on a stored time lattice. The lattice is shared by
/// all trajectories of one ensemble.
struct Trajectory {
    std::shared_ptr<const std::vector<double>> times;
    std::vector<double> positions;

    double initial() const { return positions.front(); }
    double final() const { return positions.back(); }
};

struct Ensemble {
    std::vector<Trajectory> trajectories;
    std::uint64_t master_seed = 0;
    std::shared_ptr<const std::vector<double>> times;
};

/// Density threshold below which the guiding velocity is taken from the
/// nearest node with density above threshold (the guiding law is 0/0 at
/// exact wave-function nodes).
inline constexpr double rho_floor_fraction = 1e-14;

/// Guiding velocity v = Im(psi* . d_x psi) / (psi* . psi) per node, with the
/// spectral derivative and the component dot-product for spinors. Nodes with
/// rho < rho_floor_fraction * max(rho) take the value of the nearest
/// above-floor node. The workspace overload lets callers amortize FFT
/// planning over many states of one grid.
RealField velocity_field(const WaveState& state);
RealField velocity_field(const WaveState& state, FourierWorkspace& ws);

/// Probability current J = Im(psi* . d_x psi) per node. Satisfies
/// J = v * rho away from the density floor.
RealField current(const WaveState& state);
RealField current(const WaveState& state, FourierWorkspace& ws);

/// One classic RK4 step from x through the time slab [t, t+dt] described by
/// the velocity fields at its endpoints: periodic cubic interpolation in
/// space, linear interpolation in time. The result is wrapped into the
/// periodic domain.
double advance_trajectory(double x, const RealField& v_start, const RealField& v_end,
                          double dt);

/// Integrates one trajectory per initial position across the stored time
/// lattice of `evolution`. Trajectories are mutually independent; the result
/// is deterministic for fixed inputs.
Ensemble run_trajectories(const std::vector<double>& initial_positions,
                          const EvolutionRecord& evolution, std::uint64_t master_seed = 0);

} // namespace pilotwave
