#pragma once

#include "pilotwave/spectral.hpp"
#include "pilotwave/state.hpp"

namespace pilotwave {

/// Time-sampled solution of the Schroedinger evolution. States are stored on
/// a uniform lattice of spacing step_dt * store_every, starting at the
/// initial time. Snapshots are immutable after the run.
struct EvolutionRecord {
    Potential potential;
    double step_dt = 0.0;       // integration step
    std::size_t store_every = 1;
    std::vector<double> times;  // uniformly spaced by stored_dt()
    std::vector<WaveState> states;

    double stored_dt() const { return step_dt * static_cast<double>(store_every); }
    std::size_t size() const { return states.size(); }

    /// Index of the stored state at time t; throws if t is not on the stored
    /// lattice (within 1e-9 absolute-or-relative).
    std::size_t index_of_time(double t) const;
};

/// Evolves `initial` through `steps` Strang-split steps of size dt:
/// half potential phase, full spectral kinetic step, half potential phase.
/// Stores the initial state and every store_every-th step thereafter;
/// store_every must divide steps. Norm is preserved to 1e-8 across all
/// stored states. Rejects unnormalized input and dt * max|V| > pi.
EvolutionRecord split_step_evolve(const WaveState& initial, const Potential& potential,
                                  double dt, std::size_t steps, std::size_t store_every = 1);

/// Free evolution of pi^{-1/4} exp(-x^2/2):
///   psi(x,t) = (1+it)^{-1/2} pi^{-1/4} exp(-x^2 / (2(1+it))),
/// principal square root.
complexd analytic_free_gaussian(double x, double t);

/// Free evolution of a normalized Gaussian with r.m.s. width `width`,
/// initial center `center` and mean momentum `k0`. Reduces to
/// analytic_free_gaussian for center=0, width=1/sqrt(2), k0=0.
complexd analytic_free_packet(double x, double t, double center, double width, double k0);

/// Max over nodes of |d(rho)/dt + dJ/dx| at interior stored index t_index,
/// with d/dt the centered difference on the stored lattice and dJ/dx
/// spectral. Small residual certifies discrete probability conservation.
double continuity_residual(const EvolutionRecord& record, std::size_t t_index);

} // namespace pilotwave
