#include "pilotwave/guidance.hpp"

#include <cmath>
#include <stdexcept>

namespace pilotwave {

namespace {

struct FlowFields {
    RealField j;    // Im(psi* . d_x psi)
    RealField rho;  // psi* . psi
};

// Real-array spectral derivative: the imaginary residue of the complex FFT
// round trip is discarded (the true derivative of a real field is real).
std::vector<double> real_spectral_derivative(const Grid1D& g, const std::vector<double>& a,
                                             FourierWorkspace& ws) {
    ComplexField buf(g.n);
    for (std::size_t k = 0; k < g.n; ++k) buf[k] = complexd{a[k], 0.0};
    buf = spectral_derivative(g, buf, ws);
    std::vector<double> out(g.n);
    for (std::size_t k = 0; k < g.n; ++k) out[k] = buf[k].real();
    return out;
}

FlowFields flow_fields(const WaveState& state, FourierWorkspace& ws) {
    const Grid1D& g = state.grid;
    FlowFields f;
    f.j.grid = g;
    f.j.values.assign(g.n, 0.0);
    f.rho.grid = g;
    f.rho.values.assign(g.n, 0.0);

    // J = Im(psi* d_x psi) = re * d(im) - im * d(re), with each derivative
    // taken through a real-field path. A component whose imaginary part is
    // the zero array then contributes exactly zero current, as the physics
    // requires of real states.
    std::vector<double> re(g.n), im(g.n);
    for (const auto& comp : state.components) {
        for (std::size_t k = 0; k < g.n; ++k) {
            re[k] = comp[k].real();
            im[k] = comp[k].imag();
        }
        const auto dre = real_spectral_derivative(g, re, ws);
        const auto dim = real_spectral_derivative(g, im, ws);
        for (std::size_t k = 0; k < g.n; ++k) {
            f.j.values[k] += re[k] * dim[k] - im[k] * dre[k];
            f.rho.values[k] += std::norm(comp[k]);
        }
    }
    return f;
}

} // namespace

RealField current(const WaveState& state) {
    FourierWorkspace ws(state.grid.n);
    return current(state, ws);
}

RealField current(const WaveState& state, FourierWorkspace& ws) {
    return flow_fields(state, ws).j;
}

RealField velocity_field(const WaveState& state) {
    FourierWorkspace ws(state.grid.n);
    return velocity_field(state, ws);
}

RealField velocity_field(const WaveState& state, FourierWorkspace& ws) {
    const FlowFields f = flow_fields(state, ws);
    const std::size_t n = state.grid.n;

    double rho_max = 0.0;
    for (double r : f.rho.values) rho_max = std::max(rho_max, r);

    RealField v;
    v.grid = state.grid;
    v.values.assign(n, 0.0);
    if (rho_max == 0.0) return v;  // null state guides nothing

    const double floor = rho_floor_fraction * rho_max;

    // circular distance to the nearest above-floor node on each side,
    // resolved in two O(n) sweeps; ties go to the left neighbor
    constexpr std::size_t far = ~std::size_t{0};
    std::vector<std::size_t> left_idx(n, far), right_idx(n, far);
    std::vector<std::size_t> left_d(n, far), right_d(n, far);
    for (std::size_t lap = 0; lap < 2; ++lap) {
        for (std::size_t k = 0; k < n; ++k) {
            if (f.rho.values[k] >= floor) {
                left_idx[k] = k;
                left_d[k] = 0;
            } else if (left_idx[(k + n - 1) % n] != far) {
                left_idx[k] = left_idx[(k + n - 1) % n];
                left_d[k] = left_d[(k + n - 1) % n] + 1;
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            if (f.rho.values[i] >= floor) {
                right_idx[i] = i;
                right_d[i] = 0;
            } else if (right_idx[(i + 1) % n] != far) {
                right_idx[i] = right_idx[(i + 1) % n];
                right_d[i] = right_d[(i + 1) % n] + 1;
            }
        }
    }

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = (left_d[k] <= right_d[k]) ? left_idx[k] : right_idx[k];
        v.values[k] = f.j.values[src] / f.rho.values[src];
    }
    return v;
}

double advance_trajectory(double x, const RealField& v_start, const RealField& v_end,
                          double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("advance_trajectory: dt must be positive");
    const Grid1D& g = v_start.grid;

    auto vel = [&](double xq, double theta) {
        return (1.0 - theta) * v_start.at(xq) + theta * v_end.at(xq);
    };

    const double k1 = vel(x, 0.0);
    const double k2 = vel(x + 0.5 * dt * k1, 0.5);
    const double k3 = vel(x + 0.5 * dt * k2, 0.5);
    const double k4 = vel(x + dt * k3, 1.0);
    return g.wrap(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

Ensemble run_trajectories(const std::vector<double>& initial_positions,
                          const EvolutionRecord& evolution, std::uint64_t master_seed) {
    if (evolution.states.empty())
        throw std::invalid_argument("run_trajectories: empty evolution record");
    const Grid1D& g = evolution.states.front().grid;
    for (double x : initial_positions)
        if (x < g.x_min || x >= g.x_max)
            throw std::invalid_argument("run_trajectories: initial position outside domain");

    const std::size_t n_traj = initial_positions.size();
    const std::size_t n_time = evolution.size();
    const double h = evolution.stored_dt();

    Ensemble ens;
    ens.master_seed = master_seed;
    ens.times = std::make_shared<const std::vector<double>>(evolution.times);
    ens.trajectories.resize(n_traj);
    for (std::size_t i = 0; i < n_traj; ++i) {
        ens.trajectories[i].times = ens.times;
        ens.trajectories[i].positions.reserve(n_time);
        ens.trajectories[i].positions.push_back(g.wrap(initial_positions[i]));
    }

    // Time-major sweep: one velocity field per stored state, shared by all
    // particles crossing that slab. One workspace amortizes FFT planning.
    FourierWorkspace ws(g.n);
    RealField v_prev = velocity_field(evolution.states.front(), ws);
    for (std::size_t t = 1; t < n_time; ++t) {
        RealField v_next = velocity_field(evolution.states[t], ws);
        for (auto& traj : ens.trajectories) {
            const double x = traj.positions.back();
            traj.positions.push_back(advance_trajectory(x, v_prev, v_next, h));
        }
        v_prev = std::move(v_next);
    }
    return ens;
}

} // namespace pilotwave
