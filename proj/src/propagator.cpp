#include "pilotwave/propagator.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pilotwave/guidance.hpp"

namespace pilotwave {

namespace {
constexpr double pi = std::numbers::pi;
}

std::size_t EvolutionRecord::index_of_time(double t) const {
    if (times.empty()) throw std::out_of_range("EvolutionRecord: empty record");
    const double h = stored_dt();
    const double offset = t - times.front();
    const auto idx = static_cast<long long>(std::llround(offset / (h > 0.0 ? h : 1.0)));
    if (idx >= 0 && static_cast<std::size_t>(idx) < times.size()) {
        const auto i = static_cast<std::size_t>(idx);
        if (std::abs(times[i] - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    }
    throw std::invalid_argument("EvolutionRecord: time not on the stored lattice");
}

EvolutionRecord split_step_evolve(const WaveState& initial, const Potential& potential,
                                  double dt, std::size_t steps, std::size_t store_every) {
    if (!(dt > 0.0)) throw std::invalid_argument("split_step_evolve: dt must be positive");
    if (store_every == 0 || steps % store_every != 0)
        throw std::invalid_argument("split_step_evolve: store_every must divide steps");
    if (std::abs(norm_squared(initial) - 1.0) > 1e-9)
        throw std::invalid_argument("split_step_evolve: initial state is not normalized");
    if (dt * potential.max_abs(initial.grid) > pi)
        throw std::invalid_argument("split_step_evolve: dt too large for |V| (phase wrap)");

    const Grid1D& g = initial.grid;
    const std::size_t n = g.n;
    const std::size_t ncomp = initial.component_count();

    // Per-component half-step potential phase and the shared kinetic phase.
    std::vector<ComplexField> half_v(ncomp, ComplexField(n));
    for (std::size_t c = 0; c < ncomp; ++c) {
        const auto v = potential.values(g, c);
        for (std::size_t k = 0; k < n; ++k)
            half_v[c][k] = std::polar(1.0, -0.5 * dt * v[k]);
    }
    ComplexField kin(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = g.fft_wavenumber(j);
        // backward-FFT 1/n normalization folded into the kinetic factor
        kin[j] = std::polar(inv_n, -0.5 * dt * k * k);
    }

    FourierWorkspace ws(n);
    std::vector<ComplexField> work = initial.components;

    EvolutionRecord rec;
    rec.potential = potential;
    rec.step_dt = dt;
    rec.store_every = store_every;
    rec.times.reserve(steps / store_every + 1);
    rec.states.reserve(steps / store_every + 1);

    auto store = [&](std::size_t step) {
        const double t = initial.time + static_cast<double>(step) * dt;
        WaveState s = initial;
        s.components = work;
        s.time = t;
        rec.times.push_back(t);
        rec.states.push_back(std::move(s));
    };

    store(0);
    for (std::size_t step = 1; step <= steps; ++step) {
        for (std::size_t c = 0; c < ncomp; ++c) {
            auto& f = work[c];
            for (std::size_t k = 0; k < n; ++k) f[k] *= half_v[c][k];
            ws.forward(f);
            for (std::size_t j = 0; j < n; ++j) f[j] *= kin[j];
            ws.backward(f);
            for (std::size_t k = 0; k < n; ++k) f[k] *= half_v[c][k];
        }
        if (step % store_every == 0) store(step);
    }
    return rec;
}

complexd analytic_free_gaussian(double x, double t) {
    const complexd denom{1.0, t};
    return std::pow(pi, -0.25) / std::sqrt(denom) * std::exp(-x * x / (2.0 * denom));
}

complexd analytic_free_packet(double x, double t, double center, double width, double k0) {
    if (!(width > 0.0))
        throw std::invalid_argument("analytic_free_packet: width must be positive");
    const double s2 = width * width;
    const complexd beta{1.0, t / (2.0 * s2)};
    const double u = x - center - k0 * t;
    const complexd gauss = std::exp(-u * u / (4.0 * s2 * beta));
    const complexd carrier = std::polar(1.0, k0 * (x - center) - 0.5 * k0 * k0 * t);
    return std::pow(2.0 * pi * s2, -0.25) / std::sqrt(beta) * gauss * carrier;
}

double continuity_residual(const EvolutionRecord& record, std::size_t t_index) {
    if (record.size() < 3 || t_index == 0 || t_index + 1 >= record.size())
        throw std::out_of_range("continuity_residual: t_index must be interior");

    const Grid1D& g = record.states[t_index].grid;
    const double h = record.stored_dt();
    const RealField rho_prev = density(record.states[t_index - 1]);
    const RealField rho_next = density(record.states[t_index + 1]);
    const RealField j = current(record.states[t_index]);

    // spectral d/dx of the current
    FourierWorkspace ws(g.n);
    ComplexField jc(g.n);
    for (std::size_t k = 0; k < g.n; ++k) jc[k] = complexd{j.values[k], 0.0};
    const ComplexField djdx = spectral_derivative(g, jc, ws);

    double worst = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) {
        const double drho_dt = (rho_next.values[k] - rho_prev.values[k]) / (2.0 * h);
        worst = std::max(worst, std::abs(drho_dt + djdx[k].real()));
    }
    return worst;
}

} // namespace pilotwave
