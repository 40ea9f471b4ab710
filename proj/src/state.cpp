#include "pilotwave/state.hpp"

#include <cmath>
#include <stdexcept>

namespace pilotwave {

WaveState WaveState::scalar(Grid1D grid, ComplexField psi, double time) {
    if (psi.size() != grid.n)
        throw std::invalid_argument("WaveState::scalar: field length does not match grid");
    WaveState s;
    s.kind = StateKind::scalar;
    s.components.push_back(std::move(psi));
    s.grid = grid;
    s.time = time;
    return s;
}

WaveState WaveState::spinor(Grid1D grid, ComplexField up, ComplexField down, double time) {
    if (up.size() != grid.n || down.size() != grid.n)
        throw std::invalid_argument("WaveState::spinor: field length does not match grid");
    WaveState s;
    s.kind = StateKind::spinor;
    s.components.push_back(std::move(up));
    s.components.push_back(std::move(down));
    s.grid = grid;
    s.time = time;
    return s;
}

bool WaveState::is_real() const {
    for (const auto& comp : components)
        for (const auto& v : comp)
            if (v.imag() != 0.0) return false;
    return true;
}

Potential Potential::linear_sg(double lambda, int orientation) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("Potential::linear_sg: lambda must be positive");
    if (orientation != +1 && orientation != -1)
        throw std::invalid_argument("Potential::linear_sg: orientation must be +1 or -1");
    Potential p;
    p.form = PotentialForm::linear_sg;
    p.lambda = lambda;
    p.orientation = orientation;
    return p;
}

std::vector<double> Potential::values(const Grid1D& grid, std::size_t component) const {
    std::vector<double> v(grid.n, 0.0);
    if (form == PotentialForm::linear_sg) {
        const double sign = (component == 0) ? -static_cast<double>(orientation)
                                             : +static_cast<double>(orientation);
        for (std::size_t k = 0; k < grid.n; ++k) v[k] = sign * lambda * grid.node(k);
    }
    return v;
}

double Potential::max_abs(const Grid1D& grid) const {
    if (form == PotentialForm::free) return 0.0;
    return lambda * std::max(std::abs(grid.x_min), std::abs(grid.node(grid.n - 1)));
}

double norm_squared(const WaveState& state) {
    double total = 0.0;
    for (const auto& comp : state.components)
        for (const auto& v : comp) total += std::norm(v);
    return total * state.grid.dx;
}

RealField density(const WaveState& state) {
    RealField rho;
    rho.grid = state.grid;
    rho.values.assign(state.grid.n, 0.0);
    for (const auto& comp : state.components)
        for (std::size_t k = 0; k < comp.size(); ++k) rho.values[k] += std::norm(comp[k]);
    return rho;
}

WaveState normalized(WaveState state) {
    const double n2 = norm_squared(state);
    if (n2 <= 0.0) throw std::invalid_argument("normalized: zero state");
    const double scale = 1.0 / std::sqrt(n2);
    for (auto& comp : state.components)
        for (auto& v : comp) v *= scale;
    return state;
}

WaveState gaussian_packet(const Grid1D& grid, double center, double width, double k0,
                          double time) {
    if (!(width > 0.0))
        throw std::invalid_argument("gaussian_packet: width must be positive");
    ComplexField psi(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.node(k);
        const double u = x - center;
        const double amp = std::exp(-u * u / (4.0 * width * width));
        psi[k] = (k0 == 0.0) ? complexd{amp, 0.0}
                             : amp * std::polar(1.0, k0 * u);
    }
    return normalized(WaveState::scalar(grid, std::move(psi), time));
}

WaveState plane_wave(const Grid1D& grid, double k0, double time) {
    const double ratio = k0 / grid.dp();
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw std::invalid_argument("plane_wave: k0 must be a multiple of 2*pi/L");
    const double amp = 1.0 / std::sqrt(grid.length());
    ComplexField psi(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k)
        psi[k] = amp * std::polar(1.0, k0 * grid.node(k));
    return WaveState::scalar(grid, std::move(psi), time);
}

WaveState two_gaussian(const Grid1D& grid, double a, double sigma, double time) {
    if (!(sigma > 0.0) || !(a > 0.0))
        throw std::invalid_argument("two_gaussian: a and sigma must be positive");
    ComplexField psi(grid.n);
    for (std::size_t k = 0; k < grid.n; ++k) {
        const double x = grid.node(k);
        const double up = x - a;
        const double dn = x + a;
        psi[k] = complexd{std::exp(-up * up / (4.0 * sigma * sigma)) +
                              std::exp(-dn * dn / (4.0 * sigma * sigma)),
                          0.0};
    }
    return normalized(WaveState::scalar(grid, std::move(psi), time));
}

WaveState spinor_from_packet(const WaveState& packet, complexd c1, complexd c2) {
    if (!packet.is_scalar())
        throw std::invalid_argument("spinor_from_packet: packet must be scalar");
    ComplexField up(packet.grid.n), down(packet.grid.n);
    for (std::size_t k = 0; k < packet.grid.n; ++k) {
        up[k] = c1 * packet.components[0][k];
        down[k] = c2 * packet.components[0][k];
    }
    return WaveState::spinor(packet.grid, std::move(up), std::move(down), packet.time);
}

} // namespace pilotwave
