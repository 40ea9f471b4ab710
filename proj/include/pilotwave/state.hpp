#pragma once

#include <complex>
#include <vector>

#include "pilotwave/grid.hpp"

namespace pilotwave {

using complexd = std::complex<double>;
using ComplexField = std::vector<complexd>;

enum class StateKind { scalar, spinor };

/// Scalar complex field or two-component spinor field at one instant.
/// Snapshots are immutable once constructed; evolution produces new states.
struct WaveState {
    StateKind kind = StateKind::scalar;
    std::vector<ComplexField> components;  // 1 (scalar) or 2 (spinor) arrays of length grid.n
    Grid1D grid;
    double time = 0.0;

    static WaveState scalar(Grid1D grid, ComplexField psi, double time = 0.0);
    static WaveState spinor(Grid1D grid, ComplexField up, ComplexField down, double time = 0.0);

    std::size_t component_count() const { return components.size(); }
    bool is_scalar() const { return kind == StateKind::scalar; }

    /// True when every stored value has exactly zero imaginary part.
    bool is_real() const;
};

enum class PotentialForm { free, linear_sg };

/// Spin-diagonal external potential. The linear Stern-Gerlach coupling acts
/// with opposite sign on the two spinor components:
///   V_up(z)   = -orientation * lambda * z
///   V_down(z) = +orientation * lambda * z
struct Potential {
    PotentialForm form = PotentialForm::free;
    double lambda = 0.0;
    int orientation = +1;

    static Potential free_space() { return {}; }
    static Potential linear_sg(double lambda, int orientation);

    /// Potential values on the grid for one spinor component (0 = up, 1 = down).
    /// A scalar state sees the component-0 profile.
    std::vector<double> values(const Grid1D& grid, std::size_t component) const;

    double max_abs(const Grid1D& grid) const;
};

/// Sum over components of |psi_c|^2 integrated with the Riemann rule (x dx).
double norm_squared(const WaveState& state);

/// Per-node probability density rho(x_k) = sum_c |psi_c(x_k)|^2.
RealField density(const WaveState& state);

/// Rescales so that norm_squared == 1. Throws on a zero state.
WaveState normalized(WaveState state);

/// Normalized Gaussian packet with r.m.s. position spread `width`, centered
/// at `center`, mean momentum `k0`:  psi ~ exp(-(x-c)^2/(4 w^2) + i k0 x).
/// width = 1/sqrt(2) gives pi^{-1/4} exp(-x^2/2) at center 0, k0 = 0.
WaveState gaussian_packet(const Grid1D& grid, double center, double width, double k0 = 0.0,
                          double time = 0.0);

/// Normalized lattice plane wave exp(i k0 x)/sqrt(L). k0 must be a multiple
/// of 2*pi/L so the mode is periodic on the grid.
WaveState plane_wave(const Grid1D& grid, double k0, double time = 0.0);

/// Normalized symmetric two-Gaussian state ~ g(x-a) + g(x+a), each packet of
/// r.m.s. width `sigma`. The double-slit transverse initial condition.
WaveState two_gaussian(const Grid1D& grid, double a, double sigma, double time = 0.0);

/// Spinor (c1*psi, c2*psi) from a scalar packet; |c1|^2+|c2|^2 is not
/// re-checked here (the scenario layer validates its configs).
WaveState spinor_from_packet(const WaveState& packet, complexd c1, complexd c2);

} // namespace pilotwave
