#pragma once

#include <cstddef>
#include <vector>

namespace pilotwave {

/// Uniform periodic spatial lattice. Node k sits at x_min + k*dx for
/// k = 0..n-1; node n is identified with node 0.
struct Grid1D {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n = 0;
    double dx = 0.0;

    double length() const { return x_max - x_min; }
    double node(std::size_t k) const { return x_min + static_cast<double>(k) * dx; }

    /// Wraps x into [x_min, x_max).
    double wrap(double x) const;

    /// Momentum lattice spacing 2*pi/L.
    double dp() const;

    /// Spectral wavenumber of FFT bin j (standard FFT ordering: bins
    /// j < n/2 carry k = 2*pi*j/L, bins j >= n/2 carry k = 2*pi*(j-n)/L).
    double fft_wavenumber(std::size_t j) const;

    bool operator==(const Grid1D&) const = default;
};

/// Builds a grid on [x_min, x_max) with n nodes. n must be a power of two
/// >= 16 and x_max > x_min.
Grid1D make_grid(double x_min, double x_max, std::size_t n);

bool is_power_of_two(std::size_t n);

/// A real-valued function sampled on a grid (density, velocity, current).
/// Evaluation between nodes uses periodic cubic (Catmull-Rom) interpolation;
/// at a node the interpolant reproduces the node value exactly.
struct RealField {
    Grid1D grid;
    std::vector<double> values;

    double at(double x) const;
    double max_abs() const;
};

} // namespace pilotwave
