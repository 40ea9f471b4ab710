#include "pilotwave/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pilotwave {

bool is_power_of_two(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

Grid1D make_grid(double x_min, double x_max, std::size_t n) {
    if (!(x_max > x_min))
        throw std::invalid_argument("make_grid: x_max must exceed x_min");
    if (!is_power_of_two(n) || n < 16)
        throw std::invalid_argument("make_grid: n must be a power of two >= 16");
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n = n;
    g.dx = (x_max - x_min) / static_cast<double>(n);
    return g;
}

double Grid1D::wrap(double x) const {
    const double L = length();
    double y = x - L * std::floor((x - x_min) / L);
    if (y >= x_max) y = x_min;  // guard against floor rounding at the seam
    return y;
}

double Grid1D::dp() const {
    return 2.0 * std::numbers::pi / length();
}

double Grid1D::fft_wavenumber(std::size_t j) const {
    const auto half = n / 2;
    const double s = (j < half) ? static_cast<double>(j)
                                : static_cast<double>(j) - static_cast<double>(n);
    return dp() * s;
}

double RealField::at(double x) const {
    const auto n = grid.n;
    const double u = (grid.wrap(x) - grid.x_min) / grid.dx;
    auto k = static_cast<std::size_t>(u);
    if (k >= n) k = n - 1;
    const double s = u - static_cast<double>(k);

    const double f0 = values[(k + n - 1) % n];
    const double f1 = values[k];
    const double f2 = values[(k + 1) % n];
    const double f3 = values[(k + 2) % n];

    // Catmull-Rom cubic; reproduces node values at s = 0, 1.
    return 0.5 * (2.0 * f1 + s * (f2 - f0 +
                  s * (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3 +
                  s * (3.0 * (f1 - f2) + f3 - f0))));
}

double RealField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

} // namespace pilotwave
