#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pilotwave/propagator.hpp"
#include "pilotwave/spectral.hpp"
#include "pilotwave/state.hpp"

using namespace pilotwave;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("make_grid: spacing and node positions") {
    const Grid1D g = make_grid(-30.0, 30.0, 2048);
    CHECK(g.dx == doctest::Approx(60.0 / 2048.0).epsilon(1e-15));
    CHECK(g.dx == doctest::Approx(0.029297).epsilon(1e-4));

    const Grid1D unit = make_grid(0.0, 1.0, 16);
    CHECK(unit.node(0) == 0.0);
    CHECK(unit.node(15) == doctest::Approx(0.9375).epsilon(1e-15));
}

TEST_CASE("make_grid: rejects bad arguments") {
    CHECK_THROWS_AS(make_grid(-1.0, 1.0, 100), std::invalid_argument);  // not a power of two
    CHECK_THROWS_AS(make_grid(-1.0, 1.0, 8), std::invalid_argument);    // too small
    CHECK_THROWS_AS(make_grid(1.0, 1.0, 64), std::invalid_argument);    // empty interval
    CHECK_THROWS_AS(make_grid(2.0, -2.0, 64), std::invalid_argument);
}

TEST_CASE("grid wrap stays inside the periodic domain") {
    const Grid1D g = make_grid(-2.0, 6.0, 32);
    CHECK(g.wrap(-2.0) == doctest::Approx(-2.0));
    CHECK(g.wrap(6.0) == doctest::Approx(-2.0));
    CHECK(g.wrap(7.5) == doctest::Approx(-0.5));
    CHECK(g.wrap(-3.0) == doctest::Approx(5.0));
    for (double x : {-100.0, -2.0, 0.0, 5.999, 123.456}) {
        const double w = g.wrap(x);
        CHECK(w >= g.x_min);
        CHECK(w < g.x_max);
    }
}

TEST_CASE("norm_squared: normalized Gaussian integrates to one") {
    const Grid1D g = make_grid(-30.0, 30.0, 2048);
    ComplexField psi(g.n);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double x = g.node(k);
        psi[k] = std::pow(pi, -0.25) * std::exp(-0.5 * x * x);
    }
    const WaveState s = WaveState::scalar(g, std::move(psi));
    CHECK(norm_squared(s) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("norm_squared: zero state and spinor weights") {
    const Grid1D g = make_grid(-10.0, 10.0, 64);
    const WaveState zero = WaveState::scalar(g, ComplexField(g.n, complexd{0.0, 0.0}));
    CHECK(norm_squared(zero) == 0.0);

    const WaveState packet = gaussian_packet(g, 0.0, 1.0);
    const complexd c1{0.6, 0.0}, c2{0.0, 0.8};  // |c1|^2 + |c2|^2 = 1
    const WaveState sp = spinor_from_packet(packet, c1, c2);
    CHECK(sp.component_count() == 2);
    CHECK(norm_squared(sp) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("density: plane wave is flat, spinor split matches scalar") {
    const Grid1D g = make_grid(-10.0, 10.0, 128);
    const double L = g.length();
    const WaveState pw = plane_wave(g, 2.0 * pi / L * 3.0);
    const RealField rho = density(pw);
    for (double r : rho.values) CHECK(r == doctest::Approx(1.0 / L).epsilon(1e-12));

    const WaveState packet = gaussian_packet(g, 0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const WaveState sp = spinor_from_packet(packet, {inv_sqrt2, 0.0}, {inv_sqrt2, 0.0});
    const RealField rho_s = density(sp);
    const RealField rho_p = density(packet);
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(rho_s.values[k] == doctest::Approx(rho_p.values[k]).epsilon(1e-12));
}

TEST_CASE("density: the released Gaussian has the closed-form peak") {
    // |psi(0,t)|^2 = 1/sqrt(pi (1+t^2)); 0.5641896 at t = 0
    const Grid1D g = make_grid(-30.0, 30.0, 2048);
    for (double t : {0.0, 1.0, 2.5}) {
        ComplexField psi(g.n);
        for (std::size_t k = 0; k < g.n; ++k) psi[k] = analytic_free_gaussian(g.node(k), t);
        const WaveState s = WaveState::scalar(g, std::move(psi), t);
        const RealField rho = density(s);
        const std::size_t center = g.n / 2;  // node at x = 0
        CHECK(rho.values[center] ==
              doctest::Approx(1.0 / std::sqrt(pi * (1.0 + t * t))).epsilon(1e-10));
        if (t == 0.0) CHECK(rho.values[center] == doctest::Approx(0.5641896).epsilon(1e-6));
        for (double r : rho.values) CHECK(r >= 0.0);
    }
}

TEST_CASE("fourier_transform: Gaussian spectrum matches pi^{-1/2} exp(-p^2)") {
    const Grid1D g = make_grid(-30.0, 30.0, 2048);
    const WaveState s = gaussian_packet(g, 0.0, 1.0 / std::sqrt(2.0));
    const MomentumSpectrum spec = fourier_transform(s);
    REQUIRE(spec.momenta.size() == g.n);
    CHECK(spec.momenta.front() == doctest::Approx(-pi / g.dx).epsilon(1e-12));
    for (std::size_t i = 0; i < g.n; ++i) {
        const double p = spec.momenta[i];
        const double expected = std::exp(-p * p) / std::sqrt(pi);
        CHECK(std::norm(spec.amplitudes[i]) == doctest::Approx(expected).epsilon(1e-6));
        if (std::abs(p) < 3.0)
            CHECK(std::norm(spec.amplitudes[i]) ==
                  doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("fourier_transform: plane wave concentrates on its lattice mode") {
    const Grid1D g = make_grid(-10.0, 10.0, 256);
    const double k0 = g.dp() * 5.0;
    const MomentumSpectrum spec = fourier_transform(plane_wave(g, k0));
    double off_mode = 0.0;
    double on_mode = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) {
        if (std::abs(spec.momenta[i] - k0) < 0.5 * g.dp())
            on_mode = std::norm(spec.amplitudes[i]);
        else
            off_mode = std::max(off_mode, std::norm(spec.amplitudes[i]));
    }
    CHECK(on_mode > 0.0);
    CHECK(off_mode < 1e-24 * on_mode);
}

TEST_CASE("fourier_transform: Parseval and round-trip") {
    const Grid1D g = make_grid(-15.0, 15.0, 512);
    const WaveState s = gaussian_packet(g, 1.3, 0.9, 2.0);
    const MomentumSpectrum spec = fourier_transform(s);

    double norm_p = 0.0;
    for (const auto& a : spec.amplitudes) norm_p += std::norm(a);
    norm_p *= spec.dp();
    CHECK(norm_p == doctest::Approx(norm_squared(s)).epsilon(1e-10));

    const WaveState back = inverse_fourier_transform(spec);
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(std::abs(back.components[0][k] - s.components[0][k]) < 1e-12);
}

TEST_CASE("fourier_transform rejects spinor input") {
    const Grid1D g = make_grid(-10.0, 10.0, 64);
    const WaveState sp =
        spinor_from_packet(gaussian_packet(g, 0.0, 1.0), {1.0, 0.0}, {0.0, 0.0});
    CHECK_THROWS_AS(fourier_transform(sp), std::invalid_argument);
}

TEST_CASE("potential: linear Stern-Gerlach profiles and guard values") {
    const Grid1D g = make_grid(-8.0, 8.0, 64);
    const Potential p = Potential::linear_sg(2.0, +1);
    const auto up = p.values(g, 0);
    const auto down = p.values(g, 1);
    for (std::size_t k = 0; k < g.n; ++k) {
        CHECK(up[k] == doctest::Approx(-2.0 * g.node(k)).epsilon(1e-15));
        CHECK(down[k] == doctest::Approx(+2.0 * g.node(k)).epsilon(1e-15));
    }
    CHECK(p.max_abs(g) == doctest::Approx(16.0).epsilon(1e-12));
    CHECK(Potential::free_space().max_abs(g) == 0.0);
    CHECK_THROWS_AS(Potential::linear_sg(-1.0, +1), std::invalid_argument);
    CHECK_THROWS_AS(Potential::linear_sg(1.0, 0), std::invalid_argument);
}

TEST_CASE("cubic interpolation reproduces nodes and smooth fields") {
    const Grid1D g = make_grid(-4.0, 4.0, 256);
    RealField f;
    f.grid = g;
    f.values.resize(g.n);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double x = g.node(k);
        f.values[k] = std::sin(2.0 * pi * x / g.length() * 3.0);
    }
    for (std::size_t k = 0; k < g.n; k += 17) CHECK(f.at(g.node(k)) == f.values[k]);
    // Catmull-Rom is third order: ~ (dx)^3 |f'''| error at this resolution
    for (double x = -3.9; x < 3.9; x += 0.173) {
        const double exact = std::sin(2.0 * pi * x / g.length() * 3.0);
        CHECK(std::abs(f.at(x) - exact) < 1e-5);
    }
}
