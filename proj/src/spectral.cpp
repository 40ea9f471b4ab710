#include "pilotwave/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

namespace pilotwave {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
} // namespace

// Transforms run in-place on an fftw_malloc'd buffer so plan alignment always
// matches; callers' vectors are copied in and out (cheap next to the FFT).
FourierWorkspace::FourierWorkspace(std::size_t n) : n_(n) {
    buf_ = fftw_alloc_complex(n);
    if (!buf_) throw std::bad_alloc();
    auto* b = static_cast<fftw_complex*>(buf_);
    plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) {
        fftw_free(buf_);
        throw std::runtime_error("FourierWorkspace: planning failed");
    }
}

FourierWorkspace::~FourierWorkspace() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
    fftw_free(buf_);
}

void FourierWorkspace::execute(void* plan, ComplexField& a) const {
    if (a.size() != n_) throw std::invalid_argument("FourierWorkspace: size mismatch");
    std::memcpy(buf_, a.data(), n_ * sizeof(fftw_complex));
    fftw_execute(static_cast<fftw_plan>(plan));
    std::memcpy(a.data(), buf_, n_ * sizeof(fftw_complex));
}

void FourierWorkspace::forward(ComplexField& a) const { execute(plan_fwd_, a); }

void FourierWorkspace::backward(ComplexField& a) const { execute(plan_bwd_, a); }

ComplexField spectral_derivative(const Grid1D& grid, const ComplexField& psi,
                                 FourierWorkspace& ws) {
    ComplexField d = psi;
    ws.forward(d);
    const std::size_t n = grid.n;
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = (j == n / 2) ? 0.0 : grid.fft_wavenumber(j);
        d[j] *= complexd{0.0, k * inv_n};
    }
    ws.backward(d);
    return d;
}

MomentumSpectrum fourier_transform(const WaveState& state) {
    if (!state.is_scalar())
        throw std::invalid_argument("fourier_transform: spinor input not supported");
    const Grid1D& g = state.grid;
    const std::size_t n = g.n;

    ComplexField bins = state.components[0];
    FourierWorkspace ws(n);
    ws.forward(bins);

    MomentumSpectrum spec;
    spec.grid = g;
    spec.time = state.time;
    spec.momenta.resize(n);
    spec.amplitudes.resize(n);
    const double scale = g.dx / std::sqrt(two_pi);
    const auto half = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
        // output index i corresponds to signed mode j = i - n/2
        const double j_signed = static_cast<double>(i) - static_cast<double>(half);
        const std::size_t bin = (i + half) % n;  // FFT bin holding that mode
        const double p = g.dp() * j_signed;
        spec.momenta[i] = p;
        // DFT phases are relative to node 0; shift to absolute position x_min.
        spec.amplitudes[i] = scale * bins[bin] * std::polar(1.0, -p * g.x_min);
    }
    return spec;
}

WaveState inverse_fourier_transform(const MomentumSpectrum& spectrum) {
    const Grid1D& g = spectrum.grid;
    const std::size_t n = g.n;
    if (spectrum.amplitudes.size() != n || spectrum.momenta.size() != n)
        throw std::invalid_argument("inverse_fourier_transform: malformed spectrum");

    const auto half = n / 2;
    const double scale = std::sqrt(two_pi) / (g.dx * static_cast<double>(n));
    ComplexField bins(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t bin = (i + half) % n;
        const double p = spectrum.momenta[i];
        bins[bin] = scale * spectrum.amplitudes[i] * std::polar(1.0, p * g.x_min);
    }
    FourierWorkspace ws(n);
    ws.backward(bins);
    return WaveState::scalar(g, std::move(bins), spectrum.time);
}

} // namespace pilotwave
