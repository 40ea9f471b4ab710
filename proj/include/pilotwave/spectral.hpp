#pragma once

#include "pilotwave/state.hpp"

namespace pilotwave {

/// Forward/backward FFT pair on one grid, wrapping FFTW plans. The transforms
/// are the raw unnormalized DFT; callers apply their own scaling. One
/// workspace serves repeated transforms of equal length.
class FourierWorkspace {
public:
    explicit FourierWorkspace(std::size_t n);
    ~FourierWorkspace();

    FourierWorkspace(const FourierWorkspace&) = delete;
    FourierWorkspace& operator=(const FourierWorkspace&) = delete;

    std::size_t size() const { return n_; }

    /// In-place sum_k a_k exp(-2*pi*i*j*k/n).
    void forward(ComplexField& a) const;
    /// In-place sum_j a_j exp(+2*pi*i*j*k/n), unnormalized (scale by 1/n for inverse).
    void backward(ComplexField& a) const;

private:
    void execute(void* plan, ComplexField& a) const;

    std::size_t n_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    void* buf_ = nullptr;  // fftw-aligned scratch
};

/// Spectral derivative d/dx of a periodic field. The Nyquist mode is dropped
/// (its derivative has no consistent sign on a real lattice).
ComplexField spectral_derivative(const Grid1D& grid, const ComplexField& psi,
                                 FourierWorkspace& ws);

/// Wave function in the momentum representation, nodes ordered by increasing
/// momentum p_j = 2*pi*j/L for j in [-n/2, n/2).
struct MomentumSpectrum {
    Grid1D grid;                  // the originating spatial grid
    std::vector<double> momenta;
    ComplexField amplitudes;
    double time = 0.0;

    double dp() const { return grid.dp(); }
};

/// Unitary Fourier transform of a scalar state:
///   psi_hat(p) = dx/sqrt(2*pi) * sum_k psi(x_k) exp(-i p x_k).
/// Parseval holds: sum |psi_hat|^2 dp == sum |psi|^2 dx. Spinor input is
/// rejected (momentum analysis is scalar-only).
MomentumSpectrum fourier_transform(const WaveState& state);

/// Inverse of fourier_transform; reproduces the input to machine precision.
WaveState inverse_fourier_transform(const MomentumSpectrum& spectrum);

} // namespace pilotwave
