#pragma once

// Transform kernels behind the estimators. Each data-parallel kernel has a
// serial reference and an OpenMP variant; the two must agree to rounding.
// Frequencies are evaluated independently, so results do not depend on the
// thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace exspec::kernels {

enum class Backend { Serial, OpenMP };

/// Re/Im parts of Σ_{t=1}^{n} x_t e^{-iλt}: re = Σ x_t cos(λt), im = -Σ x_t sin(λt).
struct ComplexSums {
  std::vector<double> re;
  std::vector<double> im;
};

/// Direct O(n) evaluation at arbitrary frequencies.
ComplexSums dft_at(std::span<const double> x, std::span<const double> freqs, Backend backend);

/// Direct evaluation at Fourier frequencies 2πj/n (n = x.size()), with the
/// phase j·t reduced modulo n before scaling so large t loses no accuracy.
ComplexSums dft_fourier(std::span<const double> x, std::span<const std::size_t> indices, Backend backend);

/// |Σ_{t=1}^{n} x_t e^{-2πijt/n}|² for j = 0..n-1 via FFTW.
std::vector<double> power_spectrum_fft(std::span<const double> x);

/// Σ_{t=1}^{n-h} x_t x_{t+h} for h = 0..max_lag.
std::vector<double> lagged_products(std::span<const double> x, std::size_t max_lag, Backend backend);

/// Sets the OpenMP thread count from EXSPEC_THREADS when present.
void configure_threads_from_env();

int max_threads();

}  // namespace exspec::kernels
