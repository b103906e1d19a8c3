// Serial reference kernels. Kept deliberately plain: these are the baseline
// the OpenMP and FFT paths are tested against.

#include <cmath>

#include "exspec/core.hpp"
#include "kernels_internal.hpp"

namespace exspec::kernels::detail {

void dft_at_serial(std::span<const double> x, std::span<const double> freqs, ComplexSums& out) {
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    out.re[k] = 0.0;
    out.im[k] = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t] == 0.0) continue;
      const double angle = freqs[k] * static_cast<double>(t + 1);
      out.re[k] += x[t] * std::cos(angle);
      out.im[k] -= x[t] * std::sin(angle);
    }
  }
}

void dft_fourier_serial(std::span<const double> x, std::span<const std::size_t> indices, ComplexSums& out) {
  const std::size_t n = x.size();
  const double step = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.re[k] = 0.0;
    out.im[k] = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (x[t] == 0.0) continue;
      const double angle = step * static_cast<double>((indices[k] * (t + 1)) % n);
      out.re[k] += x[t] * std::cos(angle);
      out.im[k] -= x[t] * std::sin(angle);
    }
  }
}

void lagged_products_serial(std::span<const double> x, std::span<double> out) {
  for (std::size_t h = 0; h < out.size(); ++h) {
    double acc = 0.0;
    for (std::size_t t = 0; t + h < x.size(); ++t) acc += x[t] * x[t + h];
    out[h] = acc;
  }
}

}  // namespace exspec::kernels::detail
