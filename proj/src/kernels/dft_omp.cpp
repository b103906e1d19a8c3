#include <cmath>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "exspec/core.hpp"
#include "kernels_internal.hpp"

namespace exspec::kernels::detail {

// One frequency per iteration; each inner sum runs in the same order as the
// serial kernel, so the outputs are bitwise identical to it.
void dft_at_omp(std::span<const double> x, std::span<const double> freqs, ComplexSums& out) {
  const auto nf = static_cast<std::ptrdiff_t>(freqs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < nf; ++k) {
    double re = 0.0;
    double im = 0.0;
    const double lambda = freqs[static_cast<std::size_t>(k)];
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (x[t] == 0.0) continue;
      const double angle = lambda * static_cast<double>(t + 1);
      re += x[t] * std::cos(angle);
      im -= x[t] * std::sin(angle);
    }
    out.re[static_cast<std::size_t>(k)] = re;
    out.im[static_cast<std::size_t>(k)] = im;
  }
}

void dft_fourier_omp(std::span<const double> x, std::span<const std::size_t> indices, ComplexSums& out) {
  const std::size_t n = x.size();
  const double step = 2.0 * kPi / static_cast<double>(n);
  const auto nf = static_cast<std::ptrdiff_t>(indices.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < nf; ++k) {
    const std::size_t j = indices[static_cast<std::size_t>(k)];
    double re = 0.0;
    double im = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      if (x[t] == 0.0) continue;
      const double angle = step * static_cast<double>((j * (t + 1)) % n);
      re += x[t] * std::cos(angle);
      im -= x[t] * std::sin(angle);
    }
    out.re[static_cast<std::size_t>(k)] = re;
    out.im[static_cast<std::size_t>(k)] = im;
  }
}

void lagged_products_omp(std::span<const double> x, std::span<double> out) {
  const auto lags = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t h = 0; h < lags; ++h) {
    double acc = 0.0;
    const auto hh = static_cast<std::size_t>(h);
    for (std::size_t t = 0; t + hh < x.size(); ++t) acc += x[t] * x[t + hh];
    out[hh] = acc;
  }
}

}  // namespace exspec::kernels::detail

namespace exspec::kernels {

void configure_threads_from_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("EXSPEC_THREADS")) {
    const int k = std::atoi(env);
    if (k > 0) omp_set_num_threads(k);
  }
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace exspec::kernels
