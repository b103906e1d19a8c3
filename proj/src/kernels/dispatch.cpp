#include <fmt/format.h>

#include "exspec/error.hpp"
#include "kernels_internal.hpp"

namespace exspec::kernels {

ComplexSums dft_at(std::span<const double> x, std::span<const double> freqs, Backend backend) {
  ComplexSums out{std::vector<double>(freqs.size()), std::vector<double>(freqs.size())};
  if (backend == Backend::Serial) {
    detail::dft_at_serial(x, freqs, out);
  } else {
    detail::dft_at_omp(x, freqs, out);
  }
  return out;
}

ComplexSums dft_fourier(std::span<const double> x, std::span<const std::size_t> indices, Backend backend) {
  ComplexSums out{std::vector<double>(indices.size()), std::vector<double>(indices.size())};
  if (x.empty()) throw InputError("dft_fourier: empty input");
  if (backend == Backend::Serial) {
    detail::dft_fourier_serial(x, indices, out);
  } else {
    detail::dft_fourier_omp(x, indices, out);
  }
  return out;
}

std::vector<double> lagged_products(std::span<const double> x, std::size_t max_lag, Backend backend) {
  if (max_lag >= x.size()) {
    throw ParameterError(fmt::format("lagged_products: max lag {} must be < n = {}", max_lag, x.size()));
  }
  std::vector<double> out(max_lag + 1);
  if (backend == Backend::Serial) {
    detail::lagged_products_serial(x, out);
  } else {
    detail::lagged_products_omp(x, out);
  }
  return out;
}

}  // namespace exspec::kernels
