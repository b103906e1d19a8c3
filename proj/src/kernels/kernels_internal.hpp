#pragma once

#include <span>

#include "exspec/kernels.hpp"

namespace exspec::kernels::detail {

void dft_at_serial(std::span<const double> x, std::span<const double> freqs, ComplexSums& out);
void dft_at_omp(std::span<const double> x, std::span<const double> freqs, ComplexSums& out);

void dft_fourier_serial(std::span<const double> x, std::span<const std::size_t> indices, ComplexSums& out);
void dft_fourier_omp(std::span<const double> x, std::span<const std::size_t> indices, ComplexSums& out);

void lagged_products_serial(std::span<const double> x, std::span<double> out);
void lagged_products_omp(std::span<const double> x, std::span<double> out);

}  // namespace exspec::kernels::detail
