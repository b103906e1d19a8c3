#include "exspec/estimators.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "exspec/error.hpp"
#include "exspec/kernels.hpp"

namespace exspec {
namespace {

std::size_t require_events(const IndicatorSeries& ind, const char* what) {
  const std::size_t k = ind.events();
  if (k == 0) throw DegenerateDataError(fmt::format("{}: no exceedances, estimate undefined", what));
  return k;
}

std::vector<double> as_doubles(const IndicatorSeries& ind, Centering centering) {
  const double shift = centering == Centering::Centered ? ind.p0_hat : 0.0;
  std::vector<double> x(ind.size());
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = static_cast<double>(ind.bits[t]) - shift;
  return x;
}

bool fft_applicable(const FrequencyGrid& grid, std::size_t n) {
  return grid.is_fourier() && grid.n_ref() == n;
}

/// |Σ x_t e^{-itλ}|² on the grid.
std::vector<double> squared_modulus(std::span<const double> x, const FrequencyGrid& grid, TransformPath path) {
  const std::size_t n = x.size();
  if (path == TransformPath::Auto) {
    path = fft_applicable(grid, n) && grid.size() > 32 ? TransformPath::Fft : TransformPath::DirectParallel;
  }
  std::vector<double> out(grid.size());
  if (path == TransformPath::Fft) {
    if (!fft_applicable(grid, n)) throw ParameterError("FFT path needs a Fourier grid of the series length");
    const std::vector<double> full = kernels::power_spectrum_fft(x);
    for (std::size_t k = 0; k < grid.size(); ++k) out[k] = full[grid.indices()[k]];
    return out;
  }
  const auto backend = path == TransformPath::DirectSerial ? kernels::Backend::Serial : kernels::Backend::OpenMP;
  const kernels::ComplexSums sums = fft_applicable(grid, n) ? kernels::dft_fourier(x, grid.indices(), backend)
                                                            : kernels::dft_at(x, grid.freqs(), backend);
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = sums.re[k] * sums.re[k] + sums.im[k] * sums.im[k];
  return out;
}

}  // namespace

std::vector<double> Extremogram::standard_errors() const {
  std::vector<double> se(rho.size(), 0.0);
  if (n_events == 0) return se;
  for (std::size_t h = 0; h < rho.size(); ++h) {
    se[h] = std::sqrt(std::max(0.0, rho[h] * (1.0 - rho[h])) / static_cast<double>(n_events));
  }
  return se;
}

WeightWindow WeightWindow::daniell(std::size_t s) {
  WeightWindow w;
  w.weights_.assign(2 * s + 1, 1.0 / static_cast<double>(2 * s + 1));
  return w;
}

WeightWindow WeightWindow::from_weights(std::vector<double> weights) {
  if (weights.empty() || weights.size() % 2 == 0) {
    throw ParameterError(fmt::format("weight window needs an odd number of weights, got {}", weights.size()));
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ParameterError("weights must be finite and non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw ParameterError("weights must have a positive sum");
  for (double& w : weights) w /= total;
  WeightWindow out;
  out.weights_ = std::move(weights);
  return out;
}

double WeightWindow::sum_of_squares() const noexcept {
  double acc = 0.0;
  for (double w : weights_) acc += w * w;
  return acc;
}

double p_hat(const IndicatorSeries& ind, double m) {
  if (!(m > 0.0)) throw ParameterError("p_hat: m must be positive");
  if (ind.size() == 0) throw InputError("p_hat: empty indicator series");
  return m / static_cast<double>(ind.size()) * static_cast<double>(ind.events());
}

Extremogram sample_extremogram(const IndicatorSeries& ind, std::size_t max_lag) {
  const std::size_t n = ind.size();
  if (max_lag >= n) throw ParameterError(fmt::format("extremogram lag {} must be < n = {}", max_lag, n));
  const std::size_t k = require_events(ind, "sample_extremogram");
  const std::vector<double> x = as_doubles(ind, Centering::Raw);
  const std::vector<double> joint = kernels::lagged_products(x, max_lag, kernels::Backend::OpenMP);
  Extremogram ex;
  ex.n_events = k;
  ex.rho.resize(max_lag + 1);
  ex.rho[0] = 1.0;
  for (std::size_t h = 1; h <= max_lag; ++h) ex.rho[h] = joint[h] / static_cast<double>(k);
  return ex;
}

SineCosinePair sine_cosine_transforms(const IndicatorSeries& ind, double lambda, double m, Centering centering) {
  if (!(lambda > 0.0 && lambda < kPi)) throw ParameterError("transform frequency must lie in (0, pi)");
  if (!(m > 0.0)) throw ParameterError("m must be positive");
  const std::vector<double> x = as_doubles(ind, centering);
  const double freq[1] = {lambda};
  const kernels::ComplexSums s = kernels::dft_at(x, freq, kernels::Backend::Serial);
  const double scale = std::sqrt(2.0 * m / static_cast<double>(ind.size()));
  return {scale * s.re[0], -scale * s.im[0], lambda};
}

SpectralEstimate periodogram(const IndicatorSeries& ind, const FrequencyGrid& grid, double m, TransformPath path,
                             Centering centering) {
  if (grid.empty()) throw ParameterError("periodogram: empty frequency grid");
  if (!(m > 0.0)) throw ParameterError("periodogram: m must be positive");
  if (ind.size() == 0) throw InputError("periodogram: empty indicator series");
  const std::vector<double> x = as_doubles(ind, centering);
  std::vector<double> v = squared_modulus(x, grid, path);
  const double scale = m / static_cast<double>(ind.size());
  for (double& e : v) e *= scale;
  return {grid, std::move(v), SpectralKind::RawPeriodogram};
}

SpectralEstimate standardized_periodogram(const IndicatorSeries& ind, const FrequencyGrid& grid, TransformPath path) {
  if (grid.empty()) throw ParameterError("standardized_periodogram: empty frequency grid");
  const std::size_t k = require_events(ind, "standardized_periodogram");
  const std::vector<double> x = as_doubles(ind, Centering::Centered);
  std::vector<double> v = squared_modulus(x, grid, path);
  for (double& e : v) e /= static_cast<double>(k);
  return {grid, std::move(v), SpectralKind::StandardizedPeriodogram};
}

std::vector<double> standardized_ordinates_full(const IndicatorSeries& ind) {
  const std::size_t k = require_events(ind, "standardized_ordinates_full");
  std::vector<double> v = kernels::power_spectrum_fft(as_doubles(ind, Centering::Centered));
  for (double& e : v) e /= static_cast<double>(k);
  return v;
}

LagWindowEstimate lag_window_estimate(const IndicatorSeries& ind, double lambda, std::size_t r, double m) {
  const std::size_t n = ind.size();
  if (r >= n) throw ParameterError(fmt::format("lag-window truncation r = {} must be < n = {}", r, n));
  if (!(m > 0.0)) throw ParameterError("lag_window_estimate: m must be positive");
  const std::size_t k = require_events(ind, "lag_window_estimate");
  const double scale = m / static_cast<double>(n);
  const std::vector<double> cov =
      kernels::lagged_products(as_doubles(ind, Centering::Centered), r, kernels::Backend::OpenMP);
  double value = scale * static_cast<double>(k);
  for (std::size_t h = 1; h <= r; ++h) value += 2.0 * std::cos(lambda * static_cast<double>(h)) * scale * cov[h];
  LagWindowEstimate out;
  out.value = value;
  out.standardized = value / (scale * static_cast<double>(k));
  out.negative = value < 0.0;
  return out;
}

bool lag_window_rate_suspect(std::size_t n, std::size_t r, double m) {
  const auto rr = static_cast<double>(r);
  return rr * rr > static_cast<double>(n) / m;
}

WeightWindow daniell_window(std::size_t s) { return WeightWindow::daniell(s); }

double smoothed_periodogram(const IndicatorSeries& ind, double lambda, const WeightWindow& window) {
  const FrequencyGrid local = smoothing_grid(lambda, ind.size(), window.half_width());
  const SpectralEstimate ord = standardized_periodogram(ind, local, TransformPath::DirectParallel);
  double acc = 0.0;
  for (std::size_t i = 0; i < ord.values.size(); ++i) acc += window.weights()[i] * ord.values[i];
  return acc;
}

std::vector<double> smooth_full_ordinates(std::span<const double> full, const FrequencyGrid& grid,
                                          const WeightWindow& window) {
  const std::size_t n = full.size();
  const std::size_t s = window.half_width();
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const FrequencyGrid local = smoothing_grid(grid[k], n, s);
    double acc = 0.0;
    for (std::size_t i = 0; i < local.size(); ++i) acc += window.weights()[i] * full[local.indices()[i]];
    out[k] = acc;
  }
  return out;
}

SpectralEstimate smoothed_curve(const IndicatorSeries& ind, const FrequencyGrid& grid, const WeightWindow& window) {
  const std::vector<double> full = standardized_ordinates_full(ind);
  return {grid, smooth_full_ordinates(full, grid, window), SpectralKind::Smoothed};
}

FrequencyGrid smoothable_fourier_grid(std::size_t n, std::size_t s) {
  if (n < 2) throw InputError("smoothable grid needs n >= 2");
  std::vector<std::size_t> idx;
  const std::size_t max_hi = (n - 1) / 2;
  for (std::size_t j = s + 1; j + s <= max_hi; ++j) idx.push_back(j);
  return FrequencyGrid::fourier(n, std::move(idx));
}

}  // namespace exspec
