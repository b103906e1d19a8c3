#pragma once

// Empirical estimators built on exceedance indicators: P̂_m(A), the sample
// extremogram, sine/cosine transforms, the extremal periodogram and its
// standardized, lag-window and smoothed variants.

#include <cstddef>
#include <span>
#include <vector>

#include "exspec/core.hpp"

namespace exspec {

struct Extremogram {
  std::vector<double> rho;    ///< ρ(0..H), ρ(0) = 1
  std::size_t n_events = 0;   ///< Σ I_t; 0 for theoretical extremograms

  std::size_t max_lag() const noexcept { return rho.empty() ? 0 : rho.size() - 1; }
  /// Binomial surrogate √(ρ(1-ρ)/n_events) per lag; zeros when n_events = 0.
  std::vector<double> standard_errors() const;
};

enum class SpectralKind { RawPeriodogram, StandardizedPeriodogram, LagWindow, Smoothed };

struct SpectralEstimate {
  FrequencyGrid grid;
  std::vector<double> values;
  SpectralKind kind = SpectralKind::RawPeriodogram;
};

struct SineCosinePair {
  double alpha = 0.0;
  double beta = 0.0;
  double lambda = 0.0;
};

struct LagWindowEstimate {
  double value = 0.0;         ///< f̂_nA(λ)
  double standardized = 0.0;  ///< f̂_nA(λ) / P̂_m(A)
  bool negative = false;      ///< truncated cosine series dipped below zero
};

/// Non-negative weights w(-s..s) summing to one.
class WeightWindow {
 public:
  static WeightWindow daniell(std::size_t s);
  /// Renormalizes; needs an odd count, non-negative entries and a positive sum.
  static WeightWindow from_weights(std::vector<double> weights);

  std::size_t half_width() const noexcept { return (weights_.size() - 1) / 2; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// w(j) for -s ≤ j ≤ s.
  double at(std::ptrdiff_t j) const { return weights_.at(static_cast<std::size_t>(j + static_cast<std::ptrdiff_t>(half_width()))); }
  double sum_of_squares() const noexcept;

 private:
  std::vector<double> weights_;
};

enum class TransformPath {
  Auto,            ///< FFT for large Fourier grids, direct otherwise
  DirectSerial,
  DirectParallel,
  Fft,             ///< Fourier grids only
};

enum class Centering { Centered, Raw };

double p_hat(const IndicatorSeries& ind, double m);

Extremogram sample_extremogram(const IndicatorSeries& ind, std::size_t max_lag);

SineCosinePair sine_cosine_transforms(const IndicatorSeries& ind, double lambda, double m,
                                      Centering centering = Centering::Centered);

/// I_nA(λ) = (m/n)|Σ Ĩ_t e^{-itλ}|² on every grid point.
SpectralEstimate periodogram(const IndicatorSeries& ind, const FrequencyGrid& grid, double m,
                             TransformPath path = TransformPath::Auto, Centering centering = Centering::Centered);

/// |Σ Ĩ_t e^{-itλ}|² / Σ I_t; free of m.
SpectralEstimate standardized_periodogram(const IndicatorSeries& ind, const FrequencyGrid& grid,
                                          TransformPath path = TransformPath::Auto);

/// Standardized ordinates at every DFT index j = 0..n-1 (FFT).
std::vector<double> standardized_ordinates_full(const IndicatorSeries& ind);

LagWindowEstimate lag_window_estimate(const IndicatorSeries& ind, double lambda, std::size_t r, double m);

/// True when r² > n/m, where the lag-window consistency rate m r² = O(n) is in doubt.
bool lag_window_rate_suspect(std::size_t n, std::size_t r, double m);

WeightWindow daniell_window(std::size_t s);

/// Σ_j w(j) Ĩ_nA(λ_j) over smoothing_grid(λ, n, s), standardized by P̂_m(A).
double smoothed_periodogram(const IndicatorSeries& ind, double lambda, const WeightWindow& window);

/// Same estimator on many frequencies, reusing one FFT of the indicators.
SpectralEstimate smoothed_curve(const IndicatorSeries& ind, const FrequencyGrid& grid, const WeightWindow& window);

/// Smooths precomputed full-grid ordinates (length n) at each grid frequency.
std::vector<double> smooth_full_ordinates(std::span<const double> full, const FrequencyGrid& grid,
                                          const WeightWindow& window);

/// Fourier frequencies of n at which a half-width-s window stays inside (0, π).
FrequencyGrid smoothable_fourier_grid(std::size_t n, std::size_t s);

}  // namespace exspec
