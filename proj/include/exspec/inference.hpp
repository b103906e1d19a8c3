#pragma once

// Uncertainty for smoothed extremal periodograms: the variance-proxy band,
// permutation envelopes, and exponential-limit diagnostics of ordinates.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "exspec/core.hpp"
#include "exspec/estimators.hpp"
#include "exspec/oracles.hpp"

namespace exspec {

enum class BandMethod { Surrogate, Permutation };

struct Band {
  FrequencyGrid grid;
  std::vector<double> lower;
  std::vector<double> upper;
  BandMethod method = BandMethod::Surrogate;
  std::size_t replicates = 0;  ///< permutation bands only

  /// Fraction of grid points with lower ≤ values ≤ upper.
  double coverage(const std::vector<double>& values) const;
};

struct ExpDiagnostics {
  double ks_stat = 0.0;     ///< sup |F_N(x) - (1 - e^{-x})|
  double mean_ratio = 0.0;
  double cv = 0.0;          ///< population standard deviation over mean
  std::size_t count = 0;
};

/// 1.96·√(Σ w²): the relative half-width of the surrogate band.
double surrogate_half_width(const WeightWindow& window);

/// values·(1 ∓ 1.96·√(Σ w²)) around a smoothed curve.
Band surrogate_band(const SpectralEstimate& curve, const WeightWindow& window);

/// The same relative band around arbitrary centre values (e.g. an oracle f_A).
Band surrogate_band_around(const FrequencyGrid& grid, const std::vector<double>& centre, const WeightWindow& window);

/// 1-based ranks ⌈(level/2)(B+1)⌉ and ⌊(1-level/2)(B+1)⌋, clamped to [1, B].
std::pair<std::size_t, std::size_t> envelope_ranks(std::size_t replicates, double level);

/// Pointwise envelope of smoothed standardized periodograms over B random
/// permutations of the raw series (thresholds recomputed per replicate).
/// Replicate b uses seed derive_seed(seed, b), so the band does not depend on
/// the number of worker threads.
Band permutation_band(const TimeSeries& series, const EstimatorConfig& config, const TailSet& set,
                      const WeightWindow& window, const FrequencyGrid& grid, std::size_t replicates,
                      std::uint64_t seed, double level);

/// Ordinates divided by the oracle should be i.i.d. Exp(1) in the limit.
ExpDiagnostics exponential_diagnostics(const SpectralEstimate& ordinates, const SpectralDensityOracle& oracle);

/// Rescaled-sample version: KS distance of the values to Exp(1), mean and CV.
ExpDiagnostics exponential_diagnostics(std::vector<double> ratios);

/// At most max_count Fourier indices of n, evenly spaced in index over 1..⌈n/2⌉-1.
FrequencyGrid diagnostic_fourier_grid(std::size_t n, std::size_t max_count = 500);

/// Asymptotic Kolmogorov critical value c_level/√N (c_0.05 ≈ 1.358, c_0.01 ≈ 1.628).
double kolmogorov_critical_value(std::size_t sample_size, double level);

}  // namespace exspec
