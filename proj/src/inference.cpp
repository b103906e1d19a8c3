#include "exspec/inference.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "exspec/error.hpp"
#include "exspec/simulate.hpp"

namespace exspec {

double Band::coverage(const std::vector<double>& values) const {
  if (values.size() != lower.size()) throw ParameterError("coverage: size mismatch between band and values");
  if (values.empty()) return 0.0;
  std::size_t inside = 0;
  for (std::size_t k = 0; k < values.size(); ++k) inside += (values[k] >= lower[k] && values[k] <= upper[k]);
  return static_cast<double>(inside) / static_cast<double>(values.size());
}

double surrogate_half_width(const WeightWindow& window) { return 1.96 * std::sqrt(window.sum_of_squares()); }

Band surrogate_band_around(const FrequencyGrid& grid, const std::vector<double>& centre, const WeightWindow& window) {
  if (centre.size() != grid.size()) throw ParameterError("surrogate band: centre values do not match the grid");
  const double h = surrogate_half_width(window);
  Band b;
  b.grid = grid;
  b.method = BandMethod::Surrogate;
  b.lower.resize(centre.size());
  b.upper.resize(centre.size());
  for (std::size_t k = 0; k < centre.size(); ++k) {
    const double lo = centre[k] * (1.0 - h);
    const double hi = centre[k] * (1.0 + h);
    b.lower[k] = std::min(lo, hi);
    b.upper[k] = std::max(lo, hi);
  }
  return b;
}

Band surrogate_band(const SpectralEstimate& curve, const WeightWindow& window) {
  if (curve.kind != SpectralKind::Smoothed) {
    throw ParameterError("surrogate band is defined for smoothed periodograms only");
  }
  return surrogate_band_around(curve.grid, curve.values, window);
}

std::pair<std::size_t, std::size_t> envelope_ranks(std::size_t replicates, double level) {
  if (!(level > 0.0 && level < 1.0)) throw ParameterError(fmt::format("band level {} outside (0, 1)", level));
  const double b1 = static_cast<double>(replicates + 1);
  auto lo = static_cast<std::size_t>(std::ceil(level / 2.0 * b1 - 1e-9));
  auto hi = static_cast<std::size_t>(std::floor((1.0 - level / 2.0) * b1 + 1e-9));
  lo = std::clamp<std::size_t>(lo, 1, replicates);
  hi = std::clamp<std::size_t>(hi, lo, replicates);
  return {lo, hi};
}

Band permutation_band(const TimeSeries& series, const EstimatorConfig& config, const TailSet& set,
                      const WeightWindow& window, const FrequencyGrid& grid, std::size_t replicates,
                      std::uint64_t seed, double level) {
  if (replicates < 2) throw ParameterError(fmt::format("permutation band needs B >= 2 replicates, got {}", replicates));
  if (grid.empty()) throw ParameterError("permutation band: empty grid");
  const auto [lo_rank, hi_rank] = envelope_ranks(replicates, level);
  const std::size_t n = series.size();

  // Permutations preserve the multiset, hence the threshold and event count;
  // check degeneracy and the grid once up front.
  const Threshold thr = threshold_from_quantile(series, config.q);
  if (indicators(series, set, thr).events() == 0) {
    throw DegenerateDataError("permutation band: no exceedances in the data");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) smoothing_grid(grid[k], n, window.half_width());

  std::vector<std::vector<double>> draws(replicates);
  std::exception_ptr failure;
  const auto reps = static_cast<std::ptrdiff_t>(replicates);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t b = 0; b < reps; ++b) {
    try {
      std::vector<double> shuffled(series.values().begin(), series.values().end());
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      const TimeSeries perm(std::move(shuffled));
      const IndicatorSeries ind = indicators(perm, set, threshold_from_quantile(perm, config.q));
      draws[static_cast<std::size_t>(b)] = smooth_full_ordinates(standardized_ordinates_full(ind), grid, window);
    } catch (...) {
#pragma omp critical(exspec_permutation_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  Band band;
  band.grid = grid;
  band.method = BandMethod::Permutation;
  band.replicates = replicates;
  band.lower.resize(grid.size());
  band.upper.resize(grid.size());
  std::vector<double> column(replicates);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (std::size_t b = 0; b < replicates; ++b) column[b] = draws[b][k];
    std::sort(column.begin(), column.end());
    band.lower[k] = column[lo_rank - 1];
    band.upper[k] = column[hi_rank - 1];
  }
  return band;
}

ExpDiagnostics exponential_diagnostics(std::vector<double> ratios) {
  if (ratios.empty()) throw ParameterError("exponential diagnostics need at least one ordinate");
  std::sort(ratios.begin(), ratios.end());
  const auto n = static_cast<double>(ratios.size());
  ExpDiagnostics d;
  d.count = ratios.size();
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double f = 1.0 - std::exp(-std::max(0.0, ratios[i]));
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d.ks_stat = std::max({d.ks_stat, above, below});
  }
  const double mean = std::accumulate(ratios.begin(), ratios.end(), 0.0) / n;
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  d.mean_ratio = mean;
  d.cv = mean != 0.0 ? std::sqrt(ss / n) / mean : 0.0;
  return d;
}

ExpDiagnostics exponential_diagnostics(const SpectralEstimate& ordinates, const SpectralDensityOracle& oracle) {
  std::vector<double> ratios(ordinates.values.size());
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    const double f = oracle(ordinates.grid[k]);
    if (!(f > 0.0)) {
      throw DegenerateDataError(fmt::format("oracle spectral density is {} at lambda = {}", f, ordinates.grid[k]));
    }
    ratios[k] = ordinates.values[k] / f;
  }
  return exponential_diagnostics(std::move(ratios));
}

FrequencyGrid diagnostic_fourier_grid(std::size_t n, std::size_t max_count) {
  if (n < 3) throw InputError("diagnostic grid needs n >= 3");
  const std::size_t available = (n - 1) / 2;
  const std::size_t count = std::min(available, max_count);
  if (count == 0) throw ParameterError("diagnostic grid: no frequencies requested");
  std::vector<std::size_t> idx;
  idx.reserve(count);
  // Centred strata of equal width in index.
  for (std::size_t i = 0; i < count; ++i) {
    const double pos = (static_cast<double>(i) + 0.5) * static_cast<double>(available) / static_cast<double>(count);
    const auto j = std::clamp<std::size_t>(static_cast<std::size_t>(pos) + 1, 1, available);
    if (idx.empty() || j > idx.back()) idx.push_back(j);
  }
  return FrequencyGrid::fourier(n, std::move(idx));
}

double kolmogorov_critical_value(std::size_t sample_size, double level) {
  if (sample_size == 0) throw ParameterError("Kolmogorov critical value needs N >= 1");
  if (!(level > 0.0 && level < 1.0)) throw ParameterError("significance level outside (0, 1)");
  auto survival = [](double x) {
    double acc = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * x * x);
      acc += (k % 2 == 1 ? term : -term);
      if (term < 1e-18) break;
    }
    return 2.0 * acc;
  };
  double lo = 0.2;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > level) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) / std::sqrt(static_cast<double>(sample_size));
}

}  // namespace exspec
