#pragma once

// Shared domain types: observations, tail sets, empirical thresholds,
// exceedance indicators and frequency grids.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace exspec {

inline constexpr double kPi = std::numbers::pi;

/// Ordered real-valued observations. All values are finite.
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }
  double operator[](std::size_t t) const noexcept { return values_[t]; }

 private:
  std::vector<double> values_;
};

struct UpperRay {
  double a;  ///< (a, ∞)
};
struct LowerRay {
  double a;  ///< (-∞, -a)
};
struct Interval {
  double lo;  ///< (lo, hi]
  double hi;
};
struct Predicate {
  std::function<bool(double)> test;
  std::string label;
};

/// A set bounded away from zero, tested against scaled observations X_t / a_m.
class TailSet {
 public:
  using Kind = std::variant<UpperRay, LowerRay, Interval, Predicate>;

  static TailSet upper(double a = 1.0);
  static TailSet lower(double a = 1.0);
  static TailSet interval(double lo, double hi);
  static TailSet predicate(std::function<bool(double)> test, std::string label);

  bool contains(double scaled) const;
  const Kind& kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  explicit TailSet(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct Threshold {
  double a_m = 0.0;             ///< order statistic x_(⌈qn⌉)
  double q = 0.0;
  std::size_t exceed_count = 0; ///< #{t : x_t > a_m}
};

struct IndicatorSeries {
  std::vector<std::uint8_t> bits;
  double p0_hat = 0.0;
  Threshold threshold;
  TailSet set = TailSet::upper();

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t events() const noexcept;
};

/// Frequencies in (0, π). Fourier grids remember the index j of each 2πj/n_ref.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;

  static FrequencyGrid fourier(std::size_t n_ref, std::vector<std::size_t> indices);
  static FrequencyGrid explicit_list(std::vector<double> freqs);

  std::span<const double> freqs() const noexcept { return freqs_; }
  std::span<const std::size_t> indices() const noexcept { return indices_; }
  bool is_fourier() const noexcept { return fourier_; }
  std::size_t n_ref() const noexcept { return n_ref_; }
  std::size_t size() const noexcept { return freqs_.size(); }
  bool empty() const noexcept { return freqs_.empty(); }
  double operator[](std::size_t i) const noexcept { return freqs_[i]; }

 private:
  std::vector<double> freqs_;
  std::vector<std::size_t> indices_;
  bool fourier_ = false;
  std::size_t n_ref_ = 0;
};

struct EstimatorConfig {
  double m = 0.0;      ///< normalization m_n; <= 0 means "canonical n / Σ I_t"
  std::size_t r = 0;   ///< lag-window truncation
  std::size_t s = 0;   ///< smoothing half-width
  double q = 0.98;     ///< threshold quantile

  /// Throws ParameterError unless m > 0 (or canonical), r < n and 2s < n.
  void validate(std::size_t n) const;
};

/// 2πj/n, computed the same way everywhere so that grids compare exactly.
inline double fourier_frequency(std::size_t j, std::size_t n) {
  return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
}

/// Index of the ⌈q·n⌉-th ascending order statistic (1-based rank).
std::size_t quantile_rank(double q, std::size_t n);

Threshold threshold_from_quantile(const TimeSeries& series, double q);

IndicatorSeries indicators(const TimeSeries& series, const TailSet& set, const Threshold& thr);

/// n / Σ I_t, the normalization that makes P̂_m(A) = 1.
double canonical_m(const IndicatorSeries& ind);

/// {2πj/n : j = 1, ..., ⌈n/2⌉ - 1}.
FrequencyGrid fourier_grid(std::size_t n);

/// Smallest j with 2πj/n ≥ λ.
std::size_t fourier_index_at_or_above(double lambda, std::size_t n);

/// The 2s+1 Fourier frequencies λ_0 + 2πj/n, |j| ≤ s, around λ_0 = min{2πj/n ≥ λ}.
/// Throws ParameterError when the window leaves (0, π).
FrequencyGrid smoothing_grid(double lambda, std::size_t n, std::size_t s);

}  // namespace exspec
