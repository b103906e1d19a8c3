#include "exspec/core.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "exspec/error.hpp"

namespace exspec {

TimeSeries::TimeSeries(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t t = 0; t < values_.size(); ++t) {
    if (!std::isfinite(values_[t])) {
      throw InputError(fmt::format("non-finite observation at index {}", t));
    }
  }
}

TailSet TailSet::upper(double a) {
  if (!(a > 0.0)) throw ParameterError("upper ray endpoint must be positive");
  return TailSet(UpperRay{a});
}

TailSet TailSet::lower(double a) {
  if (!(a > 0.0)) throw ParameterError("lower ray endpoint must be positive");
  return TailSet(LowerRay{a});
}

TailSet TailSet::interval(double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw ParameterError("interval needs 0 < lo < hi");
  return TailSet(Interval{lo, hi});
}

TailSet TailSet::predicate(std::function<bool(double)> test, std::string label) {
  if (!test) throw ParameterError("empty predicate");
  return TailSet(Predicate{std::move(test), std::move(label)});
}

namespace {
template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;
}  // namespace

bool TailSet::contains(double x) const {
  return std::visit(Overloaded{
                        [x](const UpperRay& s) { return x > s.a; },
                        [x](const LowerRay& s) { return x < -s.a; },
                        [x](const Interval& s) { return x > s.lo && x <= s.hi; },
                        [x](const Predicate& s) { return s.test(x); },
                    },
                    kind_);
}

std::string TailSet::describe() const {
  return std::visit(Overloaded{
                        [](const UpperRay& s) { return fmt::format("upper:{}", s.a); },
                        [](const LowerRay& s) { return fmt::format("lower:{}", s.a); },
                        [](const Interval& s) { return fmt::format("interval:{}:{}", s.lo, s.hi); },
                        [](const Predicate& s) { return fmt::format("predicate:{}", s.label); },
                    },
                    kind_);
}

std::size_t IndicatorSeries::events() const noexcept {
  std::size_t k = 0;
  for (auto b : bits) k += b;
  return k;
}

FrequencyGrid FrequencyGrid::fourier(std::size_t n_ref, std::vector<std::size_t> indices) {
  FrequencyGrid g;
  g.fourier_ = true;
  g.n_ref_ = n_ref;
  g.freqs_.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const std::size_t j = indices[i];
    if (j == 0 || 2 * j >= n_ref) {
      throw ParameterError(fmt::format("Fourier index {} outside (0, pi) for n = {}", j, n_ref));
    }
    if (i > 0 && j <= indices[i - 1]) throw ParameterError("Fourier indices must increase");
    g.freqs_.push_back(fourier_frequency(j, n_ref));
  }
  g.indices_ = std::move(indices);
  return g;
}

FrequencyGrid FrequencyGrid::explicit_list(std::vector<double> freqs) {
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    if (!(freqs[i] > 0.0 && freqs[i] < kPi)) {
      throw ParameterError(fmt::format("frequency {} outside (0, pi)", freqs[i]));
    }
    if (i > 0 && !(freqs[i] > freqs[i - 1])) throw ParameterError("frequencies must increase strictly");
  }
  FrequencyGrid g;
  g.freqs_ = std::move(freqs);
  return g;
}

void EstimatorConfig::validate(std::size_t n) const {
  if (std::isnan(m) || m < 0.0) throw ParameterError("m must be positive");
  if (r >= n) throw ParameterError(fmt::format("lag-window truncation r = {} must be < n = {}", r, n));
  if (2 * s >= n) throw ParameterError(fmt::format("smoothing half-width s = {} must be < n/2", s));
  if (!(q > 0.0 && q < 1.0)) throw ParameterError("quantile q must lie in (0, 1)");
}

std::size_t quantile_rank(double q, std::size_t n) {
  // q·n carries representation error (0.98·100 is not exactly 98); absorb it
  // before taking the ceiling.
  const double qn = q * static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::ceil(qn - 1e-9 * std::max(1.0, qn)));
  return std::clamp<std::size_t>(k, 1, n);
}

Threshold threshold_from_quantile(const TimeSeries& series, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError(fmt::format("quantile q = {} outside (0, 1)", q));
  const std::size_t n = series.size();
  if (n == 0) throw InputError("empty series");
  if (static_cast<double>(n) * (1.0 - q) < 1.0 - 1e-9) {
    throw ParameterError(
        fmt::format("n = {} too short for q = {}: need n >= 1/(1-q) to expect an exceedance", n, q));
  }
  std::vector<double> work(series.values().begin(), series.values().end());
  const std::size_t k = quantile_rank(q, n);
  auto kth = work.begin() + static_cast<std::ptrdiff_t>(k - 1);
  std::nth_element(work.begin(), kth, work.end());
  Threshold thr;
  thr.a_m = *kth;
  thr.q = q;
  thr.exceed_count = static_cast<std::size_t>(
      std::count_if(series.values().begin(), series.values().end(), [&](double x) { return x > thr.a_m; }));
  return thr;
}

IndicatorSeries indicators(const TimeSeries& series, const TailSet& set, const Threshold& thr) {
  if (!(thr.a_m > 0.0)) {
    throw ParameterError(fmt::format("threshold a_m = {} must be positive to scale observations", thr.a_m));
  }
  IndicatorSeries ind;
  ind.threshold = thr;
  ind.set = set;
  ind.bits.resize(series.size());
  std::size_t hits = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const bool in = set.contains(series[t] / thr.a_m);
    ind.bits[t] = in ? 1 : 0;
    hits += in;
  }
  ind.p0_hat = series.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(series.size());
  return ind;
}

double canonical_m(const IndicatorSeries& ind) {
  const std::size_t k = ind.events();
  if (k == 0) throw DegenerateDataError("no exceedances: canonical m = n / sum(I_t) undefined");
  return static_cast<double>(ind.size()) / static_cast<double>(k);
}

FrequencyGrid fourier_grid(std::size_t n) {
  if (n < 2) throw InputError("Fourier grid needs n >= 2");
  std::vector<std::size_t> idx;
  for (std::size_t j = 1; 2 * j < n; ++j) idx.push_back(j);
  return FrequencyGrid::fourier(n, std::move(idx));
}

std::size_t fourier_index_at_or_above(double lambda, std::size_t n) {
  const double x = lambda * static_cast<double>(n) / (2.0 * kPi);
  auto j = static_cast<std::size_t>(std::max(0.0, std::floor(x)));
  while (fourier_frequency(j, n) < lambda) ++j;
  while (j > 0 && fourier_frequency(j - 1, n) >= lambda) --j;
  return j;
}

FrequencyGrid smoothing_grid(double lambda, std::size_t n, std::size_t s) {
  if (!(lambda > 0.0 && lambda < kPi)) throw ParameterError("smoothing centre must lie in (0, pi)");
  if (n < 2) throw InputError("smoothing grid needs n >= 2");
  const std::size_t j0 = fourier_index_at_or_above(lambda, n);
  // Valid indices j satisfy 1 <= j and 2j < n.
  const std::size_t max_hi = (n - 1) / 2;
  if (j0 < 1 + s || j0 + s > max_hi) {
    const std::size_t room_lo = j0 >= 1 ? j0 - 1 : 0;
    const std::size_t room_hi = max_hi >= j0 ? max_hi - j0 : 0;
    throw ParameterError(fmt::format(
        "smoothing window of half-width {} around lambda = {} leaves (0, pi) for n = {}; max s here is {}", s,
        lambda, n, std::min(room_lo, room_hi)));
  }
  std::vector<std::size_t> idx;
  idx.reserve(2 * s + 1);
  for (std::size_t j = j0 - s; j <= j0 + s; ++j) idx.push_back(j);
  return FrequencyGrid::fourier(n, std::move(idx));
}

}  // namespace exspec
