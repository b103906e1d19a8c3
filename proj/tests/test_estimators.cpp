#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "brute_force.hpp"
#include "exspec/error.hpp"
#include "exspec/estimators.hpp"
#include "exspec/kernels.hpp"
#include "exspec/oracles.hpp"
#include "exspec/simulate.hpp"

using namespace exspec;

namespace {

IndicatorSeries from_bits(std::vector<std::uint8_t> bits) {
  IndicatorSeries ind;
  std::size_t k = 0;
  for (auto b : bits) k += b;
  ind.p0_hat = static_cast<double>(k) / static_cast<double>(bits.size());
  ind.bits = std::move(bits);
  return ind;
}

IndicatorSeries random_indicators(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution b(p);
  std::vector<std::uint8_t> bits(n);
  for (auto& v : bits) v = b(rng);
  if (std::none_of(bits.begin(), bits.end(), [](auto v) { return v != 0; })) bits[n / 2] = 1;
  return from_bits(std::move(bits));
}

IndicatorSeries pipeline(const TimeSeries& x, double q = 0.98) {
  return indicators(x, TailSet::upper(), threshold_from_quantile(x, q));
}

std::vector<double> centered(const IndicatorSeries& ind) {
  std::vector<double> x(ind.size());
  for (std::size_t t = 0; t < x.size(); ++t) x[t] = ind.bits[t] - ind.p0_hat;
  return x;
}

}  // namespace

TEST(PHat, Examples) {
  auto ind = from_bits({0, 1, 0, 0, 1, 0, 0, 0, 0, 0});
  EXPECT_DOUBLE_EQ(p_hat(ind, canonical_m(ind)), 1.0);
  auto single = from_bits({0, 0, 0, 1, 0, 0});
  EXPECT_DOUBLE_EQ(p_hat(single, 6.0), 1.0);
  EXPECT_DOUBLE_EQ(p_hat(from_bits({0, 0, 0}), 17.0), 0.0);
  EXPECT_THROW(p_hat(ind, 0.0), ParameterError);
}

TEST(SampleExtremogram, HandCount) {
  const auto ind = from_bits({0, 1, 0, 1, 0, 1, 0, 1, 0, 1});
  const auto ex = sample_extremogram(ind, 4);
  EXPECT_DOUBLE_EQ(ex.rho[0], 1.0);
  EXPECT_DOUBLE_EQ(ex.rho[1], 0.0);
  EXPECT_DOUBLE_EQ(ex.rho[2], 0.8);
  EXPECT_DOUBLE_EQ(ex.rho[4], 0.6);
  EXPECT_EQ(ex.n_events, 5u);
  const auto se = ex.standard_errors();
  EXPECT_DOUBLE_EQ(se[2], std::sqrt(0.8 * 0.2 / 5.0));
}

TEST(SampleExtremogram, Errors) {
  EXPECT_THROW(sample_extremogram(from_bits({0, 0, 0, 0}), 1), DegenerateDataError);
  EXPECT_THROW(sample_extremogram(from_bits({0, 1, 0, 0}), 4), ParameterError);
}

// At a fixed quantile the i.i.d. ratio of counts estimates P(I_{t+h} = 1) = 1 - q,
// which only vanishes as q -> 1.
TEST(SampleExtremogram, IidNearExceedanceRate) {
  const auto x = sample_noise(NoiseSpec{StudentT{3.0}}, 1 << 15, 44);
  const auto ind = pipeline(x);
  const auto ex = sample_extremogram(ind, 5);
  const double se0 = std::sqrt(ind.p0_hat * (1.0 - ind.p0_hat) / static_cast<double>(ex.n_events));
  for (std::size_t h = 1; h <= 5; ++h) {
    EXPECT_LE(std::abs(ex.rho[h] - ind.p0_hat), 3.0 * se0) << h;
  }
}

TEST(SampleExtremogram, ArmaNearOracle) {
  const auto x = simulate_arma11(Arma11Spec{0.8, 0.1, NoiseSpec{StudentT{3.0}}}, 31757, 1);
  const auto ex = sample_extremogram(pipeline(x), 1);
  EXPECT_NEAR(ex.rho[1], arma11_extremogram_closed(0.8, 0.1, TailIndexSpec{3.0, 0.5}, 1), 0.1);
}

TEST(Transforms, ZeroBitsAndSingleEvent) {
  const auto zero = from_bits(std::vector<std::uint8_t>(16, 0));
  const auto p = sine_cosine_transforms(zero, 1.0, 1.0);
  EXPECT_EQ(p.alpha, 0.0);
  EXPECT_EQ(p.beta, 0.0);

  std::vector<std::uint8_t> bits(64, 0);
  bits[9] = 1;
  const auto one = from_bits(bits);
  const double m = canonical_m(one);
  for (std::size_t j : {1u, 5u, 31u}) {
    const auto sc = sine_cosine_transforms(one, fourier_frequency(j, 64), m);
    EXPECT_NEAR(sc.alpha * sc.alpha + sc.beta * sc.beta, 2.0 * m / 64.0, 1e-12);
  }
  EXPECT_THROW(sine_cosine_transforms(one, 0.0, m), ParameterError);
}

TEST(Transforms, PeriodogramIsHalfSumOfSquares) {
  const auto ind = random_indicators(777, 0.04, 1);
  const double m = 13.0;
  const auto grid = FrequencyGrid::explicit_list({0.2, 1.1, 2.2, 3.0});
  const auto per = periodogram(ind, grid, m, TransformPath::DirectSerial);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto sc = sine_cosine_transforms(ind, grid[k], m);
    EXPECT_NEAR(per.values[k], 0.5 * (sc.alpha * sc.alpha + sc.beta * sc.beta), 1e-12);
    EXPECT_NEAR(per.values[k], m / 777.0 * test::direct_power(centered(ind), grid[k]), 1e-10);
  }
}

TEST(Transforms, CenteringHasNoEffectAtFourierFrequencies) {
  const auto ind = random_indicators(1001, 0.05, 2);
  const auto grid = fourier_grid(1001);
  const double m = canonical_m(ind);
  const auto a = periodogram(ind, grid, m, TransformPath::DirectSerial, Centering::Centered);
  const auto b = periodogram(ind, grid, m, TransformPath::DirectSerial, Centering::Raw);
  for (std::size_t k = 0; k < grid.size(); ++k) ASSERT_NEAR(a.values[k], b.values[k], 1e-10);
  for (std::size_t j : {1u, 100u, 500u}) {
    const auto c = sine_cosine_transforms(ind, fourier_frequency(j, 1001), m, Centering::Centered);
    const auto r = sine_cosine_transforms(ind, fourier_frequency(j, 1001), m, Centering::Raw);
    EXPECT_NEAR(c.alpha, r.alpha, 1e-10);
    EXPECT_NEAR(c.beta, r.beta, 1e-10);
  }
}

TEST(Periodogram, SingleEventExample) {
  const auto ind = from_bits({0, 0, 1, 0, 0, 0, 0, 0});
  const auto grid = FrequencyGrid::fourier(8, {2});
  EXPECT_NEAR(periodogram(ind, grid, 8.0).values[0], 1.0, 1e-14);
  const auto std_all = standardized_periodogram(ind, fourier_grid(8));
  for (double v : std_all.values) EXPECT_NEAR(v, 1.0, 1e-14);
}

TEST(Periodogram, ZeroBitsAndErrors) {
  const auto zero = from_bits(std::vector<std::uint8_t>(32, 0));
  for (double v : periodogram(zero, fourier_grid(32), 3.0).values) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(standardized_periodogram(zero, fourier_grid(32)), DegenerateDataError);
  EXPECT_THROW(periodogram(zero, FrequencyGrid{}, 3.0), ParameterError);
  EXPECT_THROW(periodogram(zero, FrequencyGrid::explicit_list({1.0}), 1.0, TransformPath::Fft), ParameterError);
}

TEST(Periodogram, Parseval) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 300 + 97 * seed;
    const auto ind = random_indicators(n, 0.03, seed);
    const double m = 7.5;
    // Σ over the full DFT grid j = 0..n-1.
    const auto x = centered(ind);
    const auto full = kernels::power_spectrum_fft(x);
    double lhs = 0.0;
    for (double v : full) lhs += m / static_cast<double>(n) * v;
    double ss = 0.0;
    for (double v : x) ss += v * v;
    EXPECT_NEAR(lhs / (m * ss), 1.0, 1e-8);
  }
}

TEST(Periodogram, FftAndDirectAgree) {
  const auto ind = random_indicators(4096, 0.02, 5);
  const auto grid = fourier_grid(4096);
  const auto a = periodogram(ind, grid, 2.0, TransformPath::Fft);
  const auto b = periodogram(ind, grid, 2.0, TransformPath::DirectSerial);
  const auto c = periodogram(ind, grid, 2.0, TransformPath::DirectParallel);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    ASSERT_NEAR(a.values[k], b.values[k], 1e-10 * std::max(1.0, b.values[k]));
    ASSERT_EQ(b.values[k], c.values[k]);
  }
}

TEST(Standardized, MInvariance) {
  const auto ind = random_indicators(2000, 0.02, 6);
  const auto grid = fourier_grid(2000);
  const auto s = standardized_periodogram(ind, grid, TransformPath::DirectSerial);
  for (double m : {1.0, 17.3, 2000.0}) {
    const auto per = periodogram(ind, grid, m, TransformPath::DirectSerial);
    const double ph = p_hat(ind, m);
    for (std::size_t k = 0; k < grid.size(); ++k) ASSERT_NEAR(per.values[k] / ph, s.values[k], 1e-12 * std::max(1.0, s.values[k]));
  }
}

TEST(Standardized, IidMeanNearOne) {
  const auto x = sample_noise(NoiseSpec{StudentT{3.0}}, 1 << 14, 71);
  const auto s = standardized_periodogram(pipeline(x), fourier_grid(1 << 14));
  double mean = 0.0;
  for (double v : s.values) {
    ASSERT_GE(v, 0.0);
    mean += v;
  }
  mean /= static_cast<double>(s.values.size());
  EXPECT_NEAR(mean, 1.0, 0.1);
}

TEST(Standardized, ScaleInvariance) {
  const auto x = simulate_arma11(Arma11Spec{0.5, 0.2, NoiseSpec{StudentT{3.0}}}, 4096, 2);
  std::vector<double> scaled(x.values().begin(), x.values().end());
  for (double& v : scaled) v *= 3.7;
  const auto a = pipeline(x);
  const auto b = pipeline(TimeSeries(scaled));
  EXPECT_EQ(a.bits, b.bits);
  const auto grid = smoothable_fourier_grid(4096, 10);
  const auto w = daniell_window(10);
  EXPECT_EQ(smoothed_curve(a, grid, w).values, smoothed_curve(b, grid, w).values);
}

TEST(LagWindow, ZeroTruncation) {
  const auto ind = random_indicators(500, 0.05, 7);
  const double m = 9.0;
  const auto lw = lag_window_estimate(ind, 1.3, 0, m);
  EXPECT_DOUBLE_EQ(lw.value, p_hat(ind, m));
  EXPECT_DOUBLE_EQ(lw.standardized, 1.0);
  EXPECT_THROW(lag_window_estimate(ind, 1.0, 500, m), ParameterError);
}

TEST(LagWindow, MatchesDefinitionAndMInvariance) {
  const auto ind = random_indicators(800, 0.05, 8);
  const auto x = centered(ind);
  const std::size_t r = 12;
  const double lam = 0.9;
  double ref_std = 0.0;
  for (double m : {1.0, 5.5, 800.0}) {
    const double scale = m / 800.0;
    double f = scale * static_cast<double>(ind.events());
    for (std::size_t h = 1; h <= r; ++h) {
      double g = 0.0;
      for (std::size_t t = 0; t + h < x.size(); ++t) g += x[t] * x[t + h];
      f += 2.0 * std::cos(lam * static_cast<double>(h)) * scale * g;
    }
    const auto lw = lag_window_estimate(ind, lam, r, m);
    EXPECT_NEAR(lw.value, f, 1e-12);
    if (m == 1.0) ref_std = lw.standardized;
    EXPECT_NEAR(lw.standardized, ref_std, 1e-12);
  }
}

TEST(LagWindow, IidNearOne) {
  const auto x = sample_noise(NoiseSpec{StudentT{3.0}}, 1 << 15, 9);
  const auto ind = pipeline(x);
  EXPECT_NEAR(lag_window_estimate(ind, 1.0, 20, canonical_m(ind)).standardized, 1.0, 0.15);
}

TEST(LagWindow, ArmaNearClosedForm) {
  const auto x = simulate_arma11(Arma11Spec{0.8, 0.1, NoiseSpec{StudentT{3.0}}}, 31757, 3);
  const auto ind = pipeline(x);
  const double f = arma11_spectral_closed(0.8, 0.1, TailIndexSpec{3.0, 0.5}, 1.0);
  EXPECT_NEAR(lag_window_estimate(ind, 1.0, 50, canonical_m(ind)).standardized, f, 0.25);
}

TEST(LagWindow, RateWarning) {
  EXPECT_FALSE(lag_window_rate_suspect(10000, 10, 50.0));
  EXPECT_TRUE(lag_window_rate_suspect(10000, 20, 50.0));
}

TEST(Window, Daniell) {
  const auto w = daniell_window(2);
  ASSERT_EQ(w.weights().size(), 5u);
  for (double v : w.weights()) EXPECT_DOUBLE_EQ(v, 0.2);
  EXPECT_EQ(daniell_window(0).weights().size(), 1u);
  EXPECT_DOUBLE_EQ(daniell_window(0).at(0), 1.0);
  for (std::size_t s : {0u, 3u, 50u}) {
    const auto d = daniell_window(s);
    double sum = 0.0;
    for (double v : d.weights()) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-14);
    EXPECT_NEAR(d.sum_of_squares(), 1.0 / static_cast<double>(2 * s + 1), 1e-15);
  }
}

TEST(Window, CustomWeights) {
  const auto w = WeightWindow::from_weights({1.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(w.at(-1), 0.25);
  EXPECT_DOUBLE_EQ(w.at(0), 0.5);
  EXPECT_EQ(w.half_width(), 1u);
  EXPECT_THROW(WeightWindow::from_weights({1.0, 1.0}), ParameterError);
  EXPECT_THROW(WeightWindow::from_weights({1.0, -1.0, 1.0}), ParameterError);
  EXPECT_THROW(WeightWindow::from_weights({0.0, 0.0, 0.0}), ParameterError);
}

TEST(Smoothed, DaniellIsMeanOfOrdinates) {
  const auto ind = random_indicators(1000, 0.03, 10);
  const auto w = daniell_window(2);
  const double sm = smoothed_periodogram(ind, 1.0, w);
  const auto local = smoothing_grid(1.0, 1000, 2);
  const auto ord = standardized_periodogram(ind, local, TransformPath::DirectSerial);
  double mean = 0.0;
  for (double v : ord.values) mean += v / 5.0;
  EXPECT_NEAR(sm, mean, 1e-12);
  const auto [lo, hi] = std::minmax_element(ord.values.begin(), ord.values.end());
  EXPECT_LE(*lo, sm + 1e-15);
  EXPECT_GE(*hi, sm - 1e-15);
}

TEST(Smoothed, ConstantOrdinatesReproduced) {
  const std::vector<double> flat(200, 2.5);
  const auto grid = smoothable_fourier_grid(200, 4);
  const auto w = WeightWindow::from_weights({1, 2, 3, 4, 5, 4, 3, 2, 1});
  for (double v : smooth_full_ordinates(flat, grid, w)) EXPECT_NEAR(v, 2.5, 1e-14);
}

TEST(Smoothed, CurveMatchesPointwise) {
  const auto ind = random_indicators(3000, 0.02, 11);
  const auto w = daniell_window(7);
  const auto grid = smoothable_fourier_grid(3000, 7);
  const auto curve = smoothed_curve(ind, grid, w);
  EXPECT_EQ(curve.kind, SpectralKind::Smoothed);
  for (std::size_t k = 0; k < grid.size(); k += 53) {
    EXPECT_NEAR(curve.values[k], smoothed_periodogram(ind, grid[k], w), 1e-10);
  }
  EXPECT_THROW(smoothed_periodogram(ind, 0.001, w), ParameterError);
}

TEST(Smoothed, SmoothableGridBounds) {
  const auto g = smoothable_fourier_grid(100, 2);
  EXPECT_EQ(g.indices().front(), 3u);
  EXPECT_EQ(g.indices().back(), 47u);
  EXPECT_TRUE(smoothable_fourier_grid(10, 4).empty());
}
