#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "exspec/error.hpp"
#include "exspec/estimators.hpp"
#include "exspec/oracles.hpp"
#include "exspec/simulate.hpp"

using namespace exspec;

namespace {
bool same(const TimeSeries& a, const TimeSeries& b) {
  return std::equal(a.values().begin(), a.values().end(), b.values().begin(), b.values().end());
}
NoiseSpec pareto(double alpha, double p) { return NoiseSpec{ParetoBalanced{alpha, p}}; }
NoiseSpec student(double nu) { return NoiseSpec{StudentT{nu}}; }
}  // namespace

TEST(Noise, ParetoSupport) {
  const auto z = sample_noise(pareto(3.0, 1.0), 20000, 1);
  EXPECT_GE(*std::min_element(z.values().begin(), z.values().end()), 1.0);
  const auto w = sample_noise(pareto(2.0, 0.5), 20000, 2);
  for (double v : w.values()) EXPECT_GE(std::abs(v), 1.0);
}

TEST(Noise, ParetoTailProportions) {
  const double alpha = 3.0, p = 0.7;
  const auto z = sample_noise(pareto(alpha, p), 1000000, 99);
  for (double x : {2.0, 4.0, 8.0}) {
    const double frac =
        static_cast<double>(std::count_if(z.values().begin(), z.values().end(), [x](double v) { return v > x; })) /
        1e6;
    const double expected = p * std::pow(x, -alpha);
    EXPECT_LT(std::abs(frac / expected - 1.0), 0.05) << "x=" << x << " frac=" << frac;
  }
}

TEST(Noise, StudentMedianNearZero) {
  auto v = sample_noise(student(3.0), 100000, 17).values();
  std::vector<double> w(v.begin(), v.end());
  std::nth_element(w.begin(), w.begin() + 50000, w.end());
  EXPECT_LT(std::abs(w[50000]), 0.02);
}

TEST(Noise, Determinism) {
  EXPECT_TRUE(same(sample_noise(student(3.0), 1000, 5), sample_noise(student(3.0), 1000, 5)));
  EXPECT_FALSE(same(sample_noise(student(3.0), 1000, 5), sample_noise(student(3.0), 1000, 6)));
  EXPECT_TRUE(same(sample_noise(pareto(1.5, 0.3), 1000, 5), sample_noise(pareto(1.5, 0.3), 1000, 5)));
}

TEST(Noise, Errors) {
  EXPECT_THROW(sample_noise(pareto(0.0, 0.5), 10, 1), ParameterError);
  EXPECT_THROW(sample_noise(pareto(2.0, 1.5), 10, 1), ParameterError);
  EXPECT_THROW(sample_noise(student(-1.0), 10, 1), ParameterError);
  EXPECT_THROW(sample_noise(student(3.0), 0, 1), ParameterError);
}

TEST(Noise, TailDescriptors) {
  EXPECT_DOUBLE_EQ(student(4.0).tail_index(), 4.0);
  EXPECT_DOUBLE_EQ(student(4.0).upper_weight(), 0.5);
  EXPECT_DOUBLE_EQ(pareto(2.5, 0.2).upper_weight(), 0.2);
}

TEST(Arma11, NearZeroPhiReproducesNoise) {
  const Arma11Spec spec{1e-9, 0.0, student(3.0)};
  const std::size_t n = 5000, burn = 1000;
  const auto x = simulate_arma11(spec, n, 3, burn);
  // The same stream drives the noise of the recursion.
  const auto z = sample_noise(spec.noise, n + burn, 3);
  double maxz = 0.0, maxdiff = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    maxz = std::max(maxz, std::abs(z[t + burn]));
    maxdiff = std::max(maxdiff, std::abs(x[t] - z[t + burn]));
  }
  EXPECT_LT(maxdiff, 1e-6 * maxz);
}

TEST(Arma11, MatchesHandRecursion) {
  const Arma11Spec spec{0.6, -0.3, pareto(2.0, 0.5)};
  const std::size_t n = 300, burn = 50;
  const auto x = simulate_arma11(spec, n, 8, burn);
  const auto z = sample_noise(spec.noise, n + burn, 8);
  double prev_x = 0.0, prev_z = 0.0;
  for (std::size_t t = 0; t < n + burn; ++t) {
    const double cur = spec.phi * prev_x + z[t] + spec.theta * prev_z;
    if (t >= burn) ASSERT_DOUBLE_EQ(x[t - burn], cur) << t;
    prev_x = cur;
    prev_z = z[t];
  }
}

TEST(Arma11, DeterminismAndErrors) {
  const Arma11Spec spec{0.8, 0.1, student(3.0)};
  EXPECT_TRUE(same(simulate_arma11(spec, 2000, 1), simulate_arma11(spec, 2000, 1)));
  EXPECT_THROW(simulate_arma11(Arma11Spec{1.0, 0.1, student(3.0)}, 10, 1), ParameterError);
  EXPECT_THROW(simulate_arma11(Arma11Spec{-1.2, 0.1, student(3.0)}, 10, 1), ParameterError);
  EXPECT_THROW(simulate_arma11(Arma11Spec{0.0, 0.1, student(3.0)}, 10, 1), ParameterError);
}

TEST(Arma11, Phi08Theta01ExceedanceCount) {
  const auto x = simulate_arma11(Arma11Spec{0.8, 0.1, student(3.0)}, 31757, 1);
  const auto thr = threshold_from_quantile(x, 0.98);
  EXPECT_NEAR(static_cast<double>(thr.exceed_count), 0.02 * 31757, 2.0);
}

TEST(DefaultBurnin, Formula) {
  EXPECT_EQ(default_burnin(0.5), 1000u);
  EXPECT_EQ(default_burnin(0.99), 5000u);
  EXPECT_EQ(default_burnin(-0.999), 50000u);
}

TEST(StochasticVolatility, ZeroSdIsNoise) {
  const SvSpec spec{0.9, 0.0, student(3.0)};
  const auto x = simulate_sv(spec, 4000, 12, 0);
  const auto z = sample_noise(spec.noise, 4000, 12);
  EXPECT_TRUE(same(x, z));
}

TEST(StochasticVolatility, ExtremogramNearZero) {
  const SvSpec spec{0.9, 0.3, student(3.0)};
  const auto x = simulate_sv(spec, 1 << 15, 4);
  const auto ind = indicators(x, TailSet::upper(), threshold_from_quantile(x, 0.98));
  const auto ex = sample_extremogram(ind, 5);
  for (std::size_t h = 1; h <= 5; ++h) EXPECT_LT(ex.rho[h], 0.1) << h;
}

TEST(StochasticVolatility, DeterminismAndErrors) {
  const SvSpec spec{0.5, 0.4, pareto(3.0, 0.5)};
  EXPECT_TRUE(same(simulate_sv(spec, 500, 2), simulate_sv(spec, 500, 2)));
  EXPECT_THROW(simulate_sv(SvSpec{1.0, 0.3, student(3.0)}, 10, 1), ParameterError);
  EXPECT_THROW(simulate_sv(SvSpec{0.5, -0.3, student(3.0)}, 10, 1), ParameterError);
}

TEST(MaxMa, SingleCoefficientIsNoise) {
  const MaxMaSpec spec{{1.0}, student(3.0)};
  const auto x = simulate_max_ma(spec, 3000, 21);
  const auto z = sample_noise(spec.noise, 3000, 21);
  EXPECT_TRUE(same(x, z));
}

TEST(MaxMa, MatchesHandMaximum) {
  const MaxMaSpec spec{{1.0, 0.5, -0.25}, pareto(2.0, 0.5)};
  ASSERT_EQ(max_ma_truncation(spec), 2u);
  const std::size_t n = 400;
  const auto x = simulate_max_ma(spec, n, 4);
  const auto z = sample_noise(spec.noise, n + 2, 4);
  for (std::size_t t = 0; t < n; ++t) {
    const double expect = std::max({z[t + 2], 0.5 * z[t + 1], -0.25 * z[t]});
    ASSERT_DOUBLE_EQ(x[t], expect) << t;
  }
}

TEST(MaxMa, TruncationCriterion) {
  const auto filter = arma11_psi(0.8, 0.1, 400);
  MaxMaSpec spec{filter.listed(), student(3.0), 1e-6};
  const std::size_t s = max_ma_truncation(spec);
  double head = 0.0, tail = 0.0;
  for (std::size_t i = 0; i < spec.psi.size(); ++i) {
    const double w = 0.5 * std::pow(std::abs(spec.psi[i]), 3.0);
    (i <= s ? head : tail) += w;
  }
  EXPECT_LT(tail, 1e-6 * head);
  double tail_prev = tail + 0.5 * std::pow(std::abs(spec.psi[s]), 3.0);
  EXPECT_GE(tail_prev, 1e-6 * (head - 0.5 * std::pow(std::abs(spec.psi[s]), 3.0)));
}

TEST(MaxMa, Errors) {
  EXPECT_THROW(simulate_max_ma(MaxMaSpec{{0.0, 0.0}, student(3.0)}, 10, 1), DegenerateDataError);
  EXPECT_THROW(simulate_max_ma(MaxMaSpec{{}, student(3.0)}, 10, 1), DegenerateDataError);
  EXPECT_THROW(simulate_max_ma(MaxMaSpec{{1.0}, student(3.0), 0.0}, 10, 1), ParameterError);
}

TEST(MaxMa, Determinism) {
  const MaxMaSpec spec{arma11_psi(0.8, 0.1, 200).listed(), student(3.0)};
  EXPECT_TRUE(same(simulate_max_ma(spec, 5000, 9), simulate_max_ma(spec, 5000, 9)));
}

TEST(DeriveSeed, DistinctStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}
