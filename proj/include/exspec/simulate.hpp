#pragma once

// Seeded generators for regularly varying example processes: i.i.d. noise,
// ARMA(1,1), stochastic volatility and max-moving averages. Output depends
// only on (spec, n, seed); workers needing independent streams derive
// distinct seeds with derive_seed().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "exspec/core.hpp"

namespace exspec {

/// Z = S·U^{-1/α}, S = +1 with probability p, else -1. |Z| ≥ 1.
struct ParetoBalanced {
  double alpha = 3.0;
  double p = 0.5;
};

/// Student t with ν degrees of freedom; tail index ν, symmetric (p = 1/2).
struct StudentT {
  double nu = 3.0;
};

struct NoiseSpec {
  std::variant<ParetoBalanced, StudentT> family = StudentT{};

  double tail_index() const;
  double upper_weight() const;  ///< p in the tail balance condition
  std::string describe() const;
  void validate() const;
};

struct Arma11Spec {
  double phi = 0.8;
  double theta = 0.1;
  NoiseSpec noise;
};

/// X_t = exp(V_t)·Z_t with V_t = a·V_{t-1} + sd·ε_t, ε_t standard normal.
struct SvSpec {
  double logvol_ar = 0.9;
  double logvol_sd = 0.3;  ///< innovation standard deviation of V
  NoiseSpec noise;
};

struct MaxMaSpec {
  std::vector<double> psi{1.0};
  NoiseSpec noise;
  double truncation_eps = 1e-6;
};

/// SplitMix64 step: decorrelated child seeds from (master, stream).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept;

std::size_t default_burnin(double ar_coefficient);

TimeSeries sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed);

/// Burn-in defaults to default_burnin(φ).
TimeSeries simulate_arma11(const Arma11Spec& spec, std::size_t n, std::uint64_t seed,
                           std::optional<std::size_t> burnin = std::nullopt);

TimeSeries simulate_sv(const SvSpec& spec, std::size_t n, std::uint64_t seed,
                       std::optional<std::size_t> burnin = std::nullopt);

/// Smallest s with Σ_{i>s} w_i < eps·Σ_{i≤s} w_i, w_i = p(ψ_i^+)^α + q(ψ_i^-)^α.
std::size_t max_ma_truncation(const MaxMaSpec& spec);

TimeSeries simulate_max_ma(const MaxMaSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace exspec
