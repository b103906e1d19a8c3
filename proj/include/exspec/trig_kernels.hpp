#pragma once

// Closed-form trigonometric sums. Each kernel evaluates a finite (or
// geometric) sum without looping over its terms; empty sums are 0.
// Denominators of the form sin(·/2) below 1e-8 in magnitude raise
// SingularityError instead of silently losing accuracy.

#include <cstdint>
#include <optional>

namespace exspec::trig {

enum class Flavor { Cos, Sin };

/// Marks the n = ∞ form of geometric_sum.
inline constexpr std::int64_t kInfinite = -1;

/// Σ_{k=0}^{n-1} cos(x + kλ)
double cos_arith_sum(std::int64_t n, double x, double lambda);
/// Σ_{k=0}^{n-1} sin(x + kλ)
double sin_arith_sum(std::int64_t n, double x, double lambda);

/// Σ_{k=1}^{n-1} k·cos(kλ) or Σ_{k=1}^{n-1} k·sin(kλ).
double k_weighted_sum(std::int64_t n, double lambda, Flavor flavor);

/// Cos: Σ_{k=0}^{n-1} p^k cos(kλ).  Sin: Σ_{k=1}^{n-1} p^k sin(kλ).
/// n = kInfinite drops the p^n terms and requires |p| < 1.
double geometric_sum(std::int64_t n, double p, double lambda, Flavor flavor);

/// Symmetric lagged products summed over s = 1..n-h:
///   CsSame: cos(λs)sin(λ(s+h)) + cos(λ(s+h))sin(λs)
///   CsCross: cos(λs)sin(ω(s+h)) + cos(λ(s+h))sin(ωs)
///   Cc:      cos(λs)cos(ω(s+h)) + cos(λ(s+h))cos(ωs)
///   Ss:      sin(λs)sin(ω(s+h)) + sin(λ(s+h))sin(ωs)
/// CsSame ignores ω. The cross kinds require λ ≠ ω.
enum class CrossKind { CsSame, CsCross, Cc, Ss };
double cross_lag_sum(std::int64_t n, std::int64_t h, double lambda, double omega, CrossKind kind);

/// Σ_{h=r+1}^{n-1} (n-h)·cos(λh + x)  (or sin).
double tail_weighted_sum(std::int64_t n, std::int64_t r, double lambda, double x, Flavor flavor);

/// Σ_{h=1}^{n} cos(x + hλ); 0 for n = 0.
double shifted_cos_sum(std::int64_t n, double x, double lambda);

/// Σ_{h=1}^{n} ρ^h cos(x + hλ) with 0 ≤ ρ < 1; n = kInfinite for the full series.
double geometric_shifted_cos_sum(std::int64_t n, double ratio, double x, double lambda);

}  // namespace exspec::trig
