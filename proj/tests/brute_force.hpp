#pragma once

// Term-by-term reference sums in extended precision. Nothing here calls the
// library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace exspec::test {

using Wide = long double;

/// cos(x + kλ) and sin(x + kλ) for k = 0..count-1. Each step is one complex
/// rotation; every 32nd entry is recomputed from cosl/sinl so the recurrence
/// never drifts further than a few dozen extended-precision roundings.
struct Phasors {
  std::vector<Wide> c, s;
};

inline Phasors phasor_table(std::int64_t count, double x, double lambda) {
  Phasors out;
  out.c.resize(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  out.s.resize(out.c.size());
  const Wide cl = std::cos(Wide(lambda)), sl = std::sin(Wide(lambda));
  for (std::int64_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    if (k % 32 == 0) {
      const Wide a = Wide(x) + Wide(k) * Wide(lambda);
      out.c[i] = std::cos(a);
      out.s[i] = std::sin(a);
    } else {
      out.c[i] = out.c[i - 1] * cl - out.s[i - 1] * sl;
      out.s[i] = out.s[i - 1] * cl + out.c[i - 1] * sl;
    }
  }
  return out;
}

inline double direct_cos_arith(std::int64_t n, double x, double lambda) {
  const Phasors ph = phasor_table(n, x, lambda);
  Wide acc = 0.0L;
  for (std::int64_t k = 0; k < n; ++k) acc += ph.c[k];
  return static_cast<double>(acc);
}

inline double direct_sin_arith(std::int64_t n, double x, double lambda) {
  const Phasors ph = phasor_table(n, x, lambda);
  Wide acc = 0.0L;
  for (std::int64_t k = 0; k < n; ++k) acc += ph.s[k];
  return static_cast<double>(acc);
}

inline double direct_k_weighted(std::int64_t n, double lambda, bool cosine) {
  const Phasors ph = phasor_table(n, 0.0, lambda);
  Wide acc = 0.0L;
  for (std::int64_t k = 1; k < n; ++k) acc += Wide(k) * (cosine ? ph.c[k] : ph.s[k]);
  return static_cast<double>(acc);
}

/// cosine: Σ_{k=0}^{n-1} p^k cos(kλ); sine: Σ_{k=1}^{n-1} p^k sin(kλ)
inline double direct_geometric(std::int64_t n, double p, double lambda, bool cosine) {
  const Phasors ph = phasor_table(n, 0.0, lambda);
  Wide acc = 0.0L;
  Wide pk = 1.0L;
  for (std::int64_t k = 0; k < n; ++k) {
    acc += pk * (cosine ? ph.c[k] : ph.s[k]);
    pk *= p;
  }
  return static_cast<double>(acc);
}

enum class Cross { CsSame, CsCross, Cc, Ss };

inline double direct_cross(std::int64_t n, std::int64_t h, double lambda, double omega, Cross kind) {
  if (kind == Cross::CsSame) omega = lambda;
  // index t holds angle t·λ (resp. t·ω), t = 0..n
  const Phasors L = phasor_table(n + 1, 0.0, lambda);
  const Phasors O = phasor_table(n + 1, 0.0, omega);
  Wide acc = 0.0L;
  for (std::int64_t s = 1; s <= n - h; ++s) {
    switch (kind) {
      case Cross::CsSame:
      case Cross::CsCross: acc += L.c[s] * O.s[s + h] + L.c[s + h] * O.s[s]; break;
      case Cross::Cc: acc += L.c[s] * O.c[s + h] + L.c[s + h] * O.c[s]; break;
      case Cross::Ss: acc += L.s[s] * O.s[s + h] + L.s[s + h] * O.s[s]; break;
    }
  }
  return static_cast<double>(acc);
}

inline double direct_tail_weighted(std::int64_t n, std::int64_t r, double lambda, double x, bool cosine) {
  const Phasors ph = phasor_table(n, x, lambda);
  Wide acc = 0.0L;
  for (std::int64_t h = r + 1; h <= n - 1; ++h) acc += Wide(n - h) * (cosine ? ph.c[h] : ph.s[h]);
  return static_cast<double>(acc);
}

/// |Σ_{t=1}^{n} x_t e^{-itλ}|² with long-double accumulation.
inline double direct_power(const std::vector<double>& x, double lambda) {
  long double re = 0.0L, im = 0.0L;
  for (std::size_t t = 0; t < x.size(); ++t) {
    const long double a = static_cast<long double>(lambda) * static_cast<long double>(t + 1);
    re += x[t] * std::cos(a);
    im -= x[t] * std::sin(a);
  }
  return static_cast<double>(re * re + im * im);
}

/// Linear-process extremogram for A = (1, ∞) by plain summation over
/// a long explicit coefficient list.
inline double direct_linear_rho(const std::vector<double>& psi, double alpha, double p, std::size_t h) {
  const double q = 1.0 - p;
  auto pos = [](double c) { return c > 0.0 ? c : 0.0; };
  auto neg = [](double c) { return c < 0.0 ? -c : 0.0; };
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    den += p * std::pow(pos(psi[i]), alpha) + q * std::pow(neg(psi[i]), alpha);
    const double other = i + h < psi.size() ? psi[i + h] : 0.0;
    num += p * std::pow(std::min(pos(psi[i]), pos(other)), alpha) + q * std::pow(std::min(neg(psi[i]), neg(other)), alpha);
  }
  return num / den;
}

inline std::vector<double> direct_arma_psi(double phi, double theta, std::size_t count) {
  std::vector<double> psi(count);
  psi[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j) psi[j] = std::pow(phi, static_cast<double>(j - 1)) * (phi + theta);
  return psi;
}

}  // namespace exspec::test
