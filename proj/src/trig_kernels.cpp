#include "exspec/trig_kernels.hpp"

#include <cmath>

#include <fmt/format.h>

#include "exspec/error.hpp"

namespace exspec::trig {
namespace {

// Phases such as n·λ/2 reach ~1e4 rad; extended precision keeps their
// rounding below the size of the sums' leading terms.
using W = long double;

constexpr double kSingularTol = 1e-8;

W checked_half_sine(W angle, const char* what) {
  const W s = std::sin(angle / 2);
  if (std::abs(s) < kSingularTol) {
    throw SingularityError(
        fmt::format("{}: sin({}/2) = {} is numerically zero", what, static_cast<double>(angle), static_cast<double>(s)));
  }
  return s;
}

void require_nonnegative(std::int64_t n, const char* what) {
  if (n < 0) throw ParameterError(fmt::format("{}: negative term count {}", what, n));
}

W k_weighted_wide(std::int64_t n, W lambda, Flavor flavor) {
  if (n == 1) return 0;
  const W s = checked_half_sine(lambda, "k_weighted_sum");
  const W nn = static_cast<W>(n);
  const W s2 = 4 * s * s;
  if (flavor == Flavor::Cos) return nn * std::sin((2 * nn - 1) * lambda / 2) / (2 * s) - (1 - std::cos(nn * lambda)) / s2;
  return std::sin(nn * lambda) / s2 - nn * std::cos((2 * nn - 1) * lambda / 2) / (2 * s);
}

W arith_wide(std::int64_t n, W x, W lambda, Flavor flavor, const char* what) {
  if (n == 0) return 0;
  const W s = checked_half_sine(lambda, what);
  const W nn = static_cast<W>(n);
  const W mid = x + (nn - 1) * lambda / 2;
  return (flavor == Flavor::Cos ? std::cos(mid) : std::sin(mid)) * std::sin(nn * lambda / 2) / s;
}

}  // namespace

double cos_arith_sum(std::int64_t n, double x, double lambda) {
  require_nonnegative(n, "cos_arith_sum");
  return static_cast<double>(arith_wide(n, x, lambda, Flavor::Cos, "cos_arith_sum"));
}

double sin_arith_sum(std::int64_t n, double x, double lambda) {
  require_nonnegative(n, "sin_arith_sum");
  return static_cast<double>(arith_wide(n, x, lambda, Flavor::Sin, "sin_arith_sum"));
}

double k_weighted_sum(std::int64_t n, double lambda, Flavor flavor) {
  if (n < 1) throw ParameterError("k_weighted_sum: n must be >= 1");
  return static_cast<double>(k_weighted_wide(n, lambda, flavor));
}

double geometric_sum(std::int64_t n, double p_in, double lambda_in, Flavor flavor) {
  const bool infinite = n == kInfinite;
  if (infinite) {
    if (!(std::abs(p_in) < 1.0)) throw ParameterError(fmt::format("geometric_sum: |p| = {} >= 1 diverges", std::abs(p_in)));
  } else {
    require_nonnegative(n, "geometric_sum");
    if (n == 0) return 0.0;
  }
  const W p = p_in;
  const W lambda = lambda_in;
  const W den = 1 - 2 * p * std::cos(lambda) + p * p;
  if (!(den > 0)) throw SingularityError("geometric_sum: 1 - 2p cos(lambda) + p^2 vanishes");
  if (flavor == Flavor::Cos) {
    W num = 1 - p * std::cos(lambda);
    if (!infinite) {
      const W nn = static_cast<W>(n);
      const W pn = std::pow(p, nn);
      num += -pn * std::cos(nn * lambda) + pn * p * std::cos((nn - 1) * lambda);
    }
    return static_cast<double>(num / den);
  }
  if (!infinite && n == 1) return 0.0;
  W num = p * std::sin(lambda);
  if (!infinite) {
    const W nn = static_cast<W>(n);
    const W pn = std::pow(p, nn);
    num += -pn * std::sin(nn * lambda) + pn * p * std::sin((nn - 1) * lambda);
  }
  return static_cast<double>(num / den);
}

double cross_lag_sum(std::int64_t n, std::int64_t h, double lambda_in, double omega_in, CrossKind kind) {
  if (h < 1 || h > n) throw ParameterError(fmt::format("cross_lag_sum: need 1 <= h <= n, got h = {}, n = {}", h, n));
  if (h == n) return 0.0;
  const W nn = static_cast<W>(n);
  const W hh = static_cast<W>(h);
  const W lambda = lambda_in;
  const W omega = omega_in;

  if (kind == CrossKind::CsSame) {
    const W s = std::sin(lambda);
    if (std::abs(s) < kSingularTol) throw SingularityError("cross_lag_sum: sin(lambda) is numerically zero");
    return static_cast<double>(std::sin(lambda * nn) * std::sin(lambda * (nn - hh + 1)) / s - std::sin(lambda * hh));
  }

  if (lambda_in == omega_in) throw SingularityError("cross_lag_sum: cross kinds need distinct frequencies");
  const W sum = lambda + omega;
  const W diff = lambda - omega;
  const W sp = checked_half_sine(sum, "cross_lag_sum");
  const W sd = checked_half_sine(diff, "cross_lag_sum");
  // Dirichlet-type factors over the n-h+1 points s = 0..n-h.
  const W kp = std::sin((nn - hh + 1) * sum / 2) / sp;
  const W kd = std::sin((nn - hh + 1) * diff / 2) / sd;
  const W mp = (nn - hh) * sum / 2;
  const W md = (nn - hh) * diff / 2;

  W out = 0;
  switch (kind) {
    case CrossKind::CsCross:
      out = -std::sin(omega * hh) + kp / 2 * (std::sin(omega * hh + mp) + std::sin(lambda * hh + mp)) -
            kd / 2 * (std::sin(-omega * hh + md) + std::sin(lambda * hh + md));
      break;
    case CrossKind::Cc:
      out = -std::cos(omega * hh) - std::cos(lambda * hh) +
            kp / 2 * (std::cos(omega * hh + mp) + std::cos(lambda * hh + mp)) +
            kd / 2 * (std::cos(-omega * hh + md) + std::cos(lambda * hh + md));
      break;
    case CrossKind::Ss:
      out = kd / 2 * (std::cos(-omega * hh + md) + std::cos(lambda * hh + md)) -
            kp / 2 * (std::cos(omega * hh + mp) + std::cos(lambda * hh + mp));
      break;
    case CrossKind::CsSame:
      break;
  }
  return static_cast<double>(out);
}

double tail_weighted_sum(std::int64_t n, std::int64_t r, double lambda_in, double x_in, Flavor flavor) {
  if (n < 1 || r < 0 || r > n - 1) {
    throw ParameterError(fmt::format("tail_weighted_sum: need 0 <= r <= n-1, got r = {}, n = {}", r, n));
  }
  if (r == n - 1) return 0.0;
  const W lambda = lambda_in;
  const W x = x_in;
  checked_half_sine(lambda, "tail_weighted_sum");
  const W nn = static_cast<W>(n);
  // n·Σ_{h=r+1}^{n-1} f(λh+x) - Σ_{h=r+1}^{n-1} h·f(λh+x), the second expanded
  // with cos/sin addition formulas into the k-weighted sums.
  const std::int64_t count = n - 1 - r;
  const W start = x + static_cast<W>(r + 1) * lambda;
  const W kc = k_weighted_wide(n, lambda, Flavor::Cos) - k_weighted_wide(r + 1, lambda, Flavor::Cos);
  const W ks = k_weighted_wide(n, lambda, Flavor::Sin) - k_weighted_wide(r + 1, lambda, Flavor::Sin);
  const W arith = arith_wide(count, start, lambda, flavor, "tail_weighted_sum");
  if (flavor == Flavor::Cos) return static_cast<double>(nn * arith - (std::cos(x) * kc - std::sin(x) * ks));
  return static_cast<double>(nn * arith - (std::sin(x) * kc + std::cos(x) * ks));
}

double shifted_cos_sum(std::int64_t n, double x, double lambda) {
  require_nonnegative(n, "shifted_cos_sum");
  return static_cast<double>(arith_wide(n, static_cast<W>(x) + lambda, lambda, Flavor::Cos, "shifted_cos_sum"));
}

double geometric_shifted_cos_sum(std::int64_t n, double ratio, double x, double lambda) {
  if (n == 0) return 0.0;
  if (n != kInfinite) require_nonnegative(n, "geometric_shifted_cos_sum");
  // Σ_{h=1}^{n} ρ^h cos(x+hλ) = cos x (C_{n+1} - 1) - sin x S_{n+1}
  const std::int64_t m = n == kInfinite ? kInfinite : n + 1;
  const double c = geometric_sum(m, ratio, lambda, Flavor::Cos) - 1.0;
  const double s = geometric_sum(m, ratio, lambda, Flavor::Sin);
  return std::cos(x) * c - std::sin(x) * s;
}

}  // namespace exspec::trig
