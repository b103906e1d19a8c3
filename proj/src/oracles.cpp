#include "exspec/oracles.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "exspec/error.hpp"
#include "exspec/trig_kernels.hpp"

namespace exspec {
namespace {

void validate_phi(double phi) {
  if (!(std::abs(phi) < 1.0) || phi == 0.0) {
    throw ParameterError(fmt::format("ARMA(1,1) needs 0 < |phi| < 1, got phi = {}", phi));
  }
}

// Constants of the four sign cases. Names follow the superscripts c^(1)..c^(9).
struct CaseB1 {
  double c1, c2;
  std::size_t h0;
};
struct CaseB2 {
  double c3;
};
struct CaseB3 {
  double c4, c5, c6;
  std::size_t k1;
};
struct CaseB4 {
  double c7, c8, c9;
  std::size_t k2;
};

CaseB1 constants_b1(double phi, double theta, double alpha) {
  const double pa = std::pow(phi, alpha);
  const double sa = std::pow(phi + theta, alpha);
  const double den = 1.0 - pa + sa;
  return {(1.0 - pa) / den, sa / den, arma11_threshold_h0(phi, theta, alpha)};
}

CaseB2 constants_b2(double phi, double theta, const TailIndexSpec& tail) {
  const double sa = std::pow(std::abs(phi + theta), tail.alpha);
  return {tail.q() * sa / (tail.p * (1.0 - std::pow(phi, tail.alpha)) + tail.q() * sa)};
}

CaseB3 constants_b3(double phi, double theta, const TailIndexSpec& tail) {
  const double a = std::abs(phi);
  const double a1 = std::pow(a, tail.alpha);
  const double a2 = a1 * a1;
  const double sa = std::pow(phi + theta, tail.alpha);
  const double p = tail.p;
  const double q = tail.q();
  const double den = p * (1.0 - a2 + sa) + q * a1 * sa;
  return {p * (1.0 - a2) / den, p * sa * (1.0 - a2) / den, (p * sa + q * a1 * sa) / den,
          arma11_threshold_k1(phi, theta)};
}

CaseB4 constants_b4(double phi, double theta, const TailIndexSpec& tail) {
  const double a1 = std::pow(std::abs(phi), tail.alpha);
  const double a2 = a1 * a1;
  const double sa = std::pow(std::abs(phi + theta), tail.alpha);
  const double p = tail.p;
  const double q = tail.q();
  const double den = p * (1.0 - a2) + p * a1 * sa + q * sa;
  return {p * (1.0 - a2) / den, (p * a1 * sa + q * sa) / den, (p / a1 * sa + q * sa) / den,
          arma11_threshold_k2(phi, theta)};
}

}  // namespace

void TailIndexSpec::validate() const {
  if (!(alpha > 0.0)) throw ParameterError(fmt::format("tail index alpha = {} must be > 0", alpha));
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError(fmt::format("tail balance p = {} outside [0, 1]", p));
}

LinearFilter LinearFilter::explicit_list(std::vector<double> psi) {
  if (psi.empty()) throw ParameterError("linear filter needs at least one coefficient");
  LinearFilter f;
  f.psi_ = std::move(psi);
  return f;
}

LinearFilter LinearFilter::arma11(double phi, double theta, std::size_t jmax) {
  validate_phi(phi);
  LinearFilter f;
  f.arma_ = Arma{phi, theta};
  f.psi_.resize(jmax + 1);
  f.psi_[0] = 1.0;
  double c = phi + theta;
  for (std::size_t j = 1; j <= jmax; ++j) {
    f.psi_[j] = c;
    c *= phi;
  }
  return f;
}

double LinearFilter::coefficient(std::size_t j) const {
  if (j < psi_.size()) return psi_[j];
  if (!arma_) return 0.0;
  return std::pow(arma_->phi, static_cast<double>(j - 1)) * (arma_->phi + arma_->theta);
}

std::size_t LinearFilter::truncation(const TailIndexSpec& tail, double rel_tol) const {
  auto weight = [&](double c) {
    return c > 0.0 ? tail.p * std::pow(c, tail.alpha) : tail.q() * std::pow(-c, tail.alpha);
  };
  if (!arma_) return psi_.size();
  // Geometric bound on the remainder past J: max(p,q)|φ+θ|^α |φ|^{αJ} / (1 - |φ|^α).
  const double r = std::pow(std::abs(arma_->phi), tail.alpha);
  const double lead = std::max(tail.p, tail.q()) * std::pow(std::abs(arma_->phi + arma_->theta), tail.alpha);
  double head = weight(1.0);
  double rj = 1.0;
  for (std::size_t j = 1;; ++j) {
    head += weight(coefficient(j));
    rj *= r;
    const double remainder = lead * rj / (1.0 - r);
    if (remainder <= rel_tol * head || lead == 0.0) return std::max(j + 1, psi_.size());
    if (j > 1'000'000) throw ParameterError("linear filter tail decays too slowly to truncate");
  }
}

std::vector<double> SpectralDensityOracle::evaluate(const FrequencyGrid& grid) const {
  std::vector<double> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) out[k] = evaluator(grid[k]);
  return out;
}

LinearFilter arma11_psi(double phi, double theta, std::size_t jmax) { return LinearFilter::arma11(phi, theta, jmax); }

Extremogram extremogram_linear(const LinearFilter& filter, const TailIndexSpec& tail, std::size_t max_lag) {
  tail.validate();
  const std::size_t terms = filter.truncation(tail, 1e-12);
  const std::size_t len = terms + max_lag;
  // min(x, y)^α = min(x^α, y^α) for x, y ≥ 0, so the powers are taken once.
  std::vector<double> up(len), down(len);
  for (std::size_t j = 0; j < len; ++j) {
    const double c = filter.coefficient(j);
    up[j] = c > 0.0 ? std::pow(c, tail.alpha) : 0.0;
    down[j] = c < 0.0 ? std::pow(-c, tail.alpha) : 0.0;
  }
  const double p = tail.p;
  const double q = tail.q();
  double den = 0.0;
  for (std::size_t i = 0; i < terms; ++i) den += p * up[i] + q * down[i];
  if (!(den > 0.0)) throw DegenerateDataError("linear extremogram: zero tail mass in the denominator");

  Extremogram ex;
  ex.rho.assign(max_lag + 1, 0.0);
  ex.rho[0] = 1.0;
  const auto lags = static_cast<std::ptrdiff_t>(max_lag);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t hh = 1; hh <= lags; ++hh) {
    const auto h = static_cast<std::size_t>(hh);
    double num = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
      num += p * std::min(up[i], up[i + h]) + q * std::min(down[i], down[i + h]);
    }
    ex.rho[h] = num / den;
  }
  return ex;
}

SpectralDensityOracle spectral_from_extremogram(const Extremogram& rho, std::size_t truncation_lag) {
  if (truncation_lag > rho.max_lag()) {
    throw ParameterError(fmt::format("series truncation {} exceeds extremogram length {}", truncation_lag, rho.max_lag()));
  }
  std::vector<double> coeffs(rho.rho.begin(), rho.rho.begin() + static_cast<std::ptrdiff_t>(truncation_lag + 1));
  SpectralDensityOracle o;
  o.provenance = SpectralDensityOracle::Provenance::SeriesTruncation;
  o.truncation_lag = truncation_lag;
  o.evaluator = [coeffs = std::move(coeffs)](double lambda) {
    // Sum from the smallest terms up.
    double acc = 0.0;
    for (std::size_t h = coeffs.size() - 1; h >= 1; --h) acc += coeffs[h] * std::cos(lambda * static_cast<double>(h));
    return 1.0 + 2.0 * acc;
  };
  return o;
}

std::vector<double> spectral_from_extremogram(const Extremogram& rho, const FrequencyGrid& grid,
                                              std::size_t truncation_lag) {
  const SpectralDensityOracle o = spectral_from_extremogram(rho, truncation_lag);
  std::vector<double> out(grid.size());
  const auto m = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < m; ++k) out[static_cast<std::size_t>(k)] = o(grid[static_cast<std::size_t>(k)]);
  return out;
}

std::string to_string(Arma11Case c) {
  switch (c) {
    case Arma11Case::Iid: return "iid";
    case Arma11Case::B1: return "B1";
    case Arma11Case::B2: return "B2";
    case Arma11Case::B3: return "B3";
    case Arma11Case::B4: return "B4";
  }
  return "?";
}

Arma11Case classify_arma11(double phi, double theta, const TailIndexSpec& tail) {
  validate_phi(phi);
  tail.validate();
  const double s = phi + theta;
  if (s == 0.0) return Arma11Case::Iid;
  Arma11Case c;
  bool weight_ok;
  if (phi > 0.0 && s > 0.0) {
    c = Arma11Case::B1;
    weight_ok = tail.p > 0.0;
  } else if (phi > 0.0) {
    c = Arma11Case::B2;
    weight_ok = tail.q() > 0.0;
  } else if (s > 0.0) {
    c = Arma11Case::B3;
    weight_ok = tail.p > 0.0;
  } else {
    c = Arma11Case::B4;
    weight_ok = tail.p > 0.0;
  }
  if (!weight_ok) {
    throw UnsupportedCaseError(fmt::format("ARMA(1,1) case {} (phi = {}, theta = {}) needs a positive tail weight; p = {}",
                                           to_string(c), phi, theta, tail.p));
  }
  return c;
}

std::size_t arma11_threshold_h0(double phi, double theta, double alpha) {
  const double base = std::pow(phi + theta, alpha);
  const double step = std::pow(phi, alpha);
  std::size_t h = 0;
  for (double v = base; !(v < 1.0); v *= step) ++h;
  return h;
}

std::size_t arma11_threshold_k1(double phi, double theta) {
  const double a2 = phi * phi;
  std::size_t k = 0;
  for (double v = phi + theta; !(v < 1.0); v *= a2) ++k;
  return k;
}

std::size_t arma11_threshold_k2(double phi, double theta) {
  const double a2 = phi * phi;
  std::size_t k = 0;
  for (double v = std::abs(phi) * std::abs(phi + theta); !(v < 1.0); v *= a2) ++k;
  return k;
}

double arma11_extremogram_closed(double phi, double theta, const TailIndexSpec& tail, std::size_t h) {
  if (h == 0) return 1.0;
  const Arma11Case c = classify_arma11(phi, theta, tail);
  const double alpha = tail.alpha;
  const double a = std::abs(phi);
  const auto hd = static_cast<double>(h);
  switch (c) {
    case Arma11Case::Iid:
      return 0.0;
    case Arma11Case::B1: {
      const CaseB1 k = constants_b1(phi, theta, alpha);
      if (h <= k.h0) return k.c1 + std::pow(phi, alpha * hd) * k.c2;
      return std::pow(phi, alpha * (hd - 1.0)) * k.c2;
    }
    case Arma11Case::B2:
      return std::pow(phi, alpha * hd) * constants_b2(phi, theta, tail).c3;
    case Arma11Case::B3: {
      const CaseB3 k = constants_b3(phi, theta, tail);
      if (h % 2 == 1) {
        if ((h + 1) / 2 <= k.k1) return k.c4;
        return std::pow(a, alpha * (hd - 1.0)) * k.c5;
      }
      return std::pow(a, alpha * hd) * k.c6;
    }
    case Arma11Case::B4: {
      if (h % 2 == 1) return 0.0;
      const CaseB4 k = constants_b4(phi, theta, tail);
      const double g = std::pow(a, alpha * hd);  // |φ|^{2αk}
      if (h / 2 <= k.k2) return k.c7 + g * k.c8;
      return g * k.c9;
    }
  }
  return 0.0;
}

Extremogram arma11_extremogram_closed_lags(double phi, double theta, const TailIndexSpec& tail, std::size_t max_lag) {
  Extremogram ex;
  ex.rho.resize(max_lag + 1);
  for (std::size_t h = 0; h <= max_lag; ++h) ex.rho[h] = arma11_extremogram_closed(phi, theta, tail, h);
  return ex;
}

double arma11_spectral_closed(double phi, double theta, const TailIndexSpec& tail, double lambda) {
  if (!(lambda > 0.0 && lambda < kPi)) throw ParameterError("spectral density frequency must lie in (0, pi)");
  using trig::geometric_shifted_cos_sum;
  using trig::kInfinite;
  using trig::shifted_cos_sum;
  const Arma11Case c = classify_arma11(phi, theta, tail);
  const double alpha = tail.alpha;
  const double a = std::abs(phi);
  // L2(n, x, e, μ) = Σ_{h=1}^{n} |φ|^{e h} cos(x + hμ)
  auto l2 = [a](std::int64_t n, double x, double e, double mu) {
    return geometric_shifted_cos_sum(n, std::pow(a, e), x, mu);
  };
  switch (c) {
    case Arma11Case::Iid:
      return 1.0;
    case Arma11Case::B1: {
      const CaseB1 k = constants_b1(phi, theta, alpha);
      const auto h0 = static_cast<std::int64_t>(k.h0);
      const double inv = std::pow(phi, -alpha);
      return 1.0 + 2.0 * k.c1 * shifted_cos_sum(h0, 0.0, lambda) +
             2.0 * (1.0 - inv) * k.c2 * l2(h0, 0.0, alpha, lambda) + 2.0 * inv * k.c2 * l2(kInfinite, 0.0, alpha, lambda);
    }
    case Arma11Case::B2:
      return 1.0 + 2.0 * constants_b2(phi, theta, tail).c3 * l2(kInfinite, 0.0, alpha, lambda);
    case Arma11Case::B3: {
      const CaseB3 k = constants_b3(phi, theta, tail);
      const auto k1 = static_cast<std::int64_t>(k.k1);
      const double two = 2.0 * lambda;
      return 1.0 + 2.0 * k.c4 * shifted_cos_sum(k1, -lambda, two) +
             2.0 * std::pow(a, -2.0 * alpha) * k.c5 *
                 (l2(kInfinite, -lambda, 2.0 * alpha, two) - l2(k1, -lambda, 2.0 * alpha, two)) +
             2.0 * k.c6 * l2(kInfinite, 0.0, 2.0 * alpha, two);
    }
    case Arma11Case::B4: {
      const CaseB4 k = constants_b4(phi, theta, tail);
      const auto k2 = static_cast<std::int64_t>(k.k2);
      const double two = 2.0 * lambda;
      return 1.0 + 2.0 * k.c7 * shifted_cos_sum(k2, 0.0, two) +
             2.0 * (k.c8 - k.c9) * l2(k2, 0.0, 2.0 * alpha, two) + 2.0 * k.c9 * l2(kInfinite, 0.0, 2.0 * alpha, two);
    }
  }
  return 1.0;
}

SpectralDensityOracle arma11_spectral_oracle(double phi, double theta, const TailIndexSpec& tail) {
  SpectralDensityOracle o;
  o.provenance = SpectralDensityOracle::Provenance::Arma11Closed;
  o.arma_case = classify_arma11(phi, theta, tail);
  o.evaluator = [phi, theta, tail](double lambda) { return arma11_spectral_closed(phi, theta, tail, lambda); };
  return o;
}

std::size_t arma11_series_truncation(double phi, double alpha, double tol) {
  validate_phi(phi);
  const double r = std::pow(std::abs(phi), alpha);
  std::size_t h = 0;
  for (double v = 1.0; !(v < tol); v *= r) ++h;
  return h;
}

}  // namespace exspec
