#include "exspec/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "exspec/error.hpp"

namespace exspec {
namespace {

// Stream tags keep the noise and volatility generators of one simulation apart.
constexpr std::uint64_t kNoiseStream = 0x6e6f697365ULL;
constexpr std::uint64_t kVolStream = 0x766f6cULL;

std::vector<double> draw_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(derive_seed(seed, kNoiseStream));
  std::vector<double> z(n);
  if (const auto* par = std::get_if<ParetoBalanced>(&spec.family)) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double inv_alpha = 1.0 / par->alpha;
    for (auto& v : z) {
      const double u = 1.0 - unif(rng);  // (0, 1]
      const double sign = unif(rng) < par->p ? 1.0 : -1.0;
      v = sign * std::pow(u, -inv_alpha);
    }
  } else {
    std::student_t_distribution<double> t(std::get<StudentT>(spec.family).nu);
    for (auto& v : z) v = t(rng);
  }
  return z;
}

}  // namespace

double NoiseSpec::tail_index() const {
  if (const auto* par = std::get_if<ParetoBalanced>(&family)) return par->alpha;
  return std::get<StudentT>(family).nu;
}

double NoiseSpec::upper_weight() const {
  if (const auto* par = std::get_if<ParetoBalanced>(&family)) return par->p;
  return 0.5;
}

std::string NoiseSpec::describe() const {
  if (const auto* par = std::get_if<ParetoBalanced>(&family)) return fmt::format("pareto:{}:{}", par->alpha, par->p);
  return fmt::format("t:{}", std::get<StudentT>(family).nu);
}

void NoiseSpec::validate() const {
  if (const auto* par = std::get_if<ParetoBalanced>(&family)) {
    if (!(par->alpha > 0.0)) throw ParameterError(fmt::format("Pareto tail index alpha = {} must be > 0", par->alpha));
    if (!(par->p >= 0.0 && par->p <= 1.0)) throw ParameterError(fmt::format("tail balance p = {} outside [0, 1]", par->p));
  } else if (!(std::get<StudentT>(family).nu > 0.0)) {
    throw ParameterError(fmt::format("Student t degrees of freedom {} must be > 0", std::get<StudentT>(family).nu));
  }
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t default_burnin(double ar_coefficient) {
  const double memory = 50.0 / (1.0 - std::abs(ar_coefficient));
  return std::max<std::size_t>(1000, static_cast<std::size_t>(std::ceil(memory)));
}

TimeSeries sample_noise(const NoiseSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("sample_noise: n must be >= 1");
  return TimeSeries(draw_noise(spec, n, seed));
}

TimeSeries simulate_arma11(const Arma11Spec& spec, std::size_t n, std::uint64_t seed,
                           std::optional<std::size_t> burnin) {
  if (!(std::abs(spec.phi) < 1.0)) {
    throw ParameterError(fmt::format("ARMA(1,1) with |phi| = {} >= 1 has no stationary causal solution", std::abs(spec.phi)));
  }
  if (spec.phi == 0.0) throw ParameterError("ARMA(1,1) requires phi != 0");
  if (n == 0) throw ParameterError("simulate_arma11: n must be >= 1");
  const std::size_t skip = burnin.value_or(default_burnin(spec.phi));
  const std::vector<double> z = draw_noise(spec.noise, skip + n, seed);

  std::vector<double> out(n);
  double x_prev = 0.0;
  double z_prev = 0.0;
  for (std::size_t t = 0; t < skip + n; ++t) {
    const double x = spec.phi * x_prev + z[t] + spec.theta * z_prev;
    if (t >= skip) out[t - skip] = x;
    x_prev = x;
    z_prev = z[t];
  }
  return TimeSeries(std::move(out));
}

TimeSeries simulate_sv(const SvSpec& spec, std::size_t n, std::uint64_t seed, std::optional<std::size_t> burnin) {
  if (!(std::abs(spec.logvol_ar) < 1.0)) {
    throw ParameterError(fmt::format("log-volatility AR coefficient {} must satisfy |a| < 1", spec.logvol_ar));
  }
  if (!(spec.logvol_sd >= 0.0)) throw ParameterError("log-volatility sd must be >= 0");
  if (n == 0) throw ParameterError("simulate_sv: n must be >= 1");
  const std::size_t skip = burnin.value_or(default_burnin(spec.logvol_ar));
  const std::vector<double> z = draw_noise(spec.noise, skip + n, seed);

  std::mt19937_64 rng(derive_seed(seed, kVolStream));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double a = spec.logvol_ar;
  double v = gauss(rng) * spec.logvol_sd / std::sqrt(1.0 - a * a);

  std::vector<double> out(n);
  for (std::size_t t = 0; t < skip + n; ++t) {
    v = a * v + spec.logvol_sd * gauss(rng);
    if (t >= skip) out[t - skip] = std::exp(v) * z[t];
  }
  return TimeSeries(std::move(out));
}

std::size_t max_ma_truncation(const MaxMaSpec& spec) {
  if (spec.psi.empty() || std::all_of(spec.psi.begin(), spec.psi.end(), [](double c) { return c == 0.0; })) {
    throw DegenerateDataError("max-moving average is degenerate: all coefficients are zero");
  }
  if (!(spec.truncation_eps > 0.0)) throw ParameterError("truncation_eps must be > 0");
  const double alpha = spec.noise.tail_index();
  const double p = spec.noise.upper_weight();
  std::vector<double> w(spec.psi.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double c = spec.psi[i];
    w[i] = c > 0.0 ? p * std::pow(c, alpha) : (1.0 - p) * std::pow(-c, alpha);
  }
  double tail = 0.0;
  for (double x : w) tail += x;
  double head = 0.0;
  for (std::size_t s = 0; s < w.size(); ++s) {
    head += w[s];
    tail -= w[s];
    if (tail < spec.truncation_eps * head) return s;
  }
  return w.size() - 1;
}

TimeSeries simulate_max_ma(const MaxMaSpec& spec, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("simulate_max_ma: n must be >= 1");
  const std::size_t s = max_ma_truncation(spec);
  const std::vector<double> z = draw_noise(spec.noise, n + s, seed);
  std::vector<double> out(n);
  const auto len = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t t = 0; t < len; ++t) {
    const auto base = static_cast<std::size_t>(t) + s;
    double best = spec.psi[0] * z[base];
    for (std::size_t i = 1; i <= s; ++i) best = std::max(best, spec.psi[i] * z[base - i]);
    out[static_cast<std::size_t>(t)] = best;
  }
  return TimeSeries(std::move(out));
}

}  // namespace exspec
