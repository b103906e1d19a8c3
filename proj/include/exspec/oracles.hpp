#pragma once

// Theoretical extremograms and spectral densities for the set A = (1, ∞):
// the linear-process formula (shared by max-moving averages with the same
// coefficients), its truncated Fourier series, and ARMA(1,1) closed forms.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exspec/core.hpp"
#include "exspec/estimators.hpp"

namespace exspec {

struct TailIndexSpec {
  double alpha = 3.0;
  double p = 0.5;

  double q() const noexcept { return 1.0 - p; }
  void validate() const;
};

/// Coefficients ψ_0, ψ_1, ... of a linear or max-moving-average filter.
class LinearFilter {
 public:
  /// Finite list; ψ_j = 0 beyond it.
  static LinearFilter explicit_list(std::vector<double> psi);
  /// ψ_0 = 1, ψ_j = φ^{j-1}(φ+θ); the first jmax+1 are materialized.
  static LinearFilter arma11(double phi, double theta, std::size_t jmax);

  double coefficient(std::size_t j) const;
  const std::vector<double>& listed() const noexcept { return psi_; }
  bool has_analytic_tail() const noexcept { return arma_.has_value(); }

  /// Number of leading coefficients beyond which the α-weighted mass is
  /// below rel_tol of the total.
  std::size_t truncation(const TailIndexSpec& tail, double rel_tol) const;

 private:
  struct Arma {
    double phi;
    double theta;
  };
  std::vector<double> psi_;
  std::optional<Arma> arma_;
};

enum class Arma11Case { Iid, B1, B2, B3, B4 };

std::string to_string(Arma11Case c);

/// Evaluates f_A on (0, π).
struct SpectralDensityOracle {
  enum class Provenance { SeriesTruncation, Arma11Closed };

  std::function<double(double)> evaluator;
  Provenance provenance = Provenance::SeriesTruncation;
  std::size_t truncation_lag = 0;            ///< for SeriesTruncation
  Arma11Case arma_case = Arma11Case::Iid;    ///< for Arma11Closed

  double operator()(double lambda) const { return evaluator(lambda); }
  std::vector<double> evaluate(const FrequencyGrid& grid) const;
};

LinearFilter arma11_psi(double phi, double theta, std::size_t jmax);

/// ρ_A(0..H) for A = (1, ∞) from the linear-process formula.
Extremogram extremogram_linear(const LinearFilter& filter, const TailIndexSpec& tail, std::size_t max_lag);

/// f(λ) = 1 + 2 Σ_{h=1}^{H} ρ(h) cos(hλ).
SpectralDensityOracle spectral_from_extremogram(const Extremogram& rho, std::size_t truncation_lag);
std::vector<double> spectral_from_extremogram(const Extremogram& rho, const FrequencyGrid& grid,
                                              std::size_t truncation_lag);

/// Which closed-form case applies; throws UnsupportedCaseError when none does.
Arma11Case classify_arma11(double phi, double theta, const TailIndexSpec& tail);

double arma11_extremogram_closed(double phi, double theta, const TailIndexSpec& tail, std::size_t h);
/// ρ_A(0..H) from the closed forms.
Extremogram arma11_extremogram_closed_lags(double phi, double theta, const TailIndexSpec& tail, std::size_t max_lag);

double arma11_spectral_closed(double phi, double theta, const TailIndexSpec& tail, double lambda);
SpectralDensityOracle arma11_spectral_oracle(double phi, double theta, const TailIndexSpec& tail);

/// Smallest H with |φ|^{αH} < tol.
std::size_t arma11_series_truncation(double phi, double alpha, double tol = 1e-12);

/// Thresholds h_0, k_1, k_2 of the closed forms (exposed for testing).
std::size_t arma11_threshold_h0(double phi, double theta, double alpha);
std::size_t arma11_threshold_k1(double phi, double theta);
std::size_t arma11_threshold_k2(double phi, double theta);

}  // namespace exspec
