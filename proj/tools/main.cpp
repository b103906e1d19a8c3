#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>
#include <fmt/format.h>

#include "cli_support.hpp"
#include "exspec/error.hpp"
#include "exspec/inference.hpp"
#include "exspec/kernels.hpp"
#include "exspec/oracles.hpp"

namespace fs = std::filesystem;
using namespace exspec;
using namespace exspec::cli;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void emit_table(const fs::path& dir, const std::string& stem, OutputFormat format, const CsvTable& table,
                Json& outputs) {
  std::ostringstream os;
  std::string name;
  if (format == OutputFormat::Csv) {
    write_csv(os, table);
    name = stem + ".csv";
  } else {
    write_table_json(os, table);
    name = stem + ".json";
  }
  write_text_file(dir / name, os.str());
  outputs.push_back(name);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string model;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string noise = "t:3";
  double phi = 0.8;
  double theta = 0.1;
  double logvol_ar = 0.9;
  double logvol_sd = 0.3;
  std::string psi;
  std::size_t jmax = 400;
  double eps = 1e-6;
  std::optional<std::size_t> burnin;
  std::string out = "-";
};

int run_simulate(const SimulateArgs& a) {
  const NoiseSpec noise = parse_noise(a.noise);
  Json spec = Json::object();
  spec["model"] = a.model;
  spec["n"] = a.n;
  spec["noise"] = noise.describe();
  TimeSeries x;
  if (a.model == "iid") {
    x = sample_noise(noise, a.n, a.seed);
  } else if (a.model == "arma11") {
    const Arma11Spec s{a.phi, a.theta, noise};
    spec["phi"] = a.phi;
    spec["theta"] = a.theta;
    spec["burnin"] = a.burnin.value_or(default_burnin(a.phi));
    x = simulate_arma11(s, a.n, a.seed, a.burnin);
  } else if (a.model == "sv") {
    const SvSpec s{a.logvol_ar, a.logvol_sd, noise};
    spec["logvol_ar"] = a.logvol_ar;
    spec["logvol_sd"] = a.logvol_sd;
    spec["burnin"] = a.burnin.value_or(default_burnin(a.logvol_ar));
    x = simulate_sv(s, a.n, a.seed, a.burnin);
  } else {
    MaxMaSpec s;
    s.noise = noise;
    s.truncation_eps = a.eps;
    if (a.psi.empty()) {
      s.psi = arma11_psi(a.phi, a.theta, a.jmax).listed();
      spec["psi_from_arma11"] = {{"phi", a.phi}, {"theta", a.theta}, {"jmax", a.jmax}};
    } else {
      s.psi = parse_number_list(a.psi);
      spec["psi"] = s.psi;
    }
    spec["truncation_eps"] = a.eps;
    spec["truncation"] = max_ma_truncation(s);
    x = simulate_max_ma(s, a.n, a.seed);
  }
  spec["seed"] = a.seed;

  CsvTable t;
  t.comments = {"exspec simulate", "spec: " + spec.dump(), fmt::format("seed: {}", a.seed)};
  t.header = {"x"};
  t.columns = {std::vector<double>(x.values().begin(), x.values().end())};
  if (a.out == "-") {
    write_csv(std::cout, t);
  } else {
    std::ostringstream os;
    write_csv(os, t);
    write_text_file(a.out, os.str());
  }
  return kExitOk;
}

// ----------------------------------------------------------------- analyze

struct Smoothed {
  std::vector<double> values;
  std::vector<std::size_t> valid;  // grid positions whose window fits in (0, π)
};

Smoothed smooth_where_possible(const std::vector<double>& full, const FrequencyGrid& grid, const WeightWindow& w) {
  Smoothed out;
  out.values.assign(grid.size(), kNaN);
  const std::size_t n = full.size();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    FrequencyGrid local;
    try {
      local = smoothing_grid(grid[k], n, w.half_width());
    } catch (const ParameterError&) {
      continue;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < local.size(); ++i) acc += w.weights()[i] * full[local.indices()[i]];
    out.values[k] = acc;
    out.valid.push_back(k);
  }
  return out;
}

FrequencyGrid subgrid(const FrequencyGrid& grid, const std::vector<std::size_t>& keep) {
  if (grid.is_fourier()) {
    std::vector<std::size_t> idx;
    for (auto k : keep) idx.push_back(grid.indices()[k]);
    return FrequencyGrid::fourier(grid.n_ref(), std::move(idx));
  }
  std::vector<double> f;
  for (auto k : keep) f.push_back(grid[k]);
  return FrequencyGrid::explicit_list(std::move(f));
}

int run_analyze(const AnalysisConfig& cfg, const fs::path& out_dir) {
  if (cfg.input.empty()) throw ParameterError("analyze needs an input file (--input or \"input\" in the config)");
  TimeSeries series = read_series_csv(fs::path(cfg.input));
  const std::size_t n = series.size();
  Json warnings = Json::array();

  // Lower-tail analysis runs on the negated series so that the quantile
  // threshold and the permutation replicates see the same upper tail.
  TailSet set = parse_tail_set(cfg.set);
  bool negated = false;
  if (const auto* lower = std::get_if<LowerRay>(&set.kind())) {
    std::vector<double> neg(series.values().begin(), series.values().end());
    for (double& v : neg) v = -v;
    series = TimeSeries(std::move(neg));
    set = TailSet::upper(lower->a);
    negated = true;
  }

  const Threshold thr = threshold_from_quantile(series, cfg.q);
  if (!(thr.a_m > 0.0)) {
    throw DegenerateDataError(fmt::format(
        "no exceedances: the {} quantile of the {}series is {} (not positive), so no observation is extreme",
        cfg.q, negated ? "negated " : "", thr.a_m));
  }
  const IndicatorSeries ind = indicators(series, set, thr);
  if (ind.events() == 0) throw DegenerateDataError("no exceedances of the threshold in the tail set");
  const double m = cfg.m > 0.0 ? cfg.m : canonical_m(ind);

  const std::size_t max_lag = std::min(cfg.max_lag, n - 1);
  if (max_lag < cfg.max_lag) warnings.push_back(fmt::format("H reduced to n-1 = {}", max_lag));
  const Extremogram ex = sample_extremogram(ind, max_lag);

  const FrequencyGrid grid = cfg.grid.freqs.empty() ? fourier_grid(n) : FrequencyGrid::explicit_list(cfg.grid.freqs);
  if (grid.empty()) throw InputError("series too short for a Fourier grid");
  const WeightWindow window = cfg.weight_window();
  const SpectralEstimate raw = standardized_periodogram(ind, grid);
  const Smoothed sm = smooth_where_possible(standardized_ordinates_full(ind), grid, window);
  if (sm.valid.size() < grid.size()) {
    warnings.push_back(fmt::format("smoothing window leaves (0, pi) at {} of {} frequencies; reported as nan",
                                   grid.size() - sm.valid.size(), grid.size()));
  }

  std::vector<double> lower(grid.size(), kNaN), upper(grid.size(), kNaN);
  Json band_info = Json::object();
  band_info["method"] = to_json(cfg)["band"]["method"];
  if (cfg.band.kind == BandKind::Surrogate) {
    const double h = surrogate_half_width(window);
    band_info["relative_half_width"] = h;
    for (auto k : sm.valid) {
      lower[k] = sm.values[k] * std::min(1.0 - h, 1.0 + h);
      upper[k] = sm.values[k] * std::max(1.0 - h, 1.0 + h);
    }
  } else if (cfg.band.kind == BandKind::Permutation && !sm.valid.empty()) {
    const EstimatorConfig ec{m, cfg.lag_window_r, window.half_width(), cfg.q};
    const Band b = permutation_band(series, ec, set, window, subgrid(grid, sm.valid), cfg.band.replicates,
                                    cfg.band.seed, cfg.band.level);
    const auto [lo_rank, hi_rank] = envelope_ranks(cfg.band.replicates, cfg.band.level);
    band_info["replicates"] = cfg.band.replicates;
    band_info["order_statistics"] = {lo_rank, hi_rank};
    std::vector<double> smoothed_valid;
    for (std::size_t i = 0; i < sm.valid.size(); ++i) {
      lower[sm.valid[i]] = b.lower[i];
      upper[sm.valid[i]] = b.upper[i];
      smoothed_valid.push_back(sm.values[sm.valid[i]]);
    }
    band_info["coverage_of_smoothed"] = b.coverage(smoothed_valid);
  }

  std::vector<double> lambdas(grid.freqs().begin(), grid.freqs().end());
  CsvTable spectrum;
  spectrum.header = {"lambda", "raw", "smoothed", "lower", "upper"};
  spectrum.columns = {lambdas, raw.values, sm.values, lower, upper};
  Json lag_info = nullptr;
  if (cfg.lag_window_r > 0) {
    if (cfg.lag_window_r >= n) throw ParameterError(fmt::format("r = {} must be < n = {}", cfg.lag_window_r, n));
    std::vector<double> lw(grid.size());
    std::size_t negative = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto e = lag_window_estimate(ind, grid[k], cfg.lag_window_r, m);
      lw[k] = e.standardized;
      negative += e.negative;
    }
    spectrum.header.push_back("lag_window");
    spectrum.columns.push_back(std::move(lw));
    const bool suspect = lag_window_rate_suspect(n, cfg.lag_window_r, m);
    if (suspect) {
      warnings.push_back(fmt::format("lag window r = {} exceeds sqrt(n/m) = {:.4g}; consistency rate not guaranteed",
                                     cfg.lag_window_r, std::sqrt(static_cast<double>(n) / m)));
    }
    lag_info = {{"r", cfg.lag_window_r}, {"negative_values", negative}, {"rate_suspect", suspect}};
  }

  CsvTable extremo;
  extremo.header = {"h", "rho", "stderr"};
  std::vector<double> hs(ex.rho.size());
  for (std::size_t h = 0; h < hs.size(); ++h) hs[h] = static_cast<double>(h);
  extremo.columns = {hs, ex.rho, ex.standard_errors()};

  const Json config_json = to_json(cfg);
  const std::vector<std::string> comments = {"exspec analyze", "config: " + config_json.dump(),
                                             fmt::format("seed: {}", cfg.seed)};
  extremo.comments = comments;
  spectrum.comments = comments;

  Json outputs = Json::array();
  emit_table(out_dir, "extremogram", cfg.format, extremo, outputs);
  emit_table(out_dir, "spectrum", cfg.format, spectrum, outputs);

  Json manifest = Json::object();
  manifest["command"] = "analyze";
  manifest["config"] = config_json;
  manifest["n"] = n;
  manifest["threshold"] = {{"a_m", thr.a_m}, {"q", thr.q}, {"exceed_count", thr.exceed_count},
                           {"series", negated ? "negated" : "original"}};
  manifest["events"] = ind.events();
  manifest["p0_hat"] = ind.p0_hat;
  manifest["m"] = m;
  manifest["m_source"] = cfg.m > 0.0 ? "config" : "canonical";
  manifest["H"] = max_lag;
  manifest["grid"] = {{"size", grid.size()}, {"smoothable", sm.valid.size()}, {"fourier", grid.is_fourier()}};
  manifest["window"] = {{"half_width", window.half_width()}, {"sum_of_squares", window.sum_of_squares()}};
  manifest["band"] = band_info;
  manifest["lag_window"] = lag_info;
  manifest["seed"] = cfg.seed;
  manifest["warnings"] = warnings;
  outputs.push_back("manifest.json");
  manifest["outputs"] = outputs;
  write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << '\n';
  return kExitOk;
}

// ------------------------------------------------------------------ oracle

struct OracleArgs {
  std::string model;
  double phi = 0.8;
  double theta = 0.1;
  double alpha = 3.0;
  double p = 0.5;
  std::string grid = "uniform:512";
  std::size_t max_lag = 50;
  std::string out;
};

FrequencyGrid parse_grid(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string{} : text.substr(colon + 1);
  if (kind == "fourier" || kind == "uniform") {
    std::size_t count = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), count);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || count == 0) {
      throw ParameterError(fmt::format("grid '{}': expected a positive integer after '{}:'", text, kind));
    }
    if (kind == "fourier") return fourier_grid(count);
    std::vector<double> f(count);
    for (std::size_t k = 0; k < count; ++k) f[k] = kPi * static_cast<double>(k + 1) / static_cast<double>(count + 1);
    return FrequencyGrid::explicit_list(std::move(f));
  }
  if (kind == "list") return FrequencyGrid::explicit_list(parse_number_list(arg));
  throw ParameterError(fmt::format("cannot parse grid '{}' (fourier:N, uniform:K or list:a,b,...)", text));
}

int run_oracle(const OracleArgs& a) {
  const TailIndexSpec tail{a.alpha, a.p};
  tail.validate();
  const Arma11Case c = classify_arma11(a.phi, a.theta, tail);
  const FrequencyGrid grid = parse_grid(a.grid);
  const SpectralDensityOracle oracle = arma11_spectral_oracle(a.phi, a.theta, tail);
  const std::vector<double> f = oracle.evaluate(grid);
  const Extremogram rho = arma11_extremogram_closed_lags(a.phi, a.theta, tail, a.max_lag);

  // Independent route: truncated Fourier series over the linear-process extremogram.
  const std::size_t H = arma11_series_truncation(a.phi, a.alpha);
  const Extremogram series_rho = extremogram_linear(arma11_psi(a.phi, a.theta, H), tail, H);
  const std::vector<double> f_series = spectral_from_extremogram(series_rho, grid, H);
  double residual = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) residual = std::max(residual, std::abs(f[k] - f_series[k]));
  double rho_residual = 0.0;
  for (std::size_t h = 0; h <= std::min(a.max_lag, H); ++h) {
    rho_residual = std::max(rho_residual, std::abs(rho.rho[h] - series_rho.rho[h]));
  }

  Json spec = {{"model", a.model}, {"phi", a.phi}, {"theta", a.theta}, {"alpha", a.alpha}, {"p", a.p},
               {"grid", a.grid}, {"H", a.max_lag}};
  const std::vector<std::string> comments = {"exspec oracle", "spec: " + spec.dump(), "case: " + to_string(c)};
  CsvTable ft;
  ft.comments = comments;
  ft.header = {"lambda", "f_A"};
  ft.columns = {std::vector<double>(grid.freqs().begin(), grid.freqs().end()), f};
  CsvTable rt;
  rt.comments = comments;
  rt.header = {"h", "rho_A"};
  std::vector<double> hs(rho.rho.size());
  for (std::size_t h = 0; h < hs.size(); ++h) hs[h] = static_cast<double>(h);
  rt.columns = {hs, rho.rho};

  const fs::path dir(a.out);
  Json outputs = Json::array();
  emit_table(dir, "oracle_spectrum", OutputFormat::Csv, ft, outputs);
  emit_table(dir, "oracle_extremogram", OutputFormat::Csv, rt, outputs);
  Json manifest = Json::object();
  manifest["command"] = "oracle";
  manifest["spec"] = spec;
  manifest["case"] = to_string(c);
  manifest["series_truncation"] = H;
  manifest["max_abs_residual_spectral"] = residual;
  manifest["max_abs_residual_extremogram"] = rho_residual;
  outputs.push_back("manifest.json");
  manifest["outputs"] = outputs;
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  kernels::configure_threads_from_env();

  CLI::App app{"Extremogram and extremal periodogram analysis of heavy-tailed time series"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "OpenMP threads (overrides EXSPEC_THREADS)")->check(CLI::PositiveNumber);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a seeded example process to CSV");
  simulate->add_option("model", sim.model, "iid | arma11 | sv | maxma")
      ->required()
      ->check(CLI::IsMember({"iid", "arma11", "sv", "maxma"}));
  simulate->add_option("--n", sim.n, "Number of observations")->required()->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Master seed");
  simulate->add_option("--noise", sim.noise, "t:nu or pareto:alpha[:p]");
  simulate->add_option("--phi", sim.phi, "ARMA AR coefficient (arma11, maxma)");
  simulate->add_option("--theta", sim.theta, "ARMA MA coefficient (arma11, maxma)");
  simulate->add_option("--logvol-ar", sim.logvol_ar, "Log-volatility AR coefficient (sv)");
  simulate->add_option("--logvol-sd", sim.logvol_sd, "Log-volatility innovation sd (sv)");
  simulate->add_option("--psi", sim.psi, "Comma-separated max-MA coefficients (maxma)");
  simulate->add_option("--jmax", sim.jmax, "ARMA coefficients materialized for maxma without --psi");
  simulate->add_option("--eps", sim.eps, "Max-MA relative tail-mass truncation");
  simulate->add_option("--burnin", sim.burnin, "Discarded warm-up values (arma11, sv)");
  simulate->add_option("--out,-o", sim.out, "Output CSV ('-' for stdout)");

  auto* analyze = app.add_subcommand("analyze", "Extremogram, periodograms and bands for a CSV series");
  std::string config_path, out_dir, input, set, weights, freqs, band, format;
  double q = 0, m = 0, level = 0;
  std::size_t s = 0, H = 0, r = 0, B = 0;
  std::uint64_t seed = 0, band_seed = 0;
  analyze->add_option("--config", config_path, "JSON configuration; flags override its keys");
  analyze->add_option("--input,-i", input, "Single-column CSV input");
  auto* o_q = analyze->add_option("--q", q, "Threshold quantile");
  auto* o_set = analyze->add_option("--set", set, "upper[:a] | lower[:a] | interval:lo:hi");
  auto* o_s = analyze->add_option("--s", s, "Daniell half-width");
  auto* o_w = analyze->add_option("--weights", weights, "Custom smoothing weights (odd count)");
  auto* o_f = analyze->add_option("--freqs", freqs, "Explicit frequencies instead of the Fourier grid");
  auto* o_H = analyze->add_option("--H", H, "Maximum extremogram lag");
  auto* o_r = analyze->add_option("--r", r, "Lag-window truncation (adds a lag_window column)");
  auto* o_m = analyze->add_option("--m", m, "Normalization m (default n / number of events)");
  auto* o_band = analyze->add_option("--band", band, "none | surrogate | permutation");
  auto* o_B = analyze->add_option("--B", B, "Permutation replicates");
  auto* o_bs = analyze->add_option("--band-seed", band_seed, "Permutation master seed");
  auto* o_level = analyze->add_option("--level", level, "Permutation band level");
  auto* o_format = analyze->add_option("--format", format, "csv | json");
  auto* o_seed = analyze->add_option("--seed", seed, "Seed recorded with the run");
  analyze->add_option("--out,-o", out_dir, "Output directory")->required();

  OracleArgs ora;
  auto* oracle = app.add_subcommand("oracle", "Closed-form ARMA(1,1) extremogram and spectral density");
  oracle->add_option("model", ora.model, "arma11")->required()->check(CLI::IsMember({"arma11"}));
  oracle->add_option("--phi", ora.phi, "AR coefficient");
  oracle->add_option("--theta", ora.theta, "MA coefficient");
  oracle->add_option("--alpha", ora.alpha, "Tail index");
  oracle->add_option("--p", ora.p, "Upper tail balance weight");
  oracle->add_option("--grid", ora.grid, "fourier:N | uniform:K | list:a,b,...");
  oracle->add_option("--H", ora.max_lag, "Maximum extremogram lag");
  oracle->add_option("--out,-o", ora.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (threads > 0) omp_set_num_threads(threads);
    if (*simulate) return run_simulate(sim);
    if (*oracle) return run_oracle(ora);

    Json j = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InputError(fmt::format("cannot open config '{}'", config_path));
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError(fmt::format("config '{}' is not valid JSON: {}", config_path, e.what()));
      }
      if (!j.is_object()) throw ParameterError("configuration must be a JSON object");
    }
    if (!input.empty()) j["input"] = input;
    if (o_q->count()) j["q"] = q;
    if (o_set->count()) j["set"] = set;
    if (o_s->count()) j["window"] = {{"kind", "daniell"}, {"s", s}};
    if (o_w->count()) j["window"] = {{"kind", "custom"}, {"weights", parse_number_list(weights)}};
    if (o_f->count()) j["grid"] = {{"kind", "list"}, {"freqs", parse_number_list(freqs)}};
    if (o_H->count()) j["H"] = H;
    if (o_r->count()) j["r"] = r;
    if (o_m->count()) j["m"] = m;
    if (o_format->count()) j["format"] = format;
    if (o_seed->count()) j["seed"] = seed;
    if (o_band->count() || o_B->count() || o_bs->count() || o_level->count()) {
      Json b = j.contains("band") ? j["band"] : Json::object();
      if (o_band->count()) b["method"] = band;
      if (o_B->count()) b["replicates"] = B;
      if (o_bs->count()) b["seed"] = band_seed;
      if (o_level->count()) b["level"] = level;
      j["band"] = b;
    }
    return run_analyze(config_from_json(j), out_dir);
  } catch (const DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const exspec::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
