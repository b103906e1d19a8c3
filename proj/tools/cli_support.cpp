#include "cli_support.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "exspec/error.hpp"

namespace exspec::cli {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(const std::string& field) {
  if (field.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return v;
}

double require_double(const std::string& field, const std::string& what) {
  const auto v = to_double(field);
  if (!v) throw ParameterError(fmt::format("{}: '{}' is not a number", what, field));
  return *v;
}

const char* band_name(BandKind k) {
  switch (k) {
    case BandKind::None: return "none";
    case BandKind::Surrogate: return "surrogate";
    case BandKind::Permutation: return "permutation";
  }
  return "none";
}

BandKind band_from_name(const std::string& s) {
  if (s == "none") return BandKind::None;
  if (s == "surrogate") return BandKind::Surrogate;
  if (s == "permutation") return BandKind::Permutation;
  throw ParameterError(fmt::format("unknown band method '{}' (none|surrogate|permutation)", s));
}

void reject_unknown(const Json& j, std::initializer_list<const char*> keys, const char* where) {
  for (const auto& [k, _] : j.items()) {
    bool known = false;
    for (const char* allowed : keys) known = known || k == allowed;
    if (!known) throw ParameterError(fmt::format("unknown key '{}' in {}", k, where));
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(fmt::format("config key '{}': {}", key, e.what()));
  }
}

}  // namespace

WeightWindow AnalysisConfig::weight_window() const {
  return window.weights.empty() ? WeightWindow::daniell(window.s) : WeightWindow::from_weights(window.weights);
}

void AnalysisConfig::validate() const {
  if (!(q > 0.0 && q < 1.0)) throw ParameterError(fmt::format("q = {} outside (0, 1)", q));
  parse_tail_set(set);
  weight_window();
  if (!grid.freqs.empty()) FrequencyGrid::explicit_list(grid.freqs);
  if (std::isnan(m) || m < 0.0) throw ParameterError("m must be positive (or 0 for canonical)");
  if (!(band.level > 0.0 && band.level < 1.0)) throw ParameterError("band level outside (0, 1)");
  if (band.kind == BandKind::Permutation && band.replicates < 2) {
    throw ParameterError("permutation band needs at least 2 replicates");
  }
}

Json to_json(const AnalysisConfig& c) {
  Json window = Json::object();
  if (c.window.weights.empty()) {
    window["kind"] = "daniell";
    window["s"] = c.window.s;
  } else {
    window["kind"] = "custom";
    window["weights"] = c.window.weights;
  }
  Json grid = Json::object();
  if (c.grid.freqs.empty()) {
    grid["kind"] = "fourier";
  } else {
    grid["kind"] = "list";
    grid["freqs"] = c.grid.freqs;
  }
  Json band = Json::object();
  band["method"] = band_name(c.band.kind);
  if (c.band.kind == BandKind::Permutation) {
    band["replicates"] = c.band.replicates;
    band["seed"] = c.band.seed;
    band["level"] = c.band.level;
  }
  Json j = Json::object();
  j["input"] = c.input;
  j["q"] = c.q;
  j["set"] = parse_tail_set(c.set).describe();
  j["window"] = window;
  j["grid"] = grid;
  j["H"] = c.max_lag;
  j["r"] = c.lag_window_r;
  j["m"] = c.m;
  j["band"] = band;
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  j["seed"] = c.seed;
  return j;
}

AnalysisConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParameterError("configuration must be a JSON object");
  reject_unknown(j, {"input", "q", "set", "window", "grid", "H", "r", "m", "band", "format", "seed"}, "config");
  AnalysisConfig c;
  c.input = get_or<std::string>(j, "input", c.input);
  c.q = get_or<double>(j, "q", c.q);
  c.set = parse_tail_set(get_or<std::string>(j, "set", c.set)).describe();
  c.max_lag = get_or<std::size_t>(j, "H", c.max_lag);
  c.lag_window_r = get_or<std::size_t>(j, "r", c.lag_window_r);
  c.m = get_or<double>(j, "m", c.m);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);

  if (j.contains("window")) {
    const Json& w = j.at("window");
    reject_unknown(w, {"kind", "s", "weights"}, "window");
    const auto kind = get_or<std::string>(w, "kind", "daniell");
    if (kind == "daniell") {
      c.window.s = get_or<std::size_t>(w, "s", c.window.s);
    } else if (kind == "custom") {
      c.window.weights = get_or<std::vector<double>>(w, "weights", {});
      if (c.window.weights.empty()) throw ParameterError("custom window needs weights");
    } else {
      throw ParameterError(fmt::format("unknown window kind '{}' (daniell|custom)", kind));
    }
  }
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    reject_unknown(g, {"kind", "freqs"}, "grid");
    const auto kind = get_or<std::string>(g, "kind", "fourier");
    if (kind == "list") {
      c.grid.freqs = get_or<std::vector<double>>(g, "freqs", {});
      if (c.grid.freqs.empty()) throw ParameterError("explicit grid needs at least one frequency");
    } else if (kind != "fourier") {
      throw ParameterError(fmt::format("unknown grid kind '{}' (fourier|list)", kind));
    }
  }
  if (j.contains("band")) {
    const Json& b = j.at("band");
    reject_unknown(b, {"method", "replicates", "seed", "level"}, "band");
    c.band.kind = band_from_name(get_or<std::string>(b, "method", band_name(c.band.kind)));
    c.band.replicates = get_or<std::size_t>(b, "replicates", c.band.replicates);
    c.band.seed = get_or<std::uint64_t>(b, "seed", c.band.seed);
    c.band.level = get_or<double>(b, "level", c.band.level);
  }
  const auto fmt_name = get_or<std::string>(j, "format", "csv");
  if (fmt_name == "csv") {
    c.format = OutputFormat::Csv;
  } else if (fmt_name == "json") {
    c.format = OutputFormat::Json;
  } else {
    throw ParameterError(fmt::format("unknown output format '{}' (csv|json)", fmt_name));
  }
  c.validate();
  return c;
}

std::string normalize_config(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParameterError(fmt::format("configuration is not valid JSON: {}", e.what()));
  }
  return to_json(config_from_json(j)).dump(2);
}

TailSet parse_tail_set(const std::string& descriptor) {
  const auto parts = split(descriptor, ':');
  const std::string& kind = parts[0];
  auto arg = [&](std::size_t i, double fallback) {
    return parts.size() > i ? require_double(parts[i], "tail set") : fallback;
  };
  if (kind == "upper" && parts.size() <= 2) return TailSet::upper(arg(1, 1.0));
  if (kind == "lower" && parts.size() <= 2) return TailSet::lower(arg(1, 1.0));
  if (kind == "interval" && parts.size() == 3) return TailSet::interval(arg(1, 0.0), arg(2, 0.0));
  throw ParameterError(
      fmt::format("cannot parse tail set '{}' (expected upper[:a], lower[:a] or interval:lo:hi)", descriptor));
}

NoiseSpec parse_noise(const std::string& descriptor) {
  const auto parts = split(descriptor, ':');
  NoiseSpec spec;
  if (parts[0] == "t" && parts.size() == 2) {
    spec.family = StudentT{require_double(parts[1], "noise")};
  } else if (parts[0] == "pareto" && (parts.size() == 2 || parts.size() == 3)) {
    spec.family = ParetoBalanced{require_double(parts[1], "noise"),
                                 parts.size() == 3 ? require_double(parts[2], "noise") : 0.5};
  } else {
    throw ParameterError(fmt::format("cannot parse noise '{}' (expected t:nu or pareto:alpha[:p])", descriptor));
  }
  spec.validate();
  return spec;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& f : split(text, ',')) out.push_back(require_double(f, "number list"));
  return out;
}

TimeSeries read_series_csv(std::istream& in, const std::string& source_name) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool seen_row = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = split(t, ',');
    if (fields.size() != 1) {
      throw InputError(fmt::format("{}:{}: expected one column, found {}", source_name, lineno, fields.size()));
    }
    const auto v = to_double(fields[0]);
    if (!v) {
      if (!seen_row) {
        seen_row = true;  // header
        continue;
      }
      throw InputError(fmt::format("{}:{}: '{}' is not a number", source_name, lineno, fields[0]));
    }
    if (!std::isfinite(*v)) throw InputError(fmt::format("{}:{}: non-finite value", source_name, lineno));
    seen_row = true;
    values.push_back(*v);
  }
  if (values.empty()) throw InputError(fmt::format("{}: no data rows", source_name));
  return TimeSeries(std::move(values));
}

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open '{}'", path.string()));
  return read_series_csv(in, path.string());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void write_csv(std::ostream& out, const CsvTable& table) {
  for (const auto& c : table.comments) out << "# " << c << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  if (!table.header.empty()) out << '\n';
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  std::string row;
  for (std::size_t r = 0; r < rows; ++r) {
    row.clear();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c) row += ',';
      row += format_double(table.columns[c][r]);
    }
    out << row << '\n';
  }
}

void write_table_json(std::ostream& out, const CsvTable& table) {
  Json j = Json::object();
  j["comments"] = table.comments;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    Json col = Json::array();
    for (double v : table.columns[c]) col.push_back(std::isfinite(v) ? Json(v) : Json(nullptr));
    j[table.header.at(c)] = std::move(col);
  }
  out << j.dump(2) << '\n';
}

CsvTable read_csv_table(std::istream& in, const std::string& source_name) {
  CsvTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    const auto fields = split(line, ',');
    if (t.header.empty() && t.columns.empty() && !to_double(fields[0])) {
      t.header = fields;
      t.columns.resize(fields.size());
      continue;
    }
    if (t.columns.empty()) t.columns.resize(fields.size());
    if (fields.size() != t.columns.size()) {
      throw InputError(fmt::format("{}:{}: expected {} columns, found {}", source_name, lineno, t.columns.size(),
                                   fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = to_double(fields[c]);
      if (!v) throw InputError(fmt::format("{}:{}: '{}' is not a number", source_name, lineno, fields[c]));
      t.columns[c].push_back(*v);
    }
  }
  return t;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(fmt::format("cannot write '{}'", path.string()));
  out << content;
  if (!out) throw InputError(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace exspec::cli
