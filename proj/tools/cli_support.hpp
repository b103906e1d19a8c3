#pragma once

// Configuration, descriptor parsing and CSV/JSON I/O for the exspec command
// line tool. Kept out of main.cpp so the round-trip contracts can be tested.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "exspec/core.hpp"
#include "exspec/estimators.hpp"
#include "exspec/simulate.hpp"

namespace exspec::cli {

using Json = nlohmann::ordered_json;

enum class BandKind { None, Surrogate, Permutation };
enum class OutputFormat { Csv, Json };

struct WindowSpec {
  std::size_t s = 50;               ///< Daniell half-width; ignored when weights are set
  std::vector<double> weights;      ///< custom window, odd length
};

struct GridSpec {
  std::vector<double> freqs;        ///< empty: every Fourier frequency of the input
};

struct BandSpec {
  BandKind kind = BandKind::Surrogate;
  std::size_t replicates = 99;
  std::uint64_t seed = 1;
  double level = 0.05;
};

struct AnalysisConfig {
  std::string input;
  double q = 0.98;
  std::string set = "upper:1";
  WindowSpec window;
  GridSpec grid;
  std::size_t max_lag = 20;
  std::size_t lag_window_r = 0;     ///< 0: no lag-window column
  double m = 0.0;                   ///< <= 0: canonical n / Σ I_t
  BandSpec band;
  OutputFormat format = OutputFormat::Csv;
  std::uint64_t seed = 1;

  WeightWindow weight_window() const;
  void validate() const;
};

Json to_json(const AnalysisConfig& cfg);
/// Missing keys take their defaults; unknown keys are rejected.
AnalysisConfig config_from_json(const Json& j);
/// emit(parse(text)): the canonical form of a configuration document.
std::string normalize_config(const std::string& text);

TailSet parse_tail_set(const std::string& descriptor);
NoiseSpec parse_noise(const std::string& descriptor);
std::vector<double> parse_number_list(const std::string& text);

/// One numeric column; `#` lines and blank lines are skipped, and a single
/// non-numeric first row is taken as a header.
TimeSeries read_series_csv(std::istream& in, const std::string& source_name);
TimeSeries read_series_csv(const std::filesystem::path& path);

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> comments;  ///< written as "# ..." lines
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};
void write_csv(std::ostream& out, const CsvTable& table);
void write_table_json(std::ostream& out, const CsvTable& table);
/// Parses a file produced by write_csv back into columns.
CsvTable read_csv_table(std::istream& in, const std::string& source_name);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace exspec::cli
