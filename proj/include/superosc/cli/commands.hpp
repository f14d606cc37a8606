#pragma once

#include "superosc/signal.hpp"
#include "superosc/spectrum.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace superosc::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::string_view kCsvSchema = "superosc-csv/1";

enum class Command { signal, spectrum, yield, figures };
enum class OutputFormat { csv, json };

Command command_from_string(std::string_view name);
OutputFormat format_from_string(std::string_view name);
std::string_view to_string(Command command);
std::string_view to_string(OutputFormat format);

/// Everything a run needs. Times are in units of 1/omega0 and frequencies in units of omega0.
struct RunConfig {
  Command command = Command::signal;
  std::vector<int> orders{16};
  double ratio = 2.0;
  double omega0 = 1.0;
  double alpha = 1.0;
  std::vector<double> deltas{0.1};
  /// Unset bounds fall back to per-command defaults.
  std::optional<double> grid_min;
  std::optional<double> grid_max;
  std::size_t grid_count = 2001;
  /// quadrature, discrete, gaussian_sum, airy or all.
  std::string method = "quadrature";
  int precision_bits = 0;
  double rel_tol = 1e-10;
  AiryArgument airy_argument = AiryArgument::linear;
  std::optional<double> band_low;
  std::optional<double> band_high;
  /// 0 selects all three figures.
  int figure = 0;
  std::filesystem::path out = ".";
  OutputFormat format = OutputFormat::csv;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
  [[nodiscard]] SignalParams params(int n) const;
  /// Flags that reproduce this configuration.
  [[nodiscard]] std::string command_line() const;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  /// One line per produced dataset, for the terminal.
  std::vector<std::string> summary;
};

/// Columns omega0_t, modulus_sq, re_f, im_f, log_mag, phase, local_frequency per order n.
RunResult cmd_signal(const RunConfig& config);
/// Column omega_over_omega0 plus one column per method per order n.
RunResult cmd_spectrum(const RunConfig& config);
/// yield.json with one report per (n, delta); yield.csv as well for csv format.
RunResult cmd_yield(const RunConfig& config);
/// Figures 1-3 at a = 2, n = 16, 128, 1024: CSV plus SVG per figure and order.
RunResult cmd_figures(const RunConfig& config);

RunResult run(const RunConfig& config);

}  // namespace superosc::cli
