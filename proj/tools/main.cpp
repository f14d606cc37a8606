#include "superosc/cli/commands.hpp"
#include "superosc/numerics/quadrature.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace superosc;

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for band-limited signals that oscillate faster than their band limit"};
  app.set_version_flag("--version", std::string(cli::kToolVersion));
  app.require_subcommand(1);

  cli::RunConfig config;
  std::string format = "csv";
  std::string airy_argument = "linear";
  double grid_min = 0.0;
  double grid_max = 0.0;
  double band_low = 0.0;
  double band_high = 0.0;

  const auto add_common = [&](CLI::App* sub, bool grid) {
    sub->add_option("--n", config.orders, "signal order(s)")->expected(1, -1)->check(CLI::PositiveNumber);
    sub->add_option("--ratio", config.ratio, "omega1 / omega0 (> 1)")->capture_default_str();
    sub->add_option("--omega0", config.omega0, "band limit in rad/s")->capture_default_str();
    sub->add_option("--alpha", config.alpha, "damping exponent (>= 0)")->capture_default_str();
    sub->add_option("--rel-tol", config.rel_tol, "quadrature relative tolerance")->capture_default_str();
    sub->add_option("--out", config.out, "output directory")->capture_default_str();
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    if (grid) {
      sub->add_option("--grid-min", grid_min, "grid lower bound (units of 1/omega0 or omega0)");
      sub->add_option("--grid-max", grid_max, "grid upper bound");
      sub->add_option("--grid-count", config.grid_count, "number of grid points")->capture_default_str();
    }
  };

  auto* signal = app.add_subcommand("signal", "sample f(t) on a time grid");
  add_common(signal, true);

  auto* spectrum = app.add_subcommand("spectrum", "Fourier transform of f on a frequency grid");
  add_common(spectrum, true);
  spectrum->add_option("--method", config.method, "quadrature, discrete, gaussian_sum, airy or all")
      ->capture_default_str();
  spectrum->add_option("--precision-bits", config.precision_bits, "mantissa bits for gaussian_sum (0 = minimal)");
  spectrum->add_option("--airy-argument", airy_argument, "linear or grouped")
      ->check(CLI::IsMember({"linear", "grouped"}));
  spectrum->add_option("--band-low", band_low, "lower edge of a band energy query");
  spectrum->add_option("--band-high", band_high, "upper edge of a band energy query");

  auto* yield = app.add_subcommand("yield", "energy yield of the flat region");
  add_common(yield, false);
  yield->add_option("--delta", config.deltas, "accuracy level(s) in (0, 1)")->expected(1, -1);

  auto* figures = app.add_subcommand("figures", "reproduce the reference figures (a = 2; n = 16, 128, 1024)");
  figures->add_option("--figure", config.figure, "1, 2 or 3 (default: all)");
  figures->add_option("--out", config.out, "output directory")->capture_default_str();
  figures->add_option("--rel-tol", config.rel_tol, "quadrature relative tolerance")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    auto* sub = app.get_subcommands().front();
    config.command = cli::command_from_string(sub->get_name());
    config.format = cli::format_from_string(format);
    if (sub->get_option_no_throw("--grid-min") && sub->count("--grid-min")) config.grid_min = grid_min;
    if (sub->get_option_no_throw("--grid-max") && sub->count("--grid-max")) config.grid_max = grid_max;
    if (sub->get_option_no_throw("--band-low") && sub->count("--band-low")) config.band_low = band_low;
    if (sub->get_option_no_throw("--band-high") && sub->count("--band-high")) config.band_high = band_high;
    if (airy_argument == "grouped") config.airy_argument = AiryArgument::printed_grouping;

    const auto result = cli::run(config);
    for (const auto& line : result.summary) std::cout << line << '\n';
    for (const auto& file : result.files) std::cout << "wrote " << file.string() << '\n';
    return 0;
  } catch (const numerics::QuadratureError& e) {
    std::cerr << "error: " << e.what() << " (best estimate " << e.best_estimate().real() << ", error estimate "
              << e.error_estimate() << ")\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
