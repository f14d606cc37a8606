// Acceptance checks. Usage: acceptance [id ...]; runs all ten when no id is given.
// Prints one PASS/FAIL line per check and exits non-zero if any failed.

#include "superosc/analysis.hpp"
#include "superosc/cli/commands.hpp"
#include "superosc/cli/csv.hpp"
#include "superosc/spectrum.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace superosc;
namespace fs = std::filesystem;

namespace {

constexpr double kRatio = 2.0;
const std::vector<int> kOrders = {16, 128, 1024};

SignalParams order(int n, double alpha = 1.0) { return SignalParams::dimensionless(n, kRatio, alpha); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::vector<std::string> violated;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      violated.push_back(what);
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// ------------------------------------------------------------------ 1
Outcome envelope_law() {
  Outcome o;
  for (int n : kOrders) {
    const auto p = order(n);
    const double at_zero = modulus_sq_f(p, 0.0);
    o.require(std::fabs(at_zero - 1.0) <= 1e-12, "|f(0)|^2 = 1 at n=" + std::to_string(n));

    const double top = 3.0 * std::pow(n, 0.75);
    constexpr int kPoints = 10000;
    double prev = at_zero;
    int rises = 0;
    for (int i = 1; i < kPoints; ++i) {
      const double cur = modulus_sq_f(p, top * i / (kPoints - 1));
      if (cur > prev) ++rises;
      prev = cur;
    }
    o.require(rises == 0, "non-increasing at n=" + std::to_string(n));

    const double t = 0.05 * std::pow(n, 0.75);
    const double coeff = modulus_sq_deficit_f(p, t) * n * n * n / std::pow(t, 4);
    o.require(std::fabs(coeff / 5.5 - 1.0) < 0.01, "short-time coefficient at n=" + std::to_string(n));
    o.detail << "n=" << n << ": rises " << rises << ", coeff " << fmt(coeff) << "; ";
  }
  return o;
}

// ------------------------------------------------------------------ 2
Outcome local_frequency_check() {
  Outcome o;
  for (int n : kOrders) {
    const auto p = order(n);
    const double h = 1e-6 * n;
    double worst = 0.0;
    for (int i = -2000; i <= 2000; ++i) {
      const double t = n * i / 2000.0;
      const double numeric = (eval_f(p, t + h).phase - eval_f(p, t - h).phase) / (2.0 * h);
      const double closed = local_frequency(p, t);
      worst = std::max(worst, std::fabs(numeric / closed - 1.0));
    }
    o.require(worst < 1e-6, "phase derivative at n=" + std::to_string(n));
    o.detail << "n=" << n << " deriv rel " << fmt(worst) << "; ";
  }
  const auto p = order(128);
  const double delta = 0.05;
  const double at_g = local_frequency(p, range_g(p, delta));
  const double expect_g = kRatio * (1.0 - delta / 128.0);
  const double at_f = local_frequency(p, range_f(p, delta));
  const double expect_f = local_frequency_at_range(p, delta);
  const double err_g = std::fabs(at_g / expect_g - 1.0);
  const double err_f = std::fabs(at_f / expect_f - 1.0);
  o.require(err_g < 1e-3, "local frequency at the g range");
  o.require(err_f < 1e-3, "local frequency at the f range");
  o.detail << "endpoint rel errors " << fmt(err_g) << ", " << fmt(err_f);
  return o;
}

// ------------------------------------------------------------------ 3
Outcome range_formulas() {
  Outcome o;
  double worst = 0.0;
  for (int n : {1, 16, 64, 1024}) {
    const auto p = order(n);
    const auto q = order(16 * n);
    for (double delta : {0.01, 0.1, 0.5}) {
      worst = std::max(worst, std::fabs(range_g(q, delta) / range_g(p, delta) - 4.0));
      worst = std::max(worst, std::fabs(range_f(q, delta) / range_f(p, delta) - 8.0));
    }
  }
  o.require(worst < 1e-12, "scaling ratios 4 and 8");
  const double tg = range_g(order(16), 0.1);
  const double tf = range_f(order(16), 0.1);
  o.require(std::fabs(tg - 0.73030) < 1e-4, "w0 t^g = 0.73030");
  // (409.6 / 5.5)^(1/4) to 30 digits is 2.93764501591...; the quoted 2.9379 is off by 2.5e-4.
  constexpr double kRangeF = 2.937645015914874;
  o.require(std::fabs(tf - kRangeF) < 1e-4, "w0 t^f = 2.93765");
  o.detail << "ratio error " << fmt(worst) << "; w0 t^g " << std::to_string(tg) << ", w0 t^f " << std::to_string(tf)
           << " (quoted 2.9379 differs by " << fmt(std::fabs(tf - 2.9379)) << ")";
  return o;
}

// ------------------------------------------------------------------ 4
Outcome spectrum_cross_validation() {
  Outcome o;
  const auto omegas = uniform_grid(-3.0, 2.0 * kRatio, 701);
  for (int n : {16, 64, 128}) {
    const auto p = order(n);
    const auto q = evaluate_grid(p, omegas, SpectrumMethod::quadrature);
    const auto d = evaluate_grid(p, omegas, SpectrumMethod::discrete);
    const auto g = evaluate_grid(p, omegas, SpectrumMethod::gaussian_sum);
    GridOptions doubled;
    doubled.precision_bits = numerics::PrecisionPolicy::for_gaussian_sum(n, kRatio).doubled().mantissa_bits();
    const auto g2 = evaluate_grid(p, omegas, SpectrumMethod::gaussian_sum, doubled);
    const double scale = q.max_abs_value();
    double qd = 0.0, qg = 0.0, dg = 0.0, stab = 0.0;
    for (std::size_t i = 0; i < omegas.size(); ++i) {
      qd = std::max(qd, std::fabs(q.values[i] - d.values[i]) / scale);
      qg = std::max(qg, std::fabs(q.values[i] - g.values[i]) / scale);
      dg = std::max(dg, std::fabs(d.values[i] - g.values[i]) / scale);
      if (g2.values[i] != 0.0) stab = std::max(stab, std::fabs(g.values[i] / g2.values[i] - 1.0));
    }
    const std::string tag = " at n=" + std::to_string(n);
    o.require(std::max({qd, qg, dg}) < 1e-6, "three-method agreement" + tag);
    o.require(stab < 1e-12, "precision doubling" + tag);
    o.detail << "n=" << n << ": q-d " << fmt(qd) << " q-g " << fmt(qg) << " d-g " << fmt(dg) << " dbl " << fmt(stab)
             << "; ";
  }
  return o;
}

// ------------------------------------------------------------------ 5
Outcome reality_parseval() {
  Outcome o;
  const auto omegas = uniform_grid(-4.0, 5.0, 1801);
  for (int n : {16, 128}) {
    const auto p = order(n);
    const auto q = evaluate_grid(p, omegas, SpectrumMethod::quadrature);
    const double imag = q.max_abs_imag / q.max_abs_value();
    const double time_energy = total_energy(p);
    const double parseval = std::fabs(2.0 * std::numbers::pi * spectral_energy(q) / time_energy - 1.0);
    o.require(imag < 1e-8, "reality at n=" + std::to_string(n));
    o.require(parseval < 1e-6, "Parseval at n=" + std::to_string(n));
    o.detail << "n=" << n << ": imag " << fmt(imag) << ", Parseval " << fmt(parseval) << "; ";
  }
  return o;
}

// ------------------------------------------------------------------ 6
Outcome spectral_weight() {
  Outcome o;
  const auto omegas = uniform_grid(-1.0, 3.0, 2001);
  std::vector<double> band, peak, width;
  for (int n : kOrders) {
    const auto q = evaluate_grid(order(n), omegas, SpectrumMethod::quadrature);
    band.push_back(band_energy_fraction(q, -1.0, 1.0));
    peak.push_back(peak_location(q));
    width.push_back(full_width_half_max(q));
    o.detail << "n=" << n << ": band " << fmt(band.back()) << " peak " << fmt(peak.back()) << " fwhm "
             << fmt(width.back()) << "; ";
  }
  o.require(band[0] > band[1] && band[1] > band[2], "band fraction strictly decreasing");
  o.require(peak[2] > 1.9 && peak[2] < 2.0, "n=1024 peak in (1.9, 2.0)");
  o.require(width[0] > width[1] && width[1] > width[2], "FWHM decreasing");
  return o;
}

// ------------------------------------------------------------------ 7
double first_extremum_below_peak(const SpectrumGrid& grid) {
  const double peak = peak_location(grid);
  double best = -1e300;
  for (double x : local_extrema(grid)) {
    if (x < peak - 1e-3 && x > best) best = x;
  }
  return best;
}

Outcome airy_approximation() {
  Outcome o;
  const auto p = order(1024);
  const auto omegas = uniform_grid(1.8, 2.1, 1501);
  const auto q = evaluate_grid(p, omegas, SpectrumMethod::quadrature);
  const auto a = evaluate_grid(p, omegas, SpectrumMethod::airy);
  const double scale = fit_scale(a, q);
  auto scaled = a;
  for (double& v : scaled.values) v *= scale;
  const double qp = peak_location(q);
  const double ap = peak_location(scaled);
  const double qe = first_extremum_below_peak(q);
  const double ae = first_extremum_below_peak(scaled);
  o.require(std::fabs(ap / qp - 1.0) < 0.02, "main peak within 2%");
  o.require(std::fabs(ae / qe - 1.0) < 0.02, "first sub-w1 extremum within 2%");
  o.detail << "scale " << fmt(scale) << "; peak " << fmt(ap) << " vs " << fmt(qp) << "; extremum " << fmt(ae)
           << " vs " << fmt(qe) << "; sign changes in (0.8 w1, w1):";

  const auto band = uniform_grid(0.8 * kRatio, kRatio, 2001);
  int prev_q = -1;
  int prev_a = -1;
  for (int n : kOrders) {
    const int cq = sign_changes(evaluate_grid(order(n), band, SpectrumMethod::quadrature), 0.8 * kRatio, kRatio);
    const int ca = sign_changes(evaluate_grid(order(n), band, SpectrumMethod::airy), 0.8 * kRatio, kRatio);
    o.require(cq >= prev_q, "quadrature sign changes non-decreasing");
    o.require(ca >= prev_a, "Airy sign changes non-decreasing");
    prev_q = cq;
    prev_a = ca;
    o.detail << " n=" << n << " " << cq << "/" << ca;
  }
  o.detail << " (quadrature/Airy)";
  return o;
}

// ------------------------------------------------------------------ 8
Outcome yield_check() {
  Outcome o;
  std::vector<double> y;
  for (int n : kOrders) {
    y.push_back(yield_delta(order(n), 0.1).yield_value);
    o.detail << "Y(n=" << n << ") " << fmt(y.back()) << "; ";
  }
  o.require(y[0] < y[1] && y[1] < y[2], "monotone increasing in n");
  o.require(y[2] >= 0.5, "n=1024 yield >= 0.5");
  return o;
}

// ------------------------------------------------------------------ 9
double pointwise_error(int n, double alpha) {
  return std::abs(eval_f(order(n, alpha), 1.0).value() - std::polar(1.0, kRatio));
}

Outcome convergence() {
  Outcome o;
  const std::vector<int> ns = {128, 256, 512};
  o.detail << "alpha=1 error ratios";
  for (std::size_t i = 1; i < ns.size(); ++i) {
    const double r = pointwise_error(ns[i], 1.0) / pointwise_error(ns[i - 1], 1.0);
    o.require(r > 0.4 && r < 0.6, "error halves per doubling (n=" + std::to_string(ns[i]) + ")");
    o.detail << " " << fmt(r);
  }
  o.detail << "; alpha=0 error ratios";
  for (std::size_t i = 1; i < ns.size(); ++i) {
    o.detail << " " << fmt(pointwise_error(ns[i], 0.0) / pointwise_error(ns[i - 1], 0.0));
  }
  o.detail << " (informational)";
  return o;
}

// ------------------------------------------------------------------ 10
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Outcome figure_reproduction() {
  Outcome o;
  const auto root = fs::temp_directory_path() / ("superosc_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  cli::RunConfig config;
  config.command = cli::Command::figures;
  config.out = root / "a";
  cli::cmd_figures(config);
  config.out = root / "b";
  cli::cmd_figures(config);

  int files = 0;
  int identical = 0;
  for (int fig : {1, 2, 3}) {
    for (int n : kOrders) {
      const std::string name = "figure" + std::to_string(fig) + "_n" + std::to_string(n) + ".csv";
      const bool present = fs::exists(root / "a" / name);
      o.require(present, name + " emitted");
      if (!present) continue;
      ++files;
      if (slurp(root / "a" / name) == slurp(root / "b" / name)) ++identical;
    }
  }
  o.require(identical == files, "byte-identical reruns");

  double worst = 0.0;
  for (int n : kOrders) {
    const auto table = cli::read_csv(root / "a" / ("figure1_n" + std::to_string(n) + ".csv"));
    const double tf = range_f(order(n), 0.1);
    const auto& t = table.column("omega0_t");
    const auto& m = table.column("modulus_sq");
    int inside = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::fabs(t[i]) <= tf) {
        ++inside;
        worst = std::max(worst, std::fabs(m[i] - 1.0));
      }
    }
    o.require(inside > 100, "figure 1 grid resolves the flat region at n=" + std::to_string(n));
  }
  o.require(worst <= 0.1, "figure 1 within 0.1 of 1 inside +-t^f");
  o.detail << files << " CSVs, " << identical << " identical on rerun; max |1 - |f|^2| inside t^f " << fmt(worst);
  fs::remove_all(root);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "envelope law", envelope_law},
      {2, "local frequency", local_frequency_check},
      {3, "range formulas", range_formulas},
      {4, "spectrum cross-validation", spectrum_cross_validation},
      {5, "reality and Parseval", reality_parseval},
      {6, "spectral weight leaves the band", spectral_weight},
      {7, "Airy approximation", airy_approximation},
      {8, "yield", yield_check},
      {9, "pointwise convergence", convergence},
      {10, "figure reproduction", figure_reproduction},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& c : all) selected.push_back(c.id);
  }

  int failures = 0;
  for (int id : selected) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; });
    if (it == all.end()) {
      std::printf("criterion %d FAIL unknown id\n", id);
      ++failures;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = it->run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << "exception: " << e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string detail = outcome.detail.str();
    while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
    for (const auto& v : outcome.violated) detail += "; violated: " + v;
    std::printf("criterion %2d %s  %s | %s | %.2f s\n", id, outcome.pass ? "PASS" : "FAIL", it->title,
                detail.c_str(), seconds);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
