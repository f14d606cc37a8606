#include "superosc/analysis.hpp"

#include "superosc/numerics/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace superosc {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
}

void check_finite_energy(const SignalParams& p) {
  if (!(p.alpha() > 0.0)) {
    throw std::domain_error(
        "energy of f diverges for alpha = 0: |g|^2 is periodic and bounded below by 1, so the yield "
        "denominator is infinite");
  }
}

double quartic_coefficient(double c) { return c * c / 2.0 + c / 3.0; }

// Length scale of the bulk of |f|^2, used for the compactifying map.
double decay_scale(const SignalParams& p) { return energy_window(p) / 10.0; }

numerics::QuadratureOptions energy_options(const SignalParams& p, double rel_tol, std::size_t panels) {
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  opt.initial_panels = panels;
  opt.map_scale = decay_scale(p);
  return opt;
}

double checked(double energy) {
  if (!std::isfinite(energy)) throw std::overflow_error("signal energy overflows double precision");
  return energy;
}

}  // namespace

double range_g(const SignalParams& params, double delta) {
  check_delta(delta);
  return std::sqrt(delta * params.n() / params.c()) / params.omega0();
}

double range_f(const SignalParams& params, double delta) {
  check_delta(delta);
  const double n = params.n();
  return std::pow(delta * n * n * n / quartic_coefficient(params.c()), 0.25) / params.omega0();
}

double local_frequency_at_range(const SignalParams& params, double delta) {
  check_delta(delta);
  const double c = params.c();
  return params.omega1() * (1.0 - std::sqrt(c * delta / ((c / 2.0 + 1.0 / 3.0) * params.n())));
}

double energy_window(const SignalParams& params) {
  const double n = params.n();
  const double c = params.c();
  const double alpha = params.alpha();
  const double flat = std::pow(n * n * n / quartic_coefficient(c), 0.25);
  double window = flat;
  if (alpha > 0.0) {
    window = std::max(window, std::sqrt(n * std::log1p(c) / (alpha * c)));
    window *= 10.0;
    // |f|^2 <= (1 + c)^n exp(-alpha c (w0 t)^2 / n) < e^-80 beyond this point.
    window = std::max(window, std::sqrt(n * (n * std::log1p(c) + 80.0) / (alpha * c)));
  } else {
    window *= 10.0;
  }
  return window / params.omega0();
}

double total_energy(const SignalParams& params, double rel_tol) {
  check_finite_energy(params);
  const auto density = [&](double t) { return std::exp(log_modulus_sq_f(params, t)); };
  const double inf = std::numeric_limits<double>::infinity();
  return checked(numerics::adaptive_integrate<double>(density, -inf, inf, energy_options(params, rel_tol, 16)).value);
}

double window_energy(const SignalParams& params, double t, double rel_tol) {
  if (!(t >= 0.0)) throw std::invalid_argument("window half-width must be >= 0");
  const auto density = [&](double s) { return std::exp(log_modulus_sq_f(params, s)); };
  return checked(numerics::adaptive_integrate<double>(density, -t, t, energy_options(params, rel_tol, 8)).value);
}

double tail_energy(const SignalParams& params, double t, double rel_tol) {
  check_finite_energy(params);
  if (!(t >= 0.0)) throw std::invalid_argument("tail start must be >= 0");
  const auto density = [&](double s) { return std::exp(log_modulus_sq_f(params, s)); };
  const double inf = std::numeric_limits<double>::infinity();
  // |f|^2 is even, so both tails are twice the right one.
  return checked(
      2.0 * numerics::adaptive_integrate<double>(density, t, inf, energy_options(params, rel_tol, 8)).value);
}

YieldReport yield_delta(const SignalParams& params, double delta, double rel_tol) {
  check_delta(delta);
  check_finite_energy(params);
  YieldReport report;
  report.delta = delta;
  report.t_range = range_f(params, delta);
  report.total_energy = total_energy(params, rel_tol);
  report.useful_energy = window_energy(params, report.t_range, rel_tol);
  report.yield_value = report.useful_energy / report.total_energy;
  return report;
}

}  // namespace superosc
