#include "superosc/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace superosc {

SignalParams::SignalParams(int n, double omega0, double omega1, double alpha)
    : n_(n), omega0_(omega0), omega1_(omega1), alpha_(alpha) {
  if (n < 1) throw std::invalid_argument("order n must be a positive integer (got " + std::to_string(n) + ")");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("omega0 must be finite and > 0");
  if (!(omega1 > omega0) || !std::isfinite(omega1)) {
    throw std::invalid_argument("omega1 must exceed omega0 (superoscillatory regime, c > 0)");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite and >= 0");
}

std::complex<double> LogComplex::value() const {
  if (!representable()) throw std::overflow_error("log-modulus too large for a linear complex value");
  return std::polar(std::exp(log_mag), phase);
}

namespace {

// Continuous branch of arctan(a tan(theta)): reduce theta to r in [-pi/2, pi/2]
// around k pi, where the principal atan2 is continuous, and add back k pi.
double unwrapped_phase_per_order(double theta, double a) {
  const double k = std::round(theta / std::numbers::pi);
  const double r = theta - k * std::numbers::pi;
  return k * std::numbers::pi + std::atan2(a * std::sin(r), std::cos(r));
}

double damping_log(const SignalParams& p, double t) {
  const double x = p.omega0() * t;
  return p.alpha() * p.c() * x * x / (2.0 * p.n());
}

}  // namespace

LogComplex eval_g(const SignalParams& params, double t) {
  const double n = params.n();
  const double theta = params.omega0() * t / n;
  const double s = std::sin(theta);
  return {0.5 * n * std::log1p(params.c() * s * s), n * unwrapped_phase_per_order(theta, params.ratio())};
}

LogComplex eval_f(const SignalParams& params, double t) {
  LogComplex g = eval_g(params, t);
  g.log_mag -= damping_log(params, t);
  return g;
}

double log_modulus_sq_f(const SignalParams& params, double t) { return 2.0 * eval_f(params, t).log_mag; }

double modulus_sq_f(const SignalParams& params, double t) {
  const double lm = log_modulus_sq_f(params, t);
  if (lm >= 2.0 * LogComplex::kMaxLinearLogMag) {
    throw std::overflow_error("|f|^2 overflows double precision at w0 t = " + std::to_string(params.omega0() * t));
  }
  return std::exp(lm);
}

double modulus_sq_deficit_f(const SignalParams& params, double t) {
  return -std::expm1(log_modulus_sq_f(params, t));
}

double local_frequency(const SignalParams& params, double t) {
  const double s = std::sin(params.omega0() * t / params.n());
  return params.omega1() / (1.0 + params.c() * s * s);
}

}  // namespace superosc
