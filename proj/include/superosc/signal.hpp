#pragma once

#include <complex>

namespace superosc {

/// Parameters of the signal family
///   g_n(t)    = [cos(w0 t/n) + i (w1/w0) sin(w0 t/n)]^n
///   f_n(t, a) = g_n(t) exp(-alpha c (w0 t)^2 / 2n),  c = (w1/w0)^2 - 1.
/// Frequencies in rad/s, times in seconds.
class SignalParams {
 public:
  /// Throws std::invalid_argument naming the violated invariant.
  SignalParams(int n, double omega0, double omega1, double alpha);

  /// Convenience for dimensionless runs: omega0 = 1, omega1 = ratio.
  static SignalParams dimensionless(int n, double ratio, double alpha = 1.0) {
    return SignalParams(n, 1.0, ratio, alpha);
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] double omega0() const { return omega0_; }
  [[nodiscard]] double omega1() const { return omega1_; }
  [[nodiscard]] double alpha() const { return alpha_; }
  [[nodiscard]] double ratio() const { return omega1_ / omega0_; }
  [[nodiscard]] double c() const {
    const double a = ratio();
    return a * a - 1.0;
  }

  [[nodiscard]] SignalParams with_n(int n) const { return {n, omega0_, omega1_, alpha_}; }
  [[nodiscard]] SignalParams with_alpha(double alpha) const { return {n_, omega0_, omega1_, alpha}; }

 private:
  int n_;
  double omega0_;
  double omega1_;
  double alpha_;
};

/// Complex value as (log modulus, unwrapped phase).
struct LogComplex {
  double log_mag = 0.0;
  double phase = 0.0;

  /// Linear values are only produced below this log-modulus.
  static constexpr double kMaxLinearLogMag = 700.0;

  [[nodiscard]] LogComplex conj() const { return {log_mag, -phase}; }
  [[nodiscard]] bool representable() const { return log_mag < kMaxLinearLogMag; }
  /// Throws std::overflow_error when not representable.
  [[nodiscard]] std::complex<double> value() const;
};

LogComplex eval_g(const SignalParams& params, double t);
LogComplex eval_f(const SignalParams& params, double t);

/// ln |f(t)|^2 = n ln(1 + c sin^2(w0 t/n)) - alpha c (w0 t)^2 / n. Never overflows.
double log_modulus_sq_f(const SignalParams& params, double t);
/// |f(t)|^2; throws std::overflow_error past the double range (alpha = 0, large n t).
double modulus_sq_f(const SignalParams& params, double t);
/// 1 - |f(t)|^2 without cancellation near t = 0.
double modulus_sq_deficit_f(const SignalParams& params, double t);

/// d/dt Arg g = w1 / (1 + c sin^2(w0 t/n)); identical for f.
double local_frequency(const SignalParams& params, double t);

}  // namespace superosc
