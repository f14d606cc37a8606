#pragma once

#include "superosc/signal.hpp"

namespace superosc {

/// Energy bookkeeping for one (params, delta) pair. Times in seconds.
struct YieldReport {
  double delta = 0.0;
  double t_range = 0.0;  ///< half-width t^f of the flat region
  double useful_energy = 0.0;
  double total_energy = 0.0;
  double yield_value = 0.0;  ///< useful_energy / total_energy
};

/// Time where |g|^2 departs from 1 by delta (small-angle law): w0 t = sqrt(delta n / c).
double range_g(const SignalParams& params, double delta);

/// Time where |f|^2 departs from 1 by delta under the quartic short-time law
/// 1 - |f|^2 = (c^2/2 + c/3) (w0 t)^4 / n^3, which holds for alpha = 1.
double range_f(const SignalParams& params, double delta);

/// Local frequency at range_f, linearised: w1 (1 - sqrt(c delta / ((c/2 + 1/3) n))).
double local_frequency_at_range(const SignalParams& params, double delta);

/// Half-width beyond which |f|^2 is negligible (< e^-80 relative to its bound).
double energy_window(const SignalParams& params);

/// Integral of |f|^2 over the whole line. alpha = 0 is rejected (diverges).
double total_energy(const SignalParams& params, double rel_tol = 1e-10);
/// Integral of |f|^2 over [-t, t].
double window_energy(const SignalParams& params, double t, double rel_tol = 1e-10);
/// Integral of |f|^2 over |s| > t (both tails).
double tail_energy(const SignalParams& params, double t, double rel_tol = 1e-10);

YieldReport yield_delta(const SignalParams& params, double delta, double rel_tol = 1e-10);

}  // namespace superosc
