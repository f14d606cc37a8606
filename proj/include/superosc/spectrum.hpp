#pragma once

#include "superosc/numerics/big_float.hpp"
#include "superosc/numerics/signed_log.hpp"
#include "superosc/signal.hpp"

#include <complex>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace superosc {

// All transforms use f^(w) = (1/2pi) Int f(t) exp(-i w t) dt.

enum class SpectrumMethod { quadrature, discrete, gaussian_sum, airy };

std::string_view to_string(SpectrumMethod method);
/// Throws std::invalid_argument for unknown names.
SpectrumMethod spectrum_method_from_string(std::string_view name);

/// Real spectrum sampled on a frequency grid given in units of omega0.
struct SpectrumGrid {
  static constexpr std::string_view kConvention = "forward, 1/(2pi) normalization";

  std::vector<double> omegas;
  std::vector<double> values;
  SpectrumMethod method = SpectrumMethod::quadrature;
  /// Largest |Im f^| seen while building the grid (zero for real-only methods).
  double max_abs_imag = 0.0;

  /// Throws std::invalid_argument unless omegas strictly increase and values are finite.
  void validate() const;
  [[nodiscard]] std::size_t size() const { return omegas.size(); }
  [[nodiscard]] double max_abs_value() const;
};

// ---------------------------------------------------------------- quadrature

struct QuadratureSpectrumValue {
  double value = 0.0;  ///< Re f^(w)
  double imag = 0.0;   ///< Im f^(w); zero up to quadrature error for this signal
  double error_estimate = 0.0;
};

/// Direct quadrature of the transform integral. Caches the integration window
/// and the magnitude scale used for the absolute error floor.
class QuadratureTransform {
 public:
  QuadratureTransform(const SignalParams& params, double rel_tol);

  /// omega in rad/s.
  [[nodiscard]] QuadratureSpectrumValue evaluate(double omega) const;

  [[nodiscard]] double window() const { return window_; }
  [[nodiscard]] double abs_tol() const { return abs_tol_; }

 private:
  SignalParams params_;
  double rel_tol_;
  double window_;
  double abs_tol_;
};

QuadratureSpectrumValue ft_quadrature(const SignalParams& params, double omega, double rel_tol = 1e-10);

// ------------------------------------------------------------------ discrete

struct DiscreteLayout {
  double t_span = 0.0;
  std::size_t samples = 0;
};

/// Default sampling: t_span = 20 n^{3/4} / w0, spacing <= 0.05 / w1, samples a power of two.
DiscreteLayout default_discrete_layout(const SignalParams& params);

/// FFT of `signal` sampled on [-t_span/2, t_span/2), rescaled to the continuous
/// transform. Grid spacing is 2pi / t_span; omegas reported in units of omega0.
/// Throws std::invalid_argument when the samples at the window edge exceed
/// 1e-14 of the peak modulus, or when samples is not a power of two.
SpectrumGrid ft_discrete_samples(const std::function<std::complex<double>(double)>& signal, double omega0,
                                 double t_span, std::size_t samples);

SpectrumGrid ft_discrete(const SignalParams& params, double t_span, std::size_t samples);

// -------------------------------------------------------------- gaussian sum

/// f^(w) = 2^-n sum_m C(n,m) (1+a)^m (1-a)^(n-m) G_n(w_m - w),
///   w_m = (2m - n) w0 / n,  G_n(eta) = sqrt(n / (2pi c w0^2)) exp(-n eta^2 / (2 c w0^2)),
/// evaluated with every term in extended precision. Only alpha = 1.
class GaussianSumTransform {
 public:
  /// Throws PrecisionError when the policy is below the cancellation budget,
  /// std::invalid_argument when alpha != 1.
  GaussianSumTransform(const SignalParams& params, numerics::PrecisionPolicy policy);

  [[nodiscard]] double evaluate(double omega) const;
  /// Sum of the coefficients 2^-n C(n,m)(1+a)^m(1-a)^(n-m), which is exactly 1.
  [[nodiscard]] numerics::BigFloat coefficient_sum() const;
  [[nodiscard]] numerics::PrecisionPolicy policy() const { return policy_; }

 private:
  SignalParams params_;
  numerics::PrecisionPolicy policy_;
  std::vector<numerics::BigFloat> coefficients_;
  std::vector<numerics::BigFloat> centers_;  // (2m - n)/n, units of omega0
  numerics::BigFloat exponent_scale_;        // n / (2c)
  double prefactor_;                         // sqrt(n / (2 pi c)) / omega0
};

double ft_gaussian_sum(const SignalParams& params, double omega, numerics::PrecisionPolicy policy);

// ---------------------------------------------------------------------- airy

enum class AiryArgument {
  /// Ai(K^{1/3} (w - w1)/w0): cube root on the scale K = n^2/(c a) only.
  linear,
  /// Ai(cbrt(K (w - w1)/w0)): cube root over the whole signed product.
  printed_grouping,
};

/// 2pi K^{1/3} Ai(.) exp(-(w/w1 - 1)^2 (c + 2/3) n / (4c)), omega in rad/s.
/// The 2pi prefactor is kept as written; against the 1/(2pi) convention the
/// amplitude needs a global scale (see fit_scale).
double ft_airy(const SignalParams& params, double omega, AiryArgument argument = AiryArgument::linear);

// --------------------------------------------------------------------- grids

std::vector<double> uniform_grid(double lo, double hi, std::size_t count);

struct GridOptions {
  double rel_tol = 1e-10;
  /// Zero means the minimal policy for the params.
  int precision_bits = 0;
  AiryArgument airy_argument = AiryArgument::linear;
};

/// Evaluate a pointwise method on omegas given in units of omega0.
/// SpectrumMethod::discrete is served by FFT on the default layout
/// (zero-padded 4x) plus local Lagrange interpolation.
SpectrumGrid evaluate_grid(const SignalParams& params, std::span<const double> omegas_over_omega0,
                           SpectrumMethod method, const GridOptions& options = {});

/// Degree-7 Lagrange interpolation of a grid at the given abscissae.
std::vector<double> interpolate(const SpectrumGrid& grid, std::span<const double> omegas_over_omega0);

/// Sub-grid with low <= omega <= high.
SpectrumGrid crop(const SpectrumGrid& grid, double low, double high);

/// Least-squares scale s minimising |s model - reference|^2 on a shared grid.
double fit_scale(const SpectrumGrid& model, const SpectrumGrid& reference);

// ---------------------------------------------------------------- diagnostics

/// Int_band f^2 / Int_grid f^2 by the trapezoid rule, with the integrand
/// linearly interpolated at band edges. Throws std::invalid_argument when the
/// band leaves the grid or low > high.
double band_energy_fraction(const SpectrumGrid& grid, double low, double high);

/// Trapezoid integral of f^2 over the grid (units of omega0).
double spectral_energy(const SpectrumGrid& grid);

/// Abscissa of max |value|, refined by a 3-point parabola.
double peak_location(const SpectrumGrid& grid);

/// Width of the contiguous region around the peak where |value| >= peak/2.
double full_width_half_max(const SpectrumGrid& grid);

/// Sign changes of the values strictly inside (low, high).
int sign_changes(const SpectrumGrid& grid, double low, double high);

/// Interior local extrema (parabola-refined abscissae), ascending.
std::vector<double> local_extrema(const SpectrumGrid& grid);

}  // namespace superosc
