#include "superosc/spectrum.hpp"

#include "superosc/analysis.hpp"
#include "superosc/numerics/quadrature.hpp"
#include "superosc/numerics/special.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace superosc {

using numerics::BigFloat;
using numerics::PrecisionPolicy;

std::string_view to_string(SpectrumMethod method) {
  switch (method) {
    case SpectrumMethod::quadrature: return "quadrature";
    case SpectrumMethod::discrete: return "discrete";
    case SpectrumMethod::gaussian_sum: return "gaussian_sum";
    case SpectrumMethod::airy: return "airy";
  }
  return "unknown";
}

SpectrumMethod spectrum_method_from_string(std::string_view name) {
  for (auto m : {SpectrumMethod::quadrature, SpectrumMethod::discrete, SpectrumMethod::gaussian_sum,
                 SpectrumMethod::airy}) {
    if (name == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown spectrum method '" + std::string(name) + "'");
}

void SpectrumGrid::validate() const {
  if (omegas.size() != values.size()) throw std::invalid_argument("spectrum grid: omegas/values size mismatch");
  for (std::size_t i = 1; i < omegas.size(); ++i) {
    if (!(omegas[i] > omegas[i - 1])) throw std::invalid_argument("spectrum grid: omegas must strictly increase");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("spectrum grid: non-finite value");
  }
}

double SpectrumGrid::max_abs_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}

// ---------------------------------------------------------------- quadrature

QuadratureTransform::QuadratureTransform(const SignalParams& params, double rel_tol)
    : params_(params), rel_tol_(rel_tol), window_(0.0), abs_tol_(0.0) {
  if (!(params.alpha() > 0.0)) throw std::domain_error("transform integral diverges for alpha = 0");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  window_ = energy_window(params);
  numerics::QuadratureOptions opt;
  opt.rel_tol = 1e-6;
  opt.initial_panels = 16;
  const auto modulus = [&](double t) { return std::exp(eval_f(params_, t).log_mag); };
  const double l1 = numerics::adaptive_integrate<double>(modulus, -window_, window_, opt).value;
  // |f^| <= l1 / 2pi everywhere, so this floor is relative to the spectrum's scale.
  abs_tol_ = rel_tol_ * l1;
}

QuadratureSpectrumValue QuadratureTransform::evaluate(double omega) const {
  const auto integrand = [&](double t) {
    const LogComplex f = eval_f(params_, t);
    return std::polar(std::exp(f.log_mag), f.phase - omega * t);
  };
  numerics::QuadratureOptions opt;
  opt.rel_tol = rel_tol_;
  opt.abs_tol = abs_tol_;
  // Roughly one oscillation of the integrand per initial panel.
  const double fastest = params_.omega1() + std::fabs(omega);
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * window_ * fastest / (2.0 * std::numbers::pi)));
  opt.initial_panels = std::clamp<std::size_t>(panels, 16, opt.max_panels / 4);
  const auto r = numerics::adaptive_integrate<std::complex<double>>(integrand, -window_, window_, opt);
  const double norm = 1.0 / (2.0 * std::numbers::pi);
  return {r.value.real() * norm, r.value.imag() * norm, r.error_estimate * norm};
}

QuadratureSpectrumValue ft_quadrature(const SignalParams& params, double omega, double rel_tol) {
  return QuadratureTransform(params, rel_tol).evaluate(omega);
}

// ------------------------------------------------------------------ discrete

namespace {

bool is_power_of_two(std::size_t x) { return x >= 2 && (x & (x - 1)) == 0; }

std::size_t next_power_of_two(double x) {
  std::size_t p = 2;
  while (static_cast<double>(p) < x) p <<= 1;
  return p;
}

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

DiscreteLayout default_discrete_layout(const SignalParams& params) {
  const double span = 2.0 * 10.0 * std::pow(static_cast<double>(params.n()), 0.75) / params.omega0();
  const double max_step = 0.05 / params.omega1();
  return {span, next_power_of_two(span / max_step)};
}

SpectrumGrid ft_discrete_samples(const std::function<std::complex<double>(double)>& signal, double omega0,
                                 double t_span, std::size_t samples) {
  if (!is_power_of_two(samples)) throw std::invalid_argument("discrete transform needs a power-of-two sample count");
  if (!(t_span > 0.0) || !(omega0 > 0.0)) throw std::invalid_argument("t_span and omega0 must be positive");

  const double dt = t_span / static_cast<double>(samples);
  const double t0 = -0.5 * t_span;
  fftw_complex* buffer = fftw_alloc_complex(samples);
  if (buffer == nullptr) throw std::bad_alloc();
  std::unique_ptr<fftw_complex, decltype(&fftw_free)> guard(buffer, &fftw_free);

  double peak = 0.0;
  for (std::size_t j = 0; j < samples; ++j) {
    const std::complex<double> v = signal(t0 + dt * static_cast<double>(j));
    buffer[j][0] = v.real();
    buffer[j][1] = v.imag();
    peak = std::max(peak, std::abs(v));
  }
  const double edge = std::max(std::abs(signal(t0)), std::abs(signal(-t0)));
  if (!(edge <= 1e-14 * peak)) {
    throw std::invalid_argument("t_span does not cover the signal support: edge modulus " + std::to_string(edge) +
                                " exceeds 1e-14 of peak " + std::to_string(peak));
  }

  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(samples), buffer, buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }

  SpectrumGrid grid;
  grid.method = SpectrumMethod::discrete;
  grid.omegas.resize(samples);
  grid.values.resize(samples);
  const auto half = static_cast<std::ptrdiff_t>(samples / 2);
  const double d_omega = 2.0 * std::numbers::pi / t_span;
  const double scale = dt / (2.0 * std::numbers::pi);
  for (std::ptrdiff_t k = -half; k < half; ++k) {
    const std::size_t bin = static_cast<std::size_t>(k < 0 ? k + static_cast<std::ptrdiff_t>(samples) : k);
    const double omega = d_omega * static_cast<double>(k);
    // Shift the time origin from t0 back to 0.
    const std::complex<double> raw(buffer[bin][0], buffer[bin][1]);
    const std::complex<double> value = scale * raw * std::polar(1.0, -omega * t0);
    const auto out = static_cast<std::size_t>(k + half);
    grid.omegas[out] = omega / omega0;
    grid.values[out] = value.real();
    grid.max_abs_imag = std::max(grid.max_abs_imag, std::fabs(value.imag()));
  }
  return grid;
}

SpectrumGrid ft_discrete(const SignalParams& params, double t_span, std::size_t samples) {
  const auto signal = [&](double t) {
    const LogComplex f = eval_f(params, t);
    if (!f.representable()) throw std::overflow_error("signal modulus overflows inside the sampling window");
    return f.value();
  };
  return ft_discrete_samples(signal, params.omega0(), t_span, samples);
}

// -------------------------------------------------------------- gaussian sum

GaussianSumTransform::GaussianSumTransform(const SignalParams& params, PrecisionPolicy policy)
    : params_(params), policy_(policy), exponent_scale_(policy.mantissa_bits()), prefactor_(0.0) {
  if (params.alpha() != 1.0) {
    throw std::invalid_argument("Gaussian-sum transform is derived for alpha = 1 only");
  }
  const int required = PrecisionPolicy::required_bits(params.n(), params.ratio());
  if (policy.mantissa_bits() < required) {
    throw numerics::PrecisionError("Gaussian-sum transform at n = " + std::to_string(params.n()) + " needs " +
                                   std::to_string(required) + " mantissa bits, policy offers " +
                                   std::to_string(policy.mantissa_bits()));
  }
  const mpfr_prec_t bits = policy.mantissa_bits();
  const auto n = static_cast<unsigned long>(params.n());
  const BigFloat a(params.ratio(), bits);
  const BigFloat one(1.0, bits);
  const BigFloat up = one + a;
  const BigFloat down = one - a;

  coefficients_.reserve(n + 1);
  centers_.reserve(n + 1);
  for (unsigned long m = 0; m <= n; ++m) {
    BigFloat coef = BigFloat::binomial(n, m, bits);
    coef *= numerics::pow(up, m);
    coef *= numerics::pow(down, n - m);
    mpfr_div_2ui(coef.raw(), coef.raw(), n, MPFR_RNDN);
    coefficients_.push_back(std::move(coef));

    BigFloat center(static_cast<long>(2 * m) - static_cast<long>(n), bits);
    center /= n;
    centers_.push_back(std::move(center));
  }
  const BigFloat c = a * a - one;
  exponent_scale_ = BigFloat(static_cast<long>(n), bits) / (c + c);
  prefactor_ = std::sqrt(params.n() / (2.0 * std::numbers::pi * params.c())) / params.omega0();
}

double GaussianSumTransform::evaluate(double omega) const {
  const mpfr_prec_t bits = policy_.mantissa_bits();
  const BigFloat w(omega / params_.omega0(), bits);
  numerics::ExtendedAccumulator acc(policy_);
  acc.reserve(coefficients_.size());
  BigFloat x(bits);
  for (std::size_t m = 0; m < coefficients_.size(); ++m) {
    mpfr_sub(x.raw(), centers_[m].raw(), w.raw(), MPFR_RNDN);
    mpfr_sqr(x.raw(), x.raw(), MPFR_RNDN);
    mpfr_mul(x.raw(), x.raw(), exponent_scale_.raw(), MPFR_RNDN);
    mpfr_neg(x.raw(), x.raw(), MPFR_RNDN);
    BigFloat term = numerics::exp(x);
    term *= coefficients_[m];
    acc.add(std::move(term));
  }
  return acc.sum().to_double() * prefactor_;
}

BigFloat GaussianSumTransform::coefficient_sum() const {
  numerics::ExtendedAccumulator acc(policy_);
  for (const auto& c : coefficients_) acc.add(c);
  return acc.sum();
}

double ft_gaussian_sum(const SignalParams& params, double omega, PrecisionPolicy policy) {
  return GaussianSumTransform(params, policy).evaluate(omega);
}

// ---------------------------------------------------------------------- airy

double ft_airy(const SignalParams& params, double omega, AiryArgument argument) {
  const double n = params.n();
  const double c = params.c();
  const double a = params.ratio();
  const double scale = n * n / (c * a);
  const double offset = (omega - params.omega1()) / params.omega0();
  const double arg = argument == AiryArgument::linear ? std::cbrt(scale) * offset
                                                      : numerics::signed_cbrt(scale * offset);
  const double rel = omega / params.omega1() - 1.0;
  const double envelope = std::exp(-rel * rel * (c + 2.0 / 3.0) / (4.0 * c) * n);
  return 2.0 * std::numbers::pi * std::cbrt(scale) * numerics::airy_ai(arg) * envelope;
}

// --------------------------------------------------------------------- grids

std::vector<double> uniform_grid(double lo, double hi, std::size_t count) {
  if (count < 2) throw std::invalid_argument("grid count must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("grid needs min < max");
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

SpectrumGrid evaluate_grid(const SignalParams& params, std::span<const double> omegas_over_omega0,
                           SpectrumMethod method, const GridOptions& options) {
  SpectrumGrid grid;
  grid.method = method;
  grid.omegas.assign(omegas_over_omega0.begin(), omegas_over_omega0.end());
  grid.values.resize(grid.omegas.size());
  const double w0 = params.omega0();

  switch (method) {
    case SpectrumMethod::quadrature: {
      const QuadratureTransform transform(params, options.rel_tol);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto v = transform.evaluate(grid.omegas[i] * w0);
        grid.values[i] = v.value;
        grid.max_abs_imag = std::max(grid.max_abs_imag, std::fabs(v.imag));
      }
      break;
    }
    case SpectrumMethod::gaussian_sum: {
      const PrecisionPolicy policy = options.precision_bits > 0
                                         ? PrecisionPolicy(options.precision_bits)
                                         : PrecisionPolicy::for_gaussian_sum(params.n(), params.ratio());
      const GaussianSumTransform transform(params, policy);
      for (std::size_t i = 0; i < grid.size(); ++i) grid.values[i] = transform.evaluate(grid.omegas[i] * w0);
      break;
    }
    case SpectrumMethod::airy: {
      for (std::size_t i = 0; i < grid.size(); ++i) {
        grid.values[i] = ft_airy(params, grid.omegas[i] * w0, options.airy_argument);
      }
      break;
    }
    case SpectrumMethod::discrete: {
      DiscreteLayout layout = default_discrete_layout(params);
      layout.t_span *= 4.0;
      layout.samples *= 4;
      const SpectrumGrid fft = ft_discrete(params, layout.t_span, layout.samples);
      grid.values = interpolate(fft, grid.omegas);
      grid.max_abs_imag = fft.max_abs_imag;
      break;
    }
  }
  grid.validate();
  return grid;
}

std::vector<double> interpolate(const SpectrumGrid& grid, std::span<const double> omegas_over_omega0) {
  constexpr std::size_t kPoints = 8;
  if (grid.size() < kPoints) throw std::invalid_argument("interpolation needs at least 8 grid points");
  std::vector<double> out;
  out.reserve(omegas_over_omega0.size());
  for (double x : omegas_over_omega0) {
    if (x < grid.omegas.front() || x > grid.omegas.back()) {
      throw std::invalid_argument("interpolation point outside the grid");
    }
    const auto upper = std::lower_bound(grid.omegas.begin(), grid.omegas.end(), x);
    const auto idx = static_cast<std::size_t>(upper - grid.omegas.begin());
    std::size_t first = idx >= kPoints / 2 ? idx - kPoints / 2 : 0;
    first = std::min(first, grid.size() - kPoints);
    double sum = 0.0;
    for (std::size_t i = first; i < first + kPoints; ++i) {
      double basis = 1.0;
      for (std::size_t j = first; j < first + kPoints; ++j) {
        if (j != i) basis *= (x - grid.omegas[j]) / (grid.omegas[i] - grid.omegas[j]);
      }
      sum += basis * grid.values[i];
    }
    out.push_back(sum);
  }
  return out;
}

SpectrumGrid crop(const SpectrumGrid& grid, double low, double high) {
  SpectrumGrid out;
  out.method = grid.method;
  out.max_abs_imag = grid.max_abs_imag;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid.omegas[i] >= low && grid.omegas[i] <= high) {
      out.omegas.push_back(grid.omegas[i]);
      out.values.push_back(grid.values[i]);
    }
  }
  return out;
}

double fit_scale(const SpectrumGrid& model, const SpectrumGrid& reference) {
  if (model.size() != reference.size()) throw std::invalid_argument("fit_scale: grids differ in size");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    num += model.values[i] * reference.values[i];
    den += model.values[i] * model.values[i];
  }
  if (den == 0.0) throw std::invalid_argument("fit_scale: model is identically zero");
  return num / den;
}

// ---------------------------------------------------------------- diagnostics

namespace {

// Trapezoid integral of value^2 over [low, high], integrand linear between nodes.
double squared_integral(const SpectrumGrid& grid, double low, double high) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double x0 = grid.omegas[i];
    const double x1 = grid.omegas[i + 1];
    const double l = std::max(x0, low);
    const double r = std::min(x1, high);
    if (!(r > l)) continue;
    const double y0 = grid.values[i] * grid.values[i];
    const double y1 = grid.values[i + 1] * grid.values[i + 1];
    const auto at = [&](double x) { return y0 + (y1 - y0) * (x - x0) / (x1 - x0); };
    total += 0.5 * (at(l) + at(r)) * (r - l);
  }
  return total;
}

std::size_t argmax_abs(const SpectrumGrid& grid) {
  if (grid.size() == 0) throw std::invalid_argument("empty spectrum grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::fabs(grid.values[i]) > std::fabs(grid.values[best])) best = i;
  }
  return best;
}

double parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
  const double d10 = x1 - x0;
  const double d12 = x1 - x2;
  const double den = d10 * (y1 - y2) - d12 * (y1 - y0);
  if (den == 0.0) return x1;
  const double num = d10 * d10 * (y1 - y2) - d12 * d12 * (y1 - y0);
  return x1 - 0.5 * num / den;
}

}  // namespace

double spectral_energy(const SpectrumGrid& grid) {
  if (grid.size() < 2) return 0.0;
  return squared_integral(grid, grid.omegas.front(), grid.omegas.back());
}

double band_energy_fraction(const SpectrumGrid& grid, double low, double high) {
  if (grid.size() < 2) throw std::invalid_argument("band energy needs at least two grid points");
  if (low > high) throw std::invalid_argument("band needs low <= high");
  if (low < grid.omegas.front() || high > grid.omegas.back()) {
    throw std::invalid_argument("band [" + std::to_string(low) + ", " + std::to_string(high) +
                                "] lies outside the grid [" + std::to_string(grid.omegas.front()) + ", " +
                                std::to_string(grid.omegas.back()) + "]");
  }
  const double total = spectral_energy(grid);
  if (total == 0.0) throw std::invalid_argument("spectrum has zero energy on the grid");
  return squared_integral(grid, low, high) / total;
}

double peak_location(const SpectrumGrid& grid) {
  const std::size_t i = argmax_abs(grid);
  if (i == 0 || i + 1 == grid.size()) return grid.omegas[i];
  return parabola_vertex(grid.omegas[i - 1], std::fabs(grid.values[i - 1]), grid.omegas[i],
                         std::fabs(grid.values[i]), grid.omegas[i + 1], std::fabs(grid.values[i + 1]));
}

double full_width_half_max(const SpectrumGrid& grid) {
  const std::size_t peak = argmax_abs(grid);
  const double half = 0.5 * std::fabs(grid.values[peak]);
  const auto mag = [&](std::size_t i) { return std::fabs(grid.values[i]); };
  const auto crossing = [&](std::size_t below, std::size_t above) {
    const double t = (half - mag(below)) / (mag(above) - mag(below));
    return grid.omegas[below] + t * (grid.omegas[above] - grid.omegas[below]);
  };

  std::size_t j = peak;
  while (j > 0 && mag(j - 1) >= half) --j;
  if (j == 0) throw std::invalid_argument("half maximum not reached below the peak within the grid");
  const double left = crossing(j - 1, j);

  std::size_t k = peak;
  while (k + 1 < grid.size() && mag(k + 1) >= half) ++k;
  if (k + 1 == grid.size()) throw std::invalid_argument("half maximum not reached above the peak within the grid");
  const double right = crossing(k + 1, k);
  return right - left;
}

int sign_changes(const SpectrumGrid& grid, double low, double high) {
  int count = 0;
  int previous = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid.omegas[i] > low && grid.omegas[i] < high)) continue;
    const double v = grid.values[i];
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (previous != 0 && s != previous) ++count;
    previous = s;
  }
  return count;
}

std::vector<double> local_extrema(const SpectrumGrid& grid) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double left = grid.values[i] - grid.values[i - 1];
    const double right = grid.values[i + 1] - grid.values[i];
    if (left * right < 0.0) {
      out.push_back(parabola_vertex(grid.omegas[i - 1], grid.values[i - 1], grid.omegas[i], grid.values[i],
                                    grid.omegas[i + 1], grid.values[i + 1]));
    }
  }
  return out;
}

}  // namespace superosc
