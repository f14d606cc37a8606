#include "superosc/numerics/special.hpp"

#include "superosc/numerics/big_float.hpp"

#include <cmath>
#include <numbers>

namespace superosc::numerics {
namespace {

constexpr double kSeriesLow = -10.0;
constexpr double kSeriesHigh = 6.0;
constexpr mpfr_prec_t kSeriesBits = 256;

struct AiryOrigin {
  BigFloat ai0;   // Ai(0) = 3^{-2/3} / Gamma(2/3)
  BigFloat dai0;  // -Ai'(0) = 3^{-1/3} / Gamma(1/3)
};

const AiryOrigin& airy_origin() {
  static const AiryOrigin origin = [] {
    BigFloat three(3.0, kSeriesBits);
    BigFloat cbrt3(kSeriesBits);
    mpfr_cbrt(cbrt3.raw(), three.raw(), MPFR_RNDN);

    BigFloat third(1.0, kSeriesBits);
    third /= 3.0;
    BigFloat two_thirds = third + third;
    BigFloat gamma13(kSeriesBits), gamma23(kSeriesBits);
    mpfr_gamma(gamma13.raw(), third.raw(), MPFR_RNDN);
    mpfr_gamma(gamma23.raw(), two_thirds.raw(), MPFR_RNDN);

    BigFloat ai0 = BigFloat(1.0, kSeriesBits) / (cbrt3 * cbrt3 * gamma23);
    BigFloat dai0 = BigFloat(1.0, kSeriesBits) / (cbrt3 * gamma13);
    return AiryOrigin{std::move(ai0), std::move(dai0)};
  }();
  return origin;
}

// Ai(x) = Ai(0) f(x) + Ai'(0) g(x) with
//   f = sum 3^k (1/3)_k x^{3k} / (3k)!,  g = sum 3^k (2/3)_k x^{3k+1} / (3k+1)!
// The two series grow like Bi before cancelling, hence the 256-bit working precision.
double airy_series(double x) {
  const auto& origin = airy_origin();
  const BigFloat bx(x, kSeriesBits);
  const BigFloat x3 = bx * bx * bx;

  BigFloat f_term(1.0, kSeriesBits);
  BigFloat g_term = bx;
  BigFloat f_sum = f_term;
  BigFloat g_sum = g_term;
  const double cutoff = std::ldexp(1.0, -180);
  for (unsigned long k = 0; k < 400; ++k) {
    f_term *= x3;
    f_term /= (3 * k + 2) * (3 * k + 3);
    g_term *= x3;
    g_term /= (3 * k + 3) * (3 * k + 4);
    f_sum += f_term;
    g_sum += g_term;
    if (std::fabs(f_term.to_double()) < cutoff && std::fabs(g_term.to_double()) < cutoff) break;
  }
  BigFloat result = origin.ai0 * f_sum - origin.dai0 * g_sum;
  return result.to_double();
}

// u_k = (2k+1)(2k+3)...(6k-1) / (216^k k!), built by the standard recurrence.
double next_u(double u_prev, int k) {
  return u_prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
}

double airy_asymptotic_positive(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double u = 1.0;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    u = next_u(u, k);
    const double next = ((k % 2) ? -1.0 : 1.0) * u / std::pow(zeta, k);
    if (std::fabs(next) >= std::fabs(term)) break;  // past optimal truncation
    term = next;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return std::exp(-zeta) / (2.0 * std::sqrt(std::numbers::pi) * std::pow(x, 0.25)) * sum;
}

double airy_asymptotic_negative(double x) {
  const double y = -x;
  const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
  double p = 1.0;
  double q = 0.0;
  double u = 1.0;
  double last = 1.0;
  double zeta_pow = 1.0;
  for (int k = 1; k < 200; ++k) {
    u = next_u(u, k);
    zeta_pow *= zeta;
    const double mag = u / zeta_pow;
    if (mag >= last) break;
    last = mag;
    // Odd k feeds Q, even k feeds P; signs alternate within each series.
    if (k % 2) {
      q += (((k - 1) / 2) % 2 ? -1.0 : 1.0) * mag;
    } else {
      p += ((k / 2) % 2 ? -1.0 : 1.0) * mag;
    }
    if (mag < 1e-18) break;
  }
  const double phase = zeta - std::numbers::pi / 4.0;
  return (std::cos(phase) * p + std::sin(phase) * q) / (std::sqrt(std::numbers::pi) * std::pow(y, 0.25));
}

}  // namespace

double airy_ai(double x) {
  if (std::isnan(x)) return x;
  if (x > kSeriesHigh) return airy_asymptotic_positive(x);
  if (x < kSeriesLow) return airy_asymptotic_negative(x);
  return airy_series(x);
}

// libm cbrt can be off by a few ulp; MPFR rounds correctly.
double signed_cbrt(double x) {
  if (x == 0.0 || !std::isfinite(x)) return std::cbrt(x);
  BigFloat v(x, 53);
  mpfr_cbrt(v.raw(), v.raw(), MPFR_RNDN);
  return v.to_double();
}

}  // namespace superosc::numerics
