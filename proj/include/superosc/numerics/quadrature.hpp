#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace superosc::numerics {

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_panels = std::size_t{1} << 15;
  std::size_t initial_panels = 1;
  /// Length scale L of the compactifying map t = L s / (1 - s^2), used when an
  /// endpoint is infinite.
  double map_scale = 1.0;
};

template <class T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Thrown when the subdivision budget runs out. Carries the best estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::complex<double> best, double error)
      : std::runtime_error(what), best_estimate_(best), error_estimate_(error) {}

  [[nodiscard]] std::complex<double> best_estimate() const { return best_estimate_; }
  [[nodiscard]] double error_estimate() const { return error_estimate_; }

 private:
  std::complex<double> best_estimate_;
  double error_estimate_;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(std::complex<double> z) { return std::abs(z); }

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class T, class F>
Panel<T> gauss_kronrod(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const T sum = f(center - dx) + f(center + dx);
    kronrod += sum * kKronrodWeights[j];
    if (j % 2 == 1) gauss += sum * kGaussWeights[j / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

template <class T, class F>
QuadratureResult<T> integrate_finite(const F& f, double a, double b, const QuadratureOptions& opt) {
  if (!(opt.rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
  if (a == b) return {};
  const std::size_t initial = std::max<std::size_t>(1, opt.initial_panels);
  if (initial > opt.max_panels) throw std::invalid_argument("initial_panels exceeds the subdivision budget");

  std::priority_queue<Panel<T>> queue;
  T total{};
  double total_error = 0.0;
  const double step = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + step * static_cast<double>(i);
    const double hi = (i + 1 == initial) ? b : a + step * static_cast<double>(i + 1);
    auto panel = gauss_kronrod<T>(f, lo, hi);
    total += panel.value;
    total_error += panel.error;
    queue.push(std::move(panel));
  }

  std::size_t panels = initial;
  auto tolerance = [&] { return std::max(opt.abs_tol, opt.rel_tol * magnitude(total)); };
  while (total_error > tolerance()) {
    if (panels >= opt.max_panels) {
      throw QuadratureError("adaptive quadrature did not converge within " + std::to_string(opt.max_panels) +
                                " panels",
                            std::complex<double>(total), total_error);
    }
    Panel<T> worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw QuadratureError("adaptive quadrature hit the floating-point resolution limit",
                            std::complex<double>(total), total_error);
    }
    auto left = gauss_kronrod<T>(f, worst.a, mid);
    auto right = gauss_kronrod<T>(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++panels;
  }

  // Re-sum from scratch so the running updates leave no drift.
  QuadratureResult<T> result;
  result.panels = panels;
  while (!queue.empty()) {
    result.value += queue.top().value;
    result.error_estimate += queue.top().error;
    queue.pop();
  }
  return result;
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Infinite endpoints are compactified with t = c + L s / (1 - s^2).
/// Stops when the summed error estimate is below max(abs_tol, rel_tol |I|).
template <class T = double, class F>
QuadratureResult<T> adaptive_integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  const bool lower_inf = std::isinf(a);
  const bool upper_inf = std::isinf(b);
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("integration limits must not be NaN");
  if (a > b) {
    auto r = adaptive_integrate<T>(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  if (!lower_inf && !upper_inf) return detail::integrate_finite<T>(f, a, b, opt);

  const double scale = opt.map_scale;
  if (!(scale > 0.0)) throw std::invalid_argument("map_scale must be positive");
  const double origin = lower_inf ? (upper_inf ? 0.0 : b) : a;
  auto mapped = [&](double s) -> T {
    const double denom = 1.0 - s * s;
    const double t = origin + scale * s / denom;
    const double jac = scale * (1.0 + s * s) / (denom * denom);
    const T v = f(t);
    if (detail::magnitude(v) == 0.0) return T{};
    return v * jac;
  };
  const double s_lo = lower_inf ? -1.0 : 0.0;
  const double s_hi = upper_inf ? 1.0 : 0.0;
  return detail::integrate_finite<T>(mapped, s_lo, s_hi, opt);
}

/// Convenience form for real integrands: returns (value, error estimate).
inline std::pair<double, double> adaptive_integrate(const std::function<double(double)>& integrand, double a,
                                                    double b, double rel_tol) {
  QuadratureOptions opt;
  opt.rel_tol = rel_tol;
  auto r = adaptive_integrate<double>(integrand, a, b, opt);
  return {r.value, r.error_estimate};
}

}  // namespace superosc::numerics
