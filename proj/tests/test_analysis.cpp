#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superosc/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace superosc;

namespace {

const SignalParams kBase = SignalParams::dimensionless(16, 2.0, 1.0);

// Composite Simpson on a fixed grid of 10^6 intervals.
template <class F>
double simpson(const F& f, double a, double b, int intervals = 1000000) {
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("range_g and range_f spot values") {
  CHECK(range_g(kBase, 0.1) == doctest::Approx(0.73030).epsilon(1e-5));
  CHECK(range_f(kBase, 0.1) == doctest::Approx(2.937645015914874).epsilon(1e-12));
  CHECK(range_g(kBase, 1e-12) < 1e-5);
  CHECK(range_f(kBase, 1e-12) < 1e-2);
  const SignalParams scaled(16, 4.0, 8.0, 1.0);
  CHECK(range_f(scaled, 0.1) == doctest::Approx(2.937645015914874 / 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(range_g(kBase, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(range_f(kBase, 1.0), std::invalid_argument);
}

TEST_CASE("range scaling in n is exact") {
  for (int n : {1, 16, 64}) {
    const auto p = kBase.with_n(n);
    const auto q = kBase.with_n(16 * n);
    for (double delta : {0.01, 0.1, 0.5}) {
      CHECK(std::fabs(range_g(q, delta) / range_g(p, delta) - 4.0) < 1e-12);
      CHECK(std::fabs(range_f(q, delta) / range_f(p, delta) - 8.0) < 1e-12);
    }
  }
}

TEST_CASE("ranges are consistent with the modulus") {
  const auto g = SignalParams::dimensionless(128, 2.0, 0.0);
  for (double delta : {0.01, 0.05, 0.1}) {
    const double m = modulus_sq_f(g, range_g(g, delta));
    CHECK(std::fabs(m - (1.0 + delta)) < 2.0 * delta * delta);
  }
  const auto f = SignalParams::dimensionless(128, 2.0, 1.0);
  for (double delta : {0.01, 0.05, 0.1}) {
    const double deficit = modulus_sq_deficit_f(f, range_f(f, delta));
    CHECK(deficit == doctest::Approx(delta).epsilon(0.1));
  }
}

TEST_CASE("local_frequency_at_range") {
  CHECK(local_frequency_at_range(kBase, 0.1) == doctest::Approx(1.79775).epsilon(1e-5));
  CHECK(local_frequency_at_range(kBase, 1e-14) == doctest::Approx(2.0).epsilon(1e-6));
  for (int n : {128, 1024}) {
    const auto p = kBase.with_n(n);
    for (double delta : {0.01, 0.05, 0.1}) {
      const double direct = local_frequency(p, range_f(p, delta));
      CHECK(local_frequency_at_range(p, delta) == doctest::Approx(direct).epsilon(1e-3));
    }
  }
}

TEST_CASE("total energy for n = 1 against closed form and dense grid") {
  const auto p = SignalParams::dimensionless(1, 2.0, 1.0);
  const double closed = std::sqrt(std::numbers::pi / 3.0) * (1.0 + 1.5 * (1.0 - std::exp(-1.0 / 3.0)));
  const double grid = simpson([](double t) { return (1.0 + 3.0 * std::sin(t) * std::sin(t)) * std::exp(-3.0 * t * t); },
                              -12.0, 12.0);
  CHECK(grid == doctest::Approx(closed).epsilon(1e-12));
  CHECK(total_energy(p) == doctest::Approx(grid).epsilon(1e-8));
}

TEST_CASE("energy is even in t") {
  for (int n : {1, 16, 128}) {
    const auto p = kBase.with_n(n);
    const double full = total_energy(p);
    CHECK(full > 0.0);
    CHECK(std::isfinite(full));
    CHECK(tail_energy(p, 0.0) == doctest::Approx(full).epsilon(1e-10));
  }
}

TEST_CASE("alpha = 0 has no finite energy") {
  const auto g = kBase.with_alpha(0.0);
  CHECK_THROWS_AS(total_energy(g), std::domain_error);
  CHECK_THROWS_AS(yield_delta(g, 0.1), std::domain_error);
  CHECK_THROWS_AS(tail_energy(g, 1.0), std::domain_error);
}

TEST_CASE("yield report fields and bounds") {
  const auto r = yield_delta(kBase, 0.1);
  CHECK(r.delta == 0.1);
  CHECK(r.t_range == range_f(kBase, 0.1));
  CHECK(r.useful_energy > 0.0);
  CHECK(r.useful_energy <= r.total_energy);
  CHECK(r.yield_value == r.useful_energy / r.total_energy);
  CHECK(r.yield_value <= 1.0);
  CHECK_THROWS_AS(yield_delta(kBase, 1.5), std::invalid_argument);
}

TEST_CASE("useful energy two ways") {
  for (int n : {16, 128}) {
    const auto p = kBase.with_n(n);
    const auto r = yield_delta(p, 0.1);
    const double other = r.total_energy - tail_energy(p, r.t_range);
    CHECK(other == doctest::Approx(r.useful_energy).epsilon(1e-6));
  }
}

TEST_CASE("yield is monotone in delta") {
  double prev = 0.0;
  for (double delta : {0.01, 0.05, 0.1, 0.3, 0.6, 0.9, 0.999}) {
    const double y = yield_delta(kBase, delta).yield_value;
    CHECK(y >= prev);
    prev = y;
  }
}

TEST_CASE("yield grows with n at delta = 0.1") {
  const double y16 = yield_delta(kBase.with_n(16), 0.1).yield_value;
  const double y128 = yield_delta(kBase.with_n(128), 0.1).yield_value;
  const double y1024 = yield_delta(kBase.with_n(1024), 0.1).yield_value;
  CHECK(y16 < y128);
  CHECK(y128 < y1024);
  CHECK(y1024 >= 0.5);
  CHECK(y16 == doctest::Approx(0.5748).epsilon(1e-3));
  CHECK(y1024 == doctest::Approx(0.6039).epsilon(1e-3));
}
