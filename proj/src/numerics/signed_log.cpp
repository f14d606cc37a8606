#include "superosc/numerics/signed_log.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace superosc::numerics {

SignedLogReal SignedLogReal::from_double(double x) {
  if (x == 0.0) return zero();
  return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
}

SignedLogReal SignedLogReal::from_big(const BigFloat& x) {
  if (x.is_zero()) return zero();
  return {x.sign() > 0 ? 1 : -1, x.log_abs()};
}

double SignedLogReal::to_double() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

bool SignedLogReal::valid() const {
  if (sign == 0) return std::isinf(log_abs) && log_abs < 0.0;
  return (sign == 1 || sign == -1) && std::isfinite(log_abs);
}

PrecisionPolicy::PrecisionPolicy(int mantissa_bits) : bits_(mantissa_bits) {
  if (mantissa_bits < kMinimumBits) {
    throw PrecisionError("precision policy needs at least " + std::to_string(kMinimumBits) +
                         " mantissa bits, got " + std::to_string(mantissa_bits));
  }
}

int PrecisionPolicy::required_bits(int n, double ratio) {
  const double budget = std::ceil(n * std::log2(1.0 + ratio));
  return std::max(kMinimumBits, static_cast<int>(budget) + kCancellationMargin);
}

void ExtendedAccumulator::add(const SignedLogReal& term) {
  if (!term.valid()) throw std::invalid_argument("signed-log term is not finite");
  if (term.sign == 0) return;
  // Largest representable magnitude in MPFR's current exponent range.
  const double max_log = static_cast<double>(mpfr_get_emax() - 1) * std::numbers::ln2;
  if (term.log_abs > max_log) {
    throw std::overflow_error("signed-log term exceeds the extended exponent range");
  }
  BigFloat value(term.log_abs, bits_);
  mpfr_exp(value.raw(), value.raw(), MPFR_RNDN);
  if (term.sign < 0) mpfr_neg(value.raw(), value.raw(), MPFR_RNDN);
  terms_.push_back(std::move(value));
}

void ExtendedAccumulator::add(BigFloat term) { terms_.push_back(std::move(term)); }

BigFloat ExtendedAccumulator::sum() const {
  BigFloat out(bits_);
  if (terms_.empty()) return out;
  std::vector<mpfr_ptr> ptrs;
  ptrs.reserve(terms_.size());
  for (const auto& t : terms_) ptrs.push_back(const_cast<mpfr_ptr>(t.raw()));
  mpfr_sum(out.raw(), ptrs.data(), ptrs.size(), MPFR_RNDN);
  return out;
}

BigFloat signed_log_sum_extended(std::span<const SignedLogReal> terms, PrecisionPolicy policy) {
  ExtendedAccumulator acc(policy);
  acc.reserve(terms.size());
  for (const auto& t : terms) acc.add(t);
  return acc.sum();
}

SignedLogReal signed_log_sum(std::span<const SignedLogReal> terms, PrecisionPolicy policy) {
  return SignedLogReal::from_big(signed_log_sum_extended(terms, policy));
}

}  // namespace superosc::numerics
