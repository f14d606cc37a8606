#pragma once

#include "superosc/numerics/big_float.hpp"

#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace superosc::numerics {

/// A real stored as sign and natural log of its magnitude. Zero is
/// (0, -inf); any other sign must carry a finite log.
struct SignedLogReal {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  static SignedLogReal zero() { return {}; }
  static SignedLogReal from_double(double x);
  static SignedLogReal from_big(const BigFloat& x);

  /// Linear value; overflows to +-inf past the double range.
  [[nodiscard]] double to_double() const;
  [[nodiscard]] bool valid() const;
};

/// Mantissa budget for extended-precision evaluation.
class PrecisionPolicy {
 public:
  static constexpr int kMinimumBits = 64;
  static constexpr int kCancellationMargin = 256;

  explicit PrecisionPolicy(int mantissa_bits);

  /// Worst-case cancellation budget for the Gaussian-sum transform of order n
  /// at ratio a = omega1/omega0: ceil(n log2(1 + a)) + 256.
  static int required_bits(int n, double ratio);
  static PrecisionPolicy for_gaussian_sum(int n, double ratio) {
    return PrecisionPolicy(required_bits(n, ratio));
  }

  [[nodiscard]] int mantissa_bits() const { return bits_; }
  [[nodiscard]] PrecisionPolicy doubled() const { return PrecisionPolicy(2 * bits_); }

 private:
  int bits_;
};

class PrecisionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Collects terms at a fixed precision and returns their correctly rounded
/// sum (mpfr_sum), so the result does not depend on insertion order.
class ExtendedAccumulator {
 public:
  explicit ExtendedAccumulator(PrecisionPolicy policy) : bits_(policy.mantissa_bits()) {}

  void reserve(std::size_t n) { terms_.reserve(n); }
  void add(const SignedLogReal& term);
  void add(BigFloat term);

  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] BigFloat sum() const;

 private:
  mpfr_prec_t bits_;
  std::vector<BigFloat> terms_;
};

/// Exact-to-policy sum of signed log-domain terms. Throws std::overflow_error
/// when a term's magnitude exceeds the extended exponent range.
SignedLogReal signed_log_sum(std::span<const SignedLogReal> terms, PrecisionPolicy policy);
BigFloat signed_log_sum_extended(std::span<const SignedLogReal> terms, PrecisionPolicy policy);

}  // namespace superosc::numerics
