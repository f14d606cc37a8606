#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>

namespace superosc::numerics {

/// Owning handle to an MPFR number. Precision is fixed per value at
/// construction; binary operations round to the precision of the left operand.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(double value, mpfr_prec_t bits);
  BigFloat(long value, mpfr_prec_t bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat binomial(unsigned long n, unsigned long k, mpfr_prec_t bits);
  static BigFloat pi(mpfr_prec_t bits);

  [[nodiscard]] mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  [[nodiscard]] double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  [[nodiscard]] int sign() const { return mpfr_sgn(value_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  /// Natural log of |x| as a double; -infinity for zero.
  [[nodiscard]] double log_abs() const;
  [[nodiscard]] std::string to_string(int digits) const;

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);
  BigFloat& operator*=(double rhs);
  BigFloat& operator/=(double rhs);
  BigFloat& operator/=(unsigned long rhs);

  [[nodiscard]] BigFloat operator-() const;

  friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
  friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
  friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
  friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

  [[nodiscard]] mpfr_ptr raw() { return value_; }
  [[nodiscard]] mpfr_srcptr raw() const { return value_; }

 private:
  mpfr_t value_;
};

BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat pow(const BigFloat& base, unsigned long exponent);

}  // namespace superosc::numerics
