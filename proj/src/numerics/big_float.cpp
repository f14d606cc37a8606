#include "superosc/numerics/big_float.hpp"

#include <gmp.h>

#include <cmath>
#include <limits>
#include <vector>

namespace superosc::numerics {

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs and leave `other` as a valid 2-bit zero.
  *value_ = *other.value_;
  mpfr_init2(other.value_, MPFR_PREC_MIN);
  mpfr_set_zero(other.value_, 1);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::binomial(unsigned long n, unsigned long k, mpfr_prec_t bits) {
  mpz_t exact;
  mpz_init(exact);
  mpz_bin_uiui(exact, n, k);
  BigFloat out(bits);
  mpfr_set_z(out.value_, exact, MPFR_RNDN);
  mpz_clear(exact);
  return out;
}

BigFloat BigFloat::pi(mpfr_prec_t bits) {
  BigFloat out(bits);
  mpfr_const_pi(out.value_, MPFR_RNDN);
  return out;
}

double BigFloat::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  BigFloat tmp(precision());
  mpfr_abs(tmp.value_, value_, MPFR_RNDN);
  mpfr_log(tmp.value_, tmp.value_, MPFR_RNDN);
  return tmp.to_double();
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits, value_);
  return buf.data();
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator*=(double rhs) {
  mpfr_mul_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(double rhs) {
  mpfr_div_d(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator/=(unsigned long rhs) {
  mpfr_div_ui(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

BigFloat exp(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_exp(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigFloat log(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_sqrt(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigFloat abs(const BigFloat& x) {
  BigFloat out(x.precision());
  mpfr_abs(out.raw(), x.raw(), MPFR_RNDN);
  return out;
}

BigFloat pow(const BigFloat& base, unsigned long exponent) {
  BigFloat out(base.precision());
  mpfr_pow_ui(out.raw(), base.raw(), exponent, MPFR_RNDN);
  return out;
}

}  // namespace superosc::numerics
