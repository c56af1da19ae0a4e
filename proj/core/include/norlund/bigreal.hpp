#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "norlund/errors.hpp"

namespace norlund {

inline constexpr int kMinPrecisionBits = 32;

/// Requested precision for a computation. Internal steps run at
/// precision_bits + guard_bits and are rounded back on return.
struct PrecisionContext {
  int precision_bits = 256;
  int guard_bits = 32;

  PrecisionContext() = default;
  explicit PrecisionContext(int precision, int guard = 32);

  int working_bits() const { return precision_bits + guard_bits; }
  PrecisionContext widened(int extra_bits) const;
};

/// Fixed-point real number: value = mantissa / 2^precision_bits.
///
/// Binary operations require both operands at the same precision and throw
/// UsageError otherwise; use rescale() to convert explicitly. Results are
/// rounded to nearest, so add/sub are exact and mul/div are within half an
/// ulp. Zero has the single representation mantissa == 0.
class BigReal {
 public:
  BigReal(mpz_class mantissa, int precision_bits);

  static BigReal zero(int precision_bits);
  static BigReal one(int precision_bits);
  static BigReal from_int(long value, int precision_bits);
  static BigReal from_integer(const mpz_class& value, int precision_bits);
  /// Nearest representable value to num/den; den must be nonzero.
  static BigReal from_fraction(const mpz_class& num, const mpz_class& den, int precision_bits);
  static BigReal from_double(double value, int precision_bits);
  /// One unit in the last place at the given precision.
  static BigReal ulp(int precision_bits);

  int precision() const { return precision_bits_; }
  const mpz_class& mantissa() const { return mantissa_; }

  /// Same value at another precision (exact when widening, rounded when narrowing).
  BigReal rescale(int precision_bits) const;

  int sign() const { return sgn(mantissa_); }
  bool is_zero() const { return mantissa_ == 0; }
  bool is_integer() const;
  BigReal abs() const;
  /// Multiply by 2^k (k may be negative; rounded when shifting right).
  BigReal ldexp(long k) const;
  /// Largest integer not exceeding the value.
  mpz_class floor() const;

  double to_double() const;
  /// Fixed notation with `digits` digits after the decimal point, correctly rounded.
  std::string to_decimal(int digits) const;
  /// Fixed notation with ceil(P * log10(2)) fractional digits.
  std::string to_string() const;
  /// d.ddd...e[+-]x with `significant` digits; "0" for zero.
  std::string to_scientific(int significant) const;
  /// Number of decimal digits used by to_string() for a precision.
  static int decimal_digits(int precision_bits);

  BigReal operator-() const;
  BigReal& operator+=(const BigReal& rhs);
  BigReal& operator-=(const BigReal& rhs);
  BigReal& operator*=(const BigReal& rhs);
  BigReal& operator/=(const BigReal& rhs);
  BigReal& operator*=(long rhs);
  BigReal& operator/=(long rhs);

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }

  /// Precision-checked comparison.
  friend std::strong_ordering operator<=>(const BigReal& a, const BigReal& b);
  friend bool operator==(const BigReal& a, const BigReal& b);

 private:
  void require_same_precision(const BigReal& other, const char* op) const;

  mpz_class mantissa_;
  int precision_bits_;
};

BigReal sqrt(const BigReal& x);

/// sin(pi x); exact zero at integers and exact +-1 at half-integers.
BigReal sin_pi(const BigReal& x);
/// cos(pi x); exact zero at half-integers and exact +-1 at integers.
BigReal cos_pi(const BigReal& x);

/// Fundamental constants at ctx.precision_bits, cached per precision.
BigReal const_pi(const PrecisionContext& ctx);
BigReal const_ln2(const PrecisionContext& ctx);
BigReal const_zeta3(const PrecisionContext& ctx);

/// Round num/den to nearest integer (den > 0 after sign normalisation).
mpz_class round_div(const mpz_class& num, const mpz_class& den);

}  // namespace norlund
