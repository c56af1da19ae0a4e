#pragma once

#include <string>
#include <variant>

#include "norlund/bigreal.hpp"
#include "norlund/exactnum.hpp"

namespace norlund {

/// A parameter value: exact rational or a real known to some precision.
class Scalar {
 public:
  Scalar(Rational value) : v_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Scalar(long value) : v_(Rational(value)) {}       // NOLINT(google-explicit-constructor)
  Scalar(BigReal value) : v_(std::move(value)) {}   // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<Rational>(v_); }
  /// Throws UsageError for real values.
  const Rational& exact() const;
  /// Value at the given precision (exact rationals are rounded once).
  BigReal at(int precision_bits) const;
  /// Precision of a real value; 0 for exact values.
  int precision() const;

  bool is_integer() const;
  /// 2x is an integer but x is not.
  bool is_half_integer() const;
  int sign() const;
  /// Sign of (this - r).
  int compare(const Rational& r) const;
  double to_double() const;
  std::string to_string() const;

  friend Scalar operator+(const Scalar& a, const Rational& b);
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Rational& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Rational& b) { return a.compare(b) == 0; }

 private:
  std::variant<Rational, BigReal> v_;
};

/// Constant of the same kind as `like`, for formulas written once for both kinds.
inline Rational lift(const Rational&, long value) { return Rational(value); }
inline Rational lift(const Rational&, const Rational& value) { return value; }
inline BigReal lift(const BigReal& like, long value) {
  return BigReal::from_int(value, like.precision());
}
inline BigReal lift(const BigReal& like, const Rational& value) {
  return value.to_bigreal(like.precision());
}

}  // namespace norlund
