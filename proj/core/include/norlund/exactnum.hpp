#pragma once

#include <gmpxx.h>

#include <array>
#include <utility>
#include <compare>
#include <string>
#include <string_view>

#include "norlund/bigreal.hpp"

namespace norlund {

/// Exact rational in canonical form (gcd 1, positive denominator, zero = 0/1).
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& value) : q_(value) {}
  explicit Rational(mpq_class q);

  /// Parses "p/q", integers and plain decimals ("0.25", "-1.5e-3") exactly.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& value() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return q_ == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  /// True when 2x is an integer but x is not.
  bool is_half_integer() const { return q_.get_den() == 2; }
  Rational abs() const;
  Rational reciprocal() const;
  Rational pow(long exponent) const;

  BigReal to_bigreal(int precision_bits) const;
  double to_double() const { return q_.get_d(); }
  std::string to_string() const { return q_.get_str(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  mpq_class q_;
};

/// coeff * pi^(half_power / 2), half_power in [-2, 2].
///
/// Half-integer factorials are rational multiples of sqrt(pi) and the
/// half-integer binomials binom(n, h + 1/2) are rational multiples of 1/pi;
/// anything outside that window is rejected with UsageError.
class SqrtPiScaled {
 public:
  static constexpr int kMaxHalfPower = 2;

  SqrtPiScaled() = default;
  SqrtPiScaled(Rational coeff, int half_power);

  const Rational& coeff() const { return coeff_; }
  int half_power() const { return half_power_; }
  bool is_zero() const { return coeff_.is_zero(); }

  SqrtPiScaled& operator*=(const SqrtPiScaled& rhs);
  SqrtPiScaled& operator/=(const SqrtPiScaled& rhs);
  SqrtPiScaled& operator*=(const Rational& rhs);
  friend SqrtPiScaled operator*(SqrtPiScaled a, const SqrtPiScaled& b) { return a *= b; }
  friend SqrtPiScaled operator/(SqrtPiScaled a, const SqrtPiScaled& b) { return a /= b; }
  friend SqrtPiScaled operator*(SqrtPiScaled a, const Rational& b) { return a *= b; }
  friend SqrtPiScaled operator*(const Rational& a, SqrtPiScaled b) { return b *= a; }
  friend bool operator==(const SqrtPiScaled& a, const SqrtPiScaled& b);

  BigReal evaluate(const PrecisionContext& ctx) const;
  std::string to_string() const;

 private:
  void normalize();

  Rational coeff_;
  int half_power_ = 0;
};

/// Rational combination c_one + c_ln2 ln 2 + c_zeta2 zeta(2) + c_zeta3 zeta(3).
/// The basis is treated as linearly independent over Q, so equality is componentwise.
struct ConstVector {
  Rational c_one;
  Rational c_ln2;
  Rational c_zeta2;
  Rational c_zeta3;

  ConstVector() = default;
  ConstVector(Rational one, Rational ln2 = 0, Rational zeta2 = 0, Rational zeta3 = 0)  // NOLINT
      : c_one(std::move(one)), c_ln2(std::move(ln2)), c_zeta2(std::move(zeta2)),
        c_zeta3(std::move(zeta3)) {}

  static ConstVector ln2() { return ConstVector(0, 1); }
  static ConstVector zeta2() { return ConstVector(0, 0, 1); }
  static ConstVector zeta3() { return ConstVector(0, 0, 0, 1); }

  bool is_rational() const { return c_ln2.is_zero() && c_zeta2.is_zero() && c_zeta3.is_zero(); }

  ConstVector& operator+=(const ConstVector& rhs);
  ConstVector& operator-=(const ConstVector& rhs);
  ConstVector& operator*=(const Rational& rhs);
  friend ConstVector operator+(ConstVector a, const ConstVector& b) { return a += b; }
  friend ConstVector operator-(ConstVector a, const ConstVector& b) { return a -= b; }
  friend ConstVector operator*(ConstVector a, const Rational& b) { return a *= b; }
  friend ConstVector operator*(const Rational& a, ConstVector b) { return b *= a; }
  friend ConstVector operator-(ConstVector a) { return a *= Rational(-1); }
  friend bool operator==(const ConstVector& a, const ConstVector& b) = default;

  std::string to_string() const;
};

BigReal constvec_eval(const ConstVector& v, const PrecisionContext& ctx);

/// x * r rounded to nearest at x's precision.
BigReal scale(const BigReal& x, const Rational& r);

/// O_n^(m) = sum_{j=1}^n 1/(2j-1)^m. Negative n follows the defining
/// recurrence O_a = O_{a-1} + 1/(2a-1) backwards, which gives O_{-n} = O_n.
Rational odd_harmonic(long n, int m = 1);
/// H_n^(m) = sum_{j=1}^n 1/j^m, n >= 0.
Rational harmonic_int(long n, int m = 1);
mpz_class catalan(long j);
/// binom(n, k) for integers with 0 <= k; zero when k > n >= 0.
mpz_class binomial(long n, long k);
mpz_class central_binomial(long n);
mpz_class factorial(long n);
/// Generalised binomial x(x-1)...(x-k+1)/k! for rational x.
Rational binomial(const Rational& x, long k);
/// Rising factorial x(x+1)...(x+k-1).
Rational pochhammer(const Rational& x, long k);

enum class HalfSign { plus, minus };

/// (r - 1/2)! for HalfSign::plus, (-r - 1/2)! for HalfSign::minus; r >= 0.
SqrtPiScaled half_factorial(long r, HalfSign sign);

/// binom(n, h + 1/2) for non-negative integers n, h via the closed
/// central-binomial forms (branch n >= h, else branch n <= h).
SqrtPiScaled binom_half(long n, long h);

enum class BinomHalfBranch { upper, lower };
/// Evaluates one branch of the closed form; upper requires n >= h, lower n <= h.
SqrtPiScaled binom_half_branch(long n, long h, BinomHalfBranch branch);
/// binom(n, h + 1/2) = n! / ((h + 1/2)! (n - h - 1/2)!) through half_factorial.
SqrtPiScaled binom_half_by_factorials(long n, long h);

/// H_{k-1/2}^(m) for m in {1, 2, 3} as an exact ConstVector.
ConstVector harmonic_half(long k, int m);

/// Integer H_n^(m) as a ConstVector (rational part only).
ConstVector harmonic_int_vec(long n, int m);

/// Terminating Norlund expansion of psi(z + h) - psi(z) for positive integer h.
Rational norlund_finite(const Rational& z, long h);

}  // namespace norlund
