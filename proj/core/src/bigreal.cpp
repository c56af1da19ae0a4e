#include "norlund/bigreal.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace norlund {

namespace {

mpz_class pow2(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// Round-to-nearest right shift by k >= 0 bits.
mpz_class round_shift_right(const mpz_class& m, unsigned long k) {
  if (k == 0) return m;
  mpz_class r = m;
  mpz_class half = pow2(k - 1);
  r += half;
  mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), k);
  return r;
}

}  // namespace

mpz_class round_div(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("division by zero");
  mpz_class n = num;
  mpz_class d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  mpz_class q = 2 * n + d;
  mpz_class dd = 2 * d;
  mpz_fdiv_q(q.get_mpz_t(), q.get_mpz_t(), dd.get_mpz_t());
  return q;
}

PrecisionContext::PrecisionContext(int precision, int guard)
    : precision_bits(precision), guard_bits(guard) {
  if (precision < kMinPrecisionBits) {
    throw UsageError("precision_bits must be at least " + std::to_string(kMinPrecisionBits));
  }
  if (guard < 0 || guard >= precision) {
    throw UsageError("guard_bits must satisfy 0 <= guard < precision");
  }
}

PrecisionContext PrecisionContext::widened(int extra_bits) const {
  PrecisionContext c = *this;
  c.precision_bits += extra_bits;
  return c;
}

BigReal::BigReal(mpz_class mantissa, int precision_bits)
    : mantissa_(std::move(mantissa)), precision_bits_(precision_bits) {
  if (precision_bits < kMinPrecisionBits) {
    throw UsageError("BigReal precision must be at least " + std::to_string(kMinPrecisionBits) +
                     " bits");
  }
}

BigReal BigReal::zero(int precision_bits) { return BigReal(mpz_class(0), precision_bits); }

BigReal BigReal::one(int precision_bits) { return from_int(1, precision_bits); }

BigReal BigReal::from_int(long value, int precision_bits) {
  return from_integer(mpz_class(value), precision_bits);
}

BigReal BigReal::from_integer(const mpz_class& value, int precision_bits) {
  mpz_class m = value;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(precision_bits));
  return BigReal(std::move(m), precision_bits);
}

BigReal BigReal::from_fraction(const mpz_class& num, const mpz_class& den, int precision_bits) {
  if (den == 0) throw DomainError("from_fraction: zero denominator");
  mpz_class scaled = num;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(precision_bits));
  return BigReal(round_div(scaled, den), precision_bits);
}

BigReal BigReal::from_double(double value, int precision_bits) {
  if (!std::isfinite(value)) throw DomainError("from_double: non-finite input");
  mpq_class q(value);
  return from_fraction(q.get_num(), q.get_den(), precision_bits);
}

BigReal BigReal::ulp(int precision_bits) { return BigReal(mpz_class(1), precision_bits); }

BigReal BigReal::rescale(int precision_bits) const {
  if (precision_bits == precision_bits_) return *this;
  if (precision_bits > precision_bits_) {
    mpz_class m = mantissa_;
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(),
                 static_cast<unsigned long>(precision_bits - precision_bits_));
    return BigReal(std::move(m), precision_bits);
  }
  return BigReal(
      round_shift_right(mantissa_, static_cast<unsigned long>(precision_bits_ - precision_bits)),
      precision_bits);
}

bool BigReal::is_integer() const {
  return mpz_scan1(mantissa_.get_mpz_t(), 0) >= static_cast<mp_bitcnt_t>(precision_bits_) ||
         mantissa_ == 0;
}

BigReal BigReal::abs() const { return BigReal(::abs(mantissa_), precision_bits_); }

BigReal BigReal::ldexp(long k) const {
  mpz_class m = mantissa_;
  if (k >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(k));
    return BigReal(std::move(m), precision_bits_);
  }
  return BigReal(round_shift_right(m, static_cast<unsigned long>(-k)), precision_bits_);
}

mpz_class BigReal::floor() const {
  mpz_class r;
  mpz_fdiv_q_2exp(r.get_mpz_t(), mantissa_.get_mpz_t(), static_cast<unsigned long>(precision_bits_));
  return r;
}

double BigReal::to_double() const {
  long exp = 0;
  double d = mpz_get_d_2exp(&exp, mantissa_.get_mpz_t());
  return std::ldexp(d, static_cast<int>(exp - precision_bits_));
}

int BigReal::decimal_digits(int precision_bits) {
  return static_cast<int>(std::ceil(precision_bits * 0.30103));
}

std::string BigReal::to_decimal(int digits) const {
  if (digits < 0) throw UsageError("to_decimal: negative digit count");
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class scaled = round_div(::abs(mantissa_) * ten_pow, pow2(static_cast<unsigned long>(precision_bits_)));
  std::string s = scaled.get_str(10);
  if (static_cast<int>(s.size()) <= digits) {
    s.insert(0, static_cast<std::size_t>(digits + 1 - static_cast<int>(s.size())), '0');
  }
  std::string out;
  if (mantissa_ < 0 && scaled != 0) out.push_back('-');
  out.append(s, 0, s.size() - static_cast<std::size_t>(digits));
  if (digits > 0) {
    out.push_back('.');
    out.append(s, s.size() - static_cast<std::size_t>(digits), std::string::npos);
  }
  return out;
}

std::string BigReal::to_string() const { return to_decimal(decimal_digits(precision_bits_)); }

std::string BigReal::to_scientific(int significant) const {
  if (significant < 1) throw UsageError("to_scientific: need at least one digit");
  if (mantissa_ == 0) return "0";
  const mpz_class m = ::abs(mantissa_);
  const mpz_class den = pow2(static_cast<unsigned long>(precision_bits_));
  const long bits = static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2)) - precision_bits_;
  long e = static_cast<long>(std::floor((bits - 1) * 0.30102999566398120));
  mpz_class lower;
  mpz_class upper;
  mpz_ui_pow_ui(lower.get_mpz_t(), 10, static_cast<unsigned long>(significant - 1));
  upper = lower * 10;
  mpz_class digits;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const long shift = significant - 1 - e;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    digits = shift >= 0 ? round_div(m * p10, den) : round_div(m, den * p10);
    if (digits >= upper) {
      ++e;
    } else if (digits < lower) {
      --e;
    } else {
      break;
    }
  }
  std::string s = digits.get_str(10);
  std::string out = mantissa_ < 0 ? "-" : "";
  out += s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  out += e < 0 ? "e-" : "e+";
  out += std::to_string(e < 0 ? -e : e);
  return out;
}

void BigReal::require_same_precision(const BigReal& other, const char* op) const {
  if (precision_bits_ != other.precision_bits_) {
    throw UsageError(std::string("mixed precision operands in ") + op + " (" +
                     std::to_string(precision_bits_) + " vs " +
                     std::to_string(other.precision_bits_) + " bits)");
  }
}

BigReal BigReal::operator-() const { return BigReal(-mantissa_, precision_bits_); }

BigReal& BigReal::operator+=(const BigReal& rhs) {
  require_same_precision(rhs, "add");
  mantissa_ += rhs.mantissa_;
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs) {
  require_same_precision(rhs, "sub");
  mantissa_ -= rhs.mantissa_;
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs) {
  require_same_precision(rhs, "mul");
  mpz_class prod = mantissa_ * rhs.mantissa_;
  mantissa_ = round_shift_right(prod, static_cast<unsigned long>(precision_bits_));
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs) {
  require_same_precision(rhs, "div");
  if (rhs.mantissa_ == 0) throw DomainError("division by zero");
  mpz_class num = mantissa_;
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(precision_bits_));
  mantissa_ = round_div(num, rhs.mantissa_);
  return *this;
}

BigReal& BigReal::operator*=(long rhs) {
  mantissa_ *= rhs;
  return *this;
}

BigReal& BigReal::operator/=(long rhs) {
  if (rhs == 0) throw DomainError("division by zero");
  mantissa_ = round_div(mantissa_, mpz_class(rhs));
  return *this;
}

std::strong_ordering operator<=>(const BigReal& a, const BigReal& b) {
  a.require_same_precision(b, "compare");
  int c = cmp(a.mantissa_, b.mantissa_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool operator==(const BigReal& a, const BigReal& b) {
  a.require_same_precision(b, "compare");
  return a.mantissa_ == b.mantissa_;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative number");
  mpz_class scaled = x.mantissa();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(x.precision()));
  mpz_class root;
  mpz_class rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
  // (r + 1/2)^2 = r^2 + r + 1/4: round up when the remainder exceeds r.
  if (rem > root) root += 1;
  return BigReal(std::move(root), x.precision());
}

namespace {

// Taylor series for sin(t) or cos(t) with t = theta / 2^w, |t| <= pi/4.
mpz_class taylor_sin_cos(const mpz_class& theta, unsigned long w, bool cosine) {
  mpz_class theta2 = theta * theta;
  mpz_fdiv_q_2exp(theta2.get_mpz_t(), theta2.get_mpz_t(), w);
  mpz_class term = cosine ? pow2(w) : theta;
  mpz_class sum = term;
  for (unsigned long k = 1; term != 0; ++k) {
    term *= theta2;
    mpz_fdiv_q_2exp(term.get_mpz_t(), term.get_mpz_t(), w);
    unsigned long div = cosine ? (2 * k - 1) * (2 * k) : (2 * k) * (2 * k + 1);
    term /= static_cast<long>(div);
    term = -term;
    sum += term;
  }
  return sum;
}

}  // namespace

BigReal sin_pi(const BigReal& x) {
  const int p = x.precision();
  const auto up = static_cast<unsigned long>(p);
  mpz_class period = pow2(up + 1);
  mpz_class y;
  mpz_fdiv_r(y.get_mpz_t(), x.mantissa().get_mpz_t(), period.get_mpz_t());
  if (y == 0) return BigReal::zero(p);
  const mpz_class one = pow2(up);
  const mpz_class half = pow2(up - 1);
  int sign = 1;
  if (y >= one) {
    y -= one;
    sign = -sign;
  }
  if (y == 0) return BigReal::zero(p);
  if (y > half) y = one - y;
  if (y == half) return BigReal::from_int(sign, p);

  const int guard = 32;
  PrecisionContext wctx(p + guard, guard);
  const auto w = static_cast<unsigned long>(wctx.precision_bits);
  BigReal pi_w = const_pi(wctx);
  const mpz_class quarter = pow2(up - 2);
  bool use_cos = y > quarter;
  mpz_class reduced = use_cos ? mpz_class(half - y) : y;
  // theta = pi * reduced / 2^p at w bits
  mpz_class theta = pi_w.mantissa() * reduced;
  theta = round_shift_right(theta, up);
  mpz_class value = taylor_sin_cos(theta, w, use_cos);
  value = round_shift_right(value, static_cast<unsigned long>(guard));
  if (sign < 0) value = -value;
  return BigReal(std::move(value), p);
}

BigReal cos_pi(const BigReal& x) {
  mpz_class half = pow2(static_cast<unsigned long>(x.precision() - 1));
  return sin_pi(x + BigReal(half, x.precision()));
}

}  // namespace norlund
