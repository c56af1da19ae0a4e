#include "norlund/exactnum.hpp"

#include <cctype>
#include <string>
#include <utility>

namespace norlund {

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw UsageError("cannot parse '" + std::string(text) + "' as an exact rational");
  };
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) return fail();

  auto parse_int = [&](const std::string& part) -> mpz_class {
    std::string digits = part;
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    std::size_t i = (!digits.empty() && digits[0] == '-') ? 1 : 0;
    if (i == digits.size()) fail();
    for (std::size_t k = i; k < digits.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(digits[k]))) fail();
    }
    return mpz_class(digits, 10);
  };

  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num = parse_int(s.substr(0, slash));
    mpz_class den = parse_int(s.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }

  // decimal: [sign] digits [. digits] [e [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string mantissa;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (mantissa.empty()) return fail();
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return fail();
    std::string exp_part = s.substr(i + 1);
    if (exp_part.empty() || exp_part.size() > 6) return fail();
    exponent = parse_int(exp_part).get_si();
  }
  mpz_class m(mantissa, 10);
  if (negative) m = -m;
  long shift = exponent - frac_digits;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  if (shift >= 0) return Rational(m * p10, mpz_class(1));
  return Rational(m, p10);
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(q_))); }

Rational Rational::reciprocal() const {
  if (is_zero()) throw DomainError("reciprocal of zero");
  return Rational(q_.get_den(), q_.get_num());
}

Rational Rational::pow(long exponent) const {
  Rational base = exponent < 0 ? reciprocal() : *this;
  unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.q_.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.q_.get_den_mpz_t(), e);
  return Rational(num, den);
}

BigReal Rational::to_bigreal(int precision_bits) const {
  return BigReal::from_fraction(q_.get_num(), q_.get_den(), precision_bits);
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DomainError("rational division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

SqrtPiScaled::SqrtPiScaled(Rational coeff, int half_power)
    : coeff_(std::move(coeff)), half_power_(half_power) {
  normalize();
}

void SqrtPiScaled::normalize() {
  if (coeff_.is_zero()) {
    half_power_ = 0;
    return;
  }
  if (half_power_ > kMaxHalfPower || half_power_ < -kMaxHalfPower) {
    throw UsageError("pi power outside the exact layer's range: pi^(" +
                     std::to_string(half_power_) + "/2)");
  }
}

SqrtPiScaled& SqrtPiScaled::operator*=(const SqrtPiScaled& rhs) {
  coeff_ *= rhs.coeff_;
  half_power_ += rhs.half_power_;
  normalize();
  return *this;
}

SqrtPiScaled& SqrtPiScaled::operator/=(const SqrtPiScaled& rhs) {
  coeff_ /= rhs.coeff_;
  half_power_ -= rhs.half_power_;
  normalize();
  return *this;
}

SqrtPiScaled& SqrtPiScaled::operator*=(const Rational& rhs) {
  coeff_ *= rhs;
  normalize();
  return *this;
}

bool operator==(const SqrtPiScaled& a, const SqrtPiScaled& b) {
  return a.coeff_ == b.coeff_ && a.half_power_ == b.half_power_;
}

BigReal SqrtPiScaled::evaluate(const PrecisionContext& ctx) const {
  const int w = ctx.working_bits();
  PrecisionContext wctx(w, ctx.guard_bits);
  BigReal value = coeff_.to_bigreal(w);
  if (half_power_ != 0) {
    BigReal pi = const_pi(wctx);
    BigReal factor = (half_power_ % 2 == 0) ? pi : sqrt(pi);
    if (half_power_ > 0) {
      value *= factor;
    } else {
      value /= factor;
    }
  }
  return value.rescale(ctx.precision_bits);
}

std::string SqrtPiScaled::to_string() const {
  if (half_power_ == 0) return coeff_.to_string();
  static const char* names[] = {"1/pi", "1/sqrt(pi)", "", "sqrt(pi)", "pi"};
  return coeff_.to_string() + "*" + names[half_power_ + 2];
}

// ---------------------------------------------------------------------------

ConstVector& ConstVector::operator+=(const ConstVector& rhs) {
  c_one += rhs.c_one;
  c_ln2 += rhs.c_ln2;
  c_zeta2 += rhs.c_zeta2;
  c_zeta3 += rhs.c_zeta3;
  return *this;
}

ConstVector& ConstVector::operator-=(const ConstVector& rhs) {
  c_one -= rhs.c_one;
  c_ln2 -= rhs.c_ln2;
  c_zeta2 -= rhs.c_zeta2;
  c_zeta3 -= rhs.c_zeta3;
  return *this;
}

ConstVector& ConstVector::operator*=(const Rational& rhs) {
  c_one *= rhs;
  c_ln2 *= rhs;
  c_zeta2 *= rhs;
  c_zeta3 *= rhs;
  return *this;
}

std::string ConstVector::to_string() const {
  std::string out;
  auto append = [&](const Rational& c, const char* name) {
    if (c.is_zero()) return;
    if (!out.empty()) out += c.sign() < 0 ? " - " : " + ";
    else if (c.sign() < 0) out += "-";
    std::string mag = c.abs().to_string();
    if (name == nullptr) {
      out += mag;
    } else if (c.abs() == Rational(1)) {
      out += name;
    } else {
      out += "(" + mag + ")*" + name;
    }
  };
  append(c_one, nullptr);
  append(c_ln2, "ln2");
  append(c_zeta2, "zeta(2)");
  append(c_zeta3, "zeta(3)");
  return out.empty() ? "0" : out;
}

BigReal scale(const BigReal& x, const Rational& r) {
  mpz_class num = x.mantissa() * r.value().get_num();
  return BigReal(round_div(num, r.value().get_den()), x.precision());
}

BigReal constvec_eval(const ConstVector& v, const PrecisionContext& ctx) {
  const int w = ctx.working_bits();
  PrecisionContext wctx(w, ctx.guard_bits);
  BigReal sum = v.c_one.to_bigreal(w);
  if (!v.c_ln2.is_zero()) sum += v.c_ln2.to_bigreal(w) * const_ln2(wctx);
  if (!v.c_zeta2.is_zero()) {
    BigReal pi = const_pi(wctx);
    sum += v.c_zeta2.to_bigreal(w) * (pi * pi / 6);
  }
  if (!v.c_zeta3.is_zero()) sum += v.c_zeta3.to_bigreal(w) * const_zeta3(wctx);
  return sum.rescale(ctx.precision_bits);
}

// ---------------------------------------------------------------------------

namespace {

void require_order(int m) {
  if (m < 1) throw UsageError("harmonic order must be a positive integer");
}

Rational inverse_power(long base, int m) { return Rational(1, base).pow(m); }

}  // namespace

Rational odd_harmonic(long n, int m) {
  require_order(m);
  long count = n < 0 ? -n : n;
  Rational sum;
  for (long j = 1; j <= count; ++j) sum += inverse_power(2 * j - 1, m);
  return sum;
}

Rational harmonic_int(long n, int m) {
  require_order(m);
  if (n < 0) throw DomainError("harmonic_int: negative index is a pole");
  Rational sum;
  for (long j = 1; j <= n; ++j) sum += inverse_power(j, m);
  return sum;
}

mpz_class binomial(long n, long k) {
  if (k < 0) return 0;
  if (n >= 0 && k > n) return 0;
  mpz_class r;
  if (n >= 0) {
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  } else {
    mpz_class nn(n);
    mpz_bin_ui(r.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(k));
  }
  return r;
}

mpz_class central_binomial(long n) {
  if (n < 0) throw DomainError("central_binomial: negative index");
  return binomial(2 * n, n);
}

mpz_class catalan(long j) {
  if (j < 0) throw DomainError("catalan: negative index");
  return central_binomial(j) / (j + 1);
}

mpz_class factorial(long n) {
  if (n < 0) throw DomainError("factorial of a negative integer");
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Rational binomial(const Rational& x, long k) {
  if (k < 0) return Rational(0);
  Rational r(1);
  for (long i = 0; i < k; ++i) r *= (x - Rational(i)) / Rational(i + 1);
  return r;
}

Rational pochhammer(const Rational& x, long k) {
  if (k < 0) throw UsageError("pochhammer: negative length");
  Rational r(1);
  for (long i = 0; i < k; ++i) r *= x + Rational(i);
  return r;
}

SqrtPiScaled half_factorial(long r, HalfSign sign) {
  if (r < 0) throw UsageError("half_factorial requires r >= 0");
  const Rational four_pow = Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(2 * r), 1);
  const Rational central(central_binomial(r), 1);
  const Rational fact(factorial(r), 1);
  if (sign == HalfSign::plus) {
    // (r - 1/2)! = sqrt(pi) binom(2r, r) r! / 2^(2r)
    return SqrtPiScaled(central * fact / four_pow, 1);
  }
  // (-r - 1/2)! = sqrt(pi) (-1)^r 2^(2r) / (r! binom(2r, r))
  Rational c = four_pow / (fact * central);
  if (r % 2 == 1) c = -c;
  return SqrtPiScaled(c, 1);
}

SqrtPiScaled binom_half_branch(long n, long h, BinomHalfBranch branch) {
  if (n < 0 || h < 0) throw UsageError("binom_half requires non-negative n and h");
  const Rational prefactor =
      Rational(mpz_class(1) << static_cast<mp_bitcnt_t>(2 * n + 2), 1) / Rational(h + 1);
  const Rational top_central(central_binomial(h + 1), 1);
  Rational c;
  if (branch == BinomHalfBranch::upper) {
    if (n < h) throw UsageError("upper branch of binom(n, h+1/2) requires n >= h");
    c = Rational(binomial(n, h), 1) /
        (Rational(central_binomial(n - h), 1) * top_central);
  } else {
    if (n > h) throw UsageError("lower branch of binom(n, h+1/2) requires n <= h");
    c = Rational(central_binomial(h - n), 1) / (Rational(binomial(h, n), 1) * top_central);
    if ((h - n) % 2 == 1) c = -c;
  }
  return SqrtPiScaled(prefactor * c, -2);
}

SqrtPiScaled binom_half(long n, long h) {
  return binom_half_branch(n, h, n >= h ? BinomHalfBranch::upper : BinomHalfBranch::lower);
}

SqrtPiScaled binom_half_by_factorials(long n, long h) {
  if (n < 0 || h < 0) throw UsageError("binom_half requires non-negative n and h");
  SqrtPiScaled top(Rational(factorial(n), 1), 0);
  SqrtPiScaled upper = half_factorial(h + 1, HalfSign::plus);  // (h + 1/2)!
  SqrtPiScaled lower = n >= h ? half_factorial(n - h, HalfSign::plus)
                              : half_factorial(h - n, HalfSign::minus);  // (n - h - 1/2)!
  return top / (upper * lower);
}

ConstVector harmonic_half(long k, int m) {
  if (k < 0) throw UsageError("harmonic_half requires k >= 0");
  switch (m) {
    case 1:
      return ConstVector(Rational(2) * odd_harmonic(k, 1), Rational(-2));
    case 2:
      return ConstVector(Rational(4) * odd_harmonic(k, 2), 0, Rational(-2));
    case 3:
      return ConstVector(Rational(8) * odd_harmonic(k, 3), 0, 0, Rational(-6));
    default:
      throw UsageError("harmonic_half supports orders 1..3 only");
  }
}

ConstVector harmonic_int_vec(long n, int m) { return ConstVector(harmonic_int(n, m)); }

Rational norlund_finite(const Rational& z, long h) {
  if (z.sign() <= 0) throw DomainError("norlund_finite requires z > 0");
  if (h < 1) throw UsageError("norlund_finite requires a positive integer h");
  Rational sum;
  Rational numer(1);
  Rational denom(1);
  for (long n = 0; n < h; ++n) {
    numer *= Rational(h - n);
    denom *= z + Rational(n);
    Rational term = numer / (Rational(n + 1) * denom);
    if (n % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

}  // namespace norlund
