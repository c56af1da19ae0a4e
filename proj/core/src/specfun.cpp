#include "norlund/specfun.hpp"

#include <cmath>
#include <mutex>
#include <string>
#include <vector>

#include "norlund/elementary.hpp"

namespace norlund {

PolyOrder::PolyOrder(int r) : r_(r) {
  if (r < 0 || r > kMax) {
    throw UsageError("polygamma order must lie in [0, " + std::to_string(kMax) + "]");
  }
}

namespace {

std::vector<Rational> compute_bernoulli() {
  // sum_{j=0}^{n} binom(n+1, j) B_j = 0
  std::vector<Rational> b(kBernoulliCap + 1);
  b[0] = Rational(1);
  for (int n = 1; n <= kBernoulliCap; ++n) {
    if (n > 1 && n % 2 == 1) continue;  // odd indices above 1 vanish
    Rational acc;
    for (int j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      acc += Rational(binomial(n + 1, j), 1) * b[j];
    }
    b[n] = -acc / Rational(n + 1);
  }
  return b;
}

const std::vector<Rational>& bernoulli_table() {
  static std::once_flag once;
  static std::vector<Rational> table;
  std::call_once(once, [] { table = compute_bernoulli(); });
  return table;
}

long bit_length(const mpz_class& m) {
  return m == 0 ? 0 : static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

// Argument above which the asymptotic series reaches 2^-w within the
// Bernoulli cap: the k-th term behaves like (k / (pi e x))^(2k).
long shift_target(int w) {
  double bound = std::max({10.0, w / 4.0, 11.71 * std::exp2(w / 200.0)});
  if (bound > 4194304.0) {
    throw Error("precision request too extreme for the cached Bernoulli numbers (" +
                std::to_string(w) + " bits)");
  }
  return static_cast<long>(std::ceil(bound));
}

// Number of unit steps that lift x to at least `target`.
long shift_count(const BigReal& x, long target) {
  mpz_class fl = x.floor();
  if (fl >= target) return 0;
  return target - fl.get_si();
}

[[noreturn]] void cap_exceeded() {
  throw Error("asymptotic expansion did not converge within the Bernoulli cap");
}

// Sums c_1 x + c_2 x q + c_3 x q^2 + ... where c_{k+1}/c_k = ratio(k), tracking
// each term itself: keeping q^k apart would underflow long before the growing
// Bernoulli coefficients let the product drop below one ulp.
template <class Ratio>
BigReal bernoulli_series(const BigReal& x, const BigReal& q, const Rational& first, Ratio ratio) {
  BigReal term = scale(x, first);
  BigReal sum = term;
  for (int k = 1;; ++k) {
    if (2 * (k + 1) > kBernoulliCap) cap_exceeded();
    term = scale(term, ratio(k)) * q;
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

// B_{2k+2} / B_{2k}
Rational bernoulli_step(int k) { return bernoulli(2 * k + 2) / bernoulli(2 * k); }

// psi(y) - ln(y) for large y: -1/(2y) - sum B_2k / (2k y^2k)
BigReal digamma_asymptotic_tail(const BigReal& y) {
  const int w = y.precision();
  const BigReal inv = BigReal::one(w) / y;
  const BigReal inv2 = inv * inv;
  const BigReal series = bernoulli_series(inv2, inv2, bernoulli(2) / Rational(2), [](int k) {
    return bernoulli_step(k) * Rational(2L * k, 2L * k + 2);
  });
  return -inv.ldexp(-1) - series;
}

// psi^(r)(y) for large y and r >= 1.
BigReal polygamma_asymptotic(int r, const BigReal& y) {
  const int w = y.precision();
  const BigReal inv = BigReal::one(w) / y;
  const BigReal inv2 = inv * inv;
  BigReal inv_r = BigReal::one(w);
  for (int i = 0; i < r; ++i) inv_r *= inv;
  const Rational fact_r_minus_1(factorial(r - 1), 1);
  const Rational fact_r(factorial(r), 1);
  BigReal sum = scale(inv_r, fact_r_minus_1) + scale(inv_r * inv, fact_r / Rational(2));
  // B_2k (2k+r-1)! / (2k)! y^-(2k+r)
  const Rational first = bernoulli(2) * Rational(factorial(r + 1), mpz_class(2));
  sum += bernoulli_series(inv_r * inv2, inv2, first, [r](int k) {
    return bernoulli_step(k) * Rational(static_cast<long>(2 * k + r + 1) * (2 * k + r),
                                        static_cast<long>(2 * k + 2) * (2 * k + 1));
  });
  return r % 2 == 1 ? sum : -sum;
}

// ln Gamma(y) - ln(2 pi)/2 for large y.
BigReal log_gamma_asymptotic(const BigReal& y) {
  const int w = y.precision();
  const BigReal half = BigReal::from_fraction(1, 2, w);
  const BigReal inv = BigReal::one(w) / y;
  const BigReal inv2 = inv * inv;
  // B_2k / (2k (2k-1)) y^-(2k-1)
  const BigReal series = bernoulli_series(inv, inv2, bernoulli(2) / Rational(2), [](int k) {
    return bernoulli_step(k) * Rational(2L * k * (2 * k - 1), (2L * k + 2) * (2 * k + 1));
  });
  return (y - half) * elementary::log(y) - y + series;
}

void require_positive(const BigReal& z, const char* name) {
  if (z.sign() <= 0) throw DomainError(std::string(name) + " requires a positive argument");
}

void require_not_pole(const BigReal& x) {
  if (x.sign() <= 0 && x.is_integer()) {
    throw DomainError("Gamma has a pole at the non-positive integer " + x.floor().get_str());
  }
}

// Extra bits so that results of magnitude ~x^e keep their relative accuracy.
int magnitude_bits(const BigReal& x, int e) {
  return static_cast<int>(bit_length(x.abs().floor()) * e);
}

}  // namespace

const Rational& bernoulli(int index) {
  if (index < 0 || index > kBernoulliCap) {
    throw Error("Bernoulli index " + std::to_string(index) + " exceeds the cache cap");
  }
  return bernoulli_table()[static_cast<std::size_t>(index)];
}

BigReal digamma(const BigReal& z, const PrecisionContext& ctx) {
  require_positive(z, "digamma");
  const int w = ctx.working_bits();
  const BigReal x = z.rescale(w);
  const long n = shift_count(x, shift_target(w));
  BigReal shift_sum = BigReal::zero(w);
  const BigReal one = BigReal::one(w);
  for (long k = 0; k < n; ++k) shift_sum += one / (x + BigReal::from_int(k, w));
  const BigReal y = x + BigReal::from_int(n, w);
  BigReal result = elementary::log(y) + digamma_asymptotic_tail(y) - shift_sum;
  return result.rescale(ctx.precision_bits);
}

BigReal polygamma(PolyOrder order, const BigReal& z, const PrecisionContext& ctx) {
  const int r = order.value();
  if (r == 0) return digamma(z, ctx);
  require_positive(z, "polygamma");
  // results shrink like z^-r; keep their relative accuracy
  const int w = ctx.working_bits() + magnitude_bits(z, r);
  const BigReal x = z.rescale(w);
  const long n = shift_count(x, shift_target(w));
  BigReal shift_sum = BigReal::zero(w);
  const BigReal one = BigReal::one(w);
  for (long k = 0; k < n; ++k) {
    BigReal inv = one / (x + BigReal::from_int(k, w));
    BigReal p = inv;
    for (int i = 0; i < r; ++i) p *= inv;
    shift_sum += p;
  }
  shift_sum = scale(shift_sum, Rational(factorial(r), 1));
  const BigReal y = x + BigReal::from_int(n, w);
  BigReal result = polygamma_asymptotic(r, y);
  // psi^(r)(x) = psi^(r)(x + n) - (-1)^r r! sum 1/(x+k)^(r+1)
  if (r % 2 == 0) {
    result -= shift_sum;
  } else {
    result += shift_sum;
  }
  return result.rescale(ctx.precision_bits);
}

BigReal harmonic_real(const BigReal& alpha, int m, const PrecisionContext& ctx) {
  if (m < 1 || m > PolyOrder::kMax) {
    throw UsageError("harmonic order must lie in [1, " + std::to_string(PolyOrder::kMax) + "]");
  }
  if (alpha.sign() < 0 && alpha.is_integer()) {
    throw DomainError("harmonic number has a pole at the negative integer " +
                      alpha.floor().get_str());
  }
  const int w = ctx.working_bits();
  PrecisionContext wctx(w, ctx.guard_bits);
  BigReal a = alpha.rescale(w);
  const BigReal one = BigReal::one(w);
  // H_a = H_{a+k} - sum_{j=1}^{k} 1/(a+j)^m
  BigReal correction = BigReal::zero(w);
  while (a <= -one) {
    a += one;
    BigReal inv = one / a;
    BigReal p = inv;
    for (int i = 1; i < m; ++i) p *= inv;
    correction += p;
  }
  const BigReal arg = a + one;
  BigReal value = m == 1 ? digamma(arg, wctx) - digamma(one, wctx)
                         : polygamma(PolyOrder(m - 1), arg, wctx) -
                               polygamma(PolyOrder(m - 1), one, wctx);
  if (m > 1) {
    // (-1)^(m-1) / (m-1)!
    Rational c(mpz_class(m % 2 == 0 ? -1 : 1), factorial(m - 1));
    value = scale(value, c);
  }
  return (value - correction).rescale(ctx.precision_bits);
}

BigReal binom_real(const BigReal& x, long n, const PrecisionContext& ctx) {
  if (n < 0) throw UsageError("binom_real requires n >= 0");
  const int w = ctx.working_bits();
  const BigReal xw = x.rescale(w);
  BigReal result = BigReal::one(w);
  for (long i = 0; i < n; ++i) {
    result *= xw - BigReal::from_int(i, w);
    result /= i + 1;
  }
  return result.rescale(ctx.precision_bits);
}

BigReal gamma_ratio(const BigReal& a, const BigReal& b, const PrecisionContext& ctx) {
  require_not_pole(a);
  require_not_pole(b);
  const int w = ctx.working_bits() + 16 +
                std::max(magnitude_bits(a, 1), magnitude_bits(b, 1)) * 2;
  const BigReal aw = a.rescale(w);
  const BigReal bw = b.rescale(w);
  const BigReal low = aw < bw ? aw : bw;
  const long n = shift_count(low, shift_target(w));
  // Gamma(a)/Gamma(b) = Gamma(a+n)/Gamma(b+n) * prod (b+i)/(a+i). The two
  // products are kept apart and every step grows the magnitude, so no
  // intermediate underflows the fixed-point format.
  BigReal num = BigReal::one(w);
  BigReal den = BigReal::one(w);
  for (long i = 0; i < n; ++i) {
    num *= bw + BigReal::from_int(i, w);
    den *= aw + BigReal::from_int(i, w);
  }
  const BigReal shift = BigReal::from_int(n, w);
  const BigReal diff = log_gamma_asymptotic(aw + shift) - log_gamma_asymptotic(bw + shift);
  const BigReal grow = elementary::exp(diff.abs());
  const BigReal result = diff.sign() >= 0 ? grow * num / den : num / (den * grow);
  return result.rescale(ctx.precision_bits);
}

BigReal log_gamma(const BigReal& x, const PrecisionContext& ctx) {
  require_positive(x, "log_gamma");
  const int w = ctx.working_bits() + 16 + 2 * magnitude_bits(x, 1);
  PrecisionContext wctx(w, ctx.guard_bits);
  const BigReal xw = x.rescale(w);
  const long n = shift_count(xw, shift_target(w));
  BigReal product = BigReal::one(w);
  for (long i = 0; i < n; ++i) product *= xw + BigReal::from_int(i, w);
  const BigReal log_product = elementary::log(product);
  const BigReal two_pi = const_pi(wctx).ldexp(1);
  BigReal result = log_gamma_asymptotic(xw + BigReal::from_int(n, w)) +
                   elementary::log(two_pi).ldexp(-1) - log_product;
  return result.rescale(ctx.precision_bits);
}

}  // namespace norlund
