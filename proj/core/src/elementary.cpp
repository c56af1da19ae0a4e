#include "norlund/elementary.hpp"

#include <cstdlib>

namespace norlund::elementary {

namespace {

constexpr int kGuard = 32;

long bit_length(const mpz_class& m) {
  return m == 0 ? 0 : static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2));
}

}  // namespace

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("log of a non-positive number");
  const int p = x.precision();
  const int w = p + kGuard;
  BigReal y = x.rescale(w);
  // y = 2^k * r with r in [0.75, 1.5)
  long k = bit_length(y.mantissa()) - w - 1;
  BigReal r = y.ldexp(-k);
  const BigReal one = BigReal::one(w);
  if (r > BigReal::from_fraction(3, 2, w)) {
    r = r.ldexp(-1);
    ++k;
  }
  BigReal u = (r - one) / (r + one);
  BigReal u2 = u * u;
  BigReal power = u;
  BigReal sum = u;
  for (long j = 1;; ++j) {
    power *= u2;
    if (power.is_zero()) break;
    sum += power / (2 * j + 1);
  }
  BigReal result = sum.ldexp(1);
  if (k != 0) result += const_ln2(PrecisionContext(w, kGuard)) * k;
  return result.rescale(p);
}

BigReal exp(const BigReal& x) {
  const int p = x.precision();
  const long magnitude = bit_length(x.floor());
  const int w = p + kGuard + static_cast<int>(magnitude);
  BigReal xw = x.rescale(w);
  const BigReal ln2 = const_ln2(PrecisionContext(w, kGuard));
  mpz_class k_big = round_div(xw.mantissa(), ln2.mantissa());
  if (!k_big.fits_slong_p()) throw DomainError("exp argument out of range");
  const long k = k_big.get_si();
  BigReal r = xw - ln2 * k;
  // halve the reduced argument, sum the Taylor series, then square back
  constexpr int kHalvings = 12;
  r = r.ldexp(-kHalvings);
  BigReal term = BigReal::one(w);
  BigReal sum = term;
  for (long j = 1;; ++j) {
    term *= r;
    term /= j;
    if (term.is_zero()) break;
    sum += term;
  }
  for (int i = 0; i < kHalvings; ++i) sum *= sum;
  return sum.ldexp(k).rescale(p);
}

BigReal pow(const BigReal& base, const BigReal& exponent) {
  if (base.sign() <= 0) throw DomainError("pow requires a positive base");
  return exp(exponent * log(base));
}

}  // namespace norlund::elementary
