#pragma once

// Reference values computed straight from factorial definitions with raw
// GMP rationals. Nothing here calls into the library under test.

#include <gmpxx.h>

namespace oracle {

using Q = mpq_class;

inline Q canon(Q q) {
  q.canonicalize();
  return q;
}

inline mpz_class fact(long n) {
  mpz_class r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

// a (a+1) ... (a+n-1)
inline Q poch(const Q& a, long n) {
  Q r = 1;
  for (long i = 0; i < n; ++i) r *= a + i;
  return r;
}

// x (x-1) ... (x-k+1) / k!
inline Q gbinom(const Q& x, long k) {
  Q r = 1;
  for (long i = 0; i < k; ++i) r *= x - i;
  return canon(r / Q(fact(k)));
}

inline Q central(long n) { return canon(Q(fact(2 * n), fact(n) * fact(n))); }
inline Q catalan(long n) { return canon(Q(fact(2 * n), fact(n) * fact(n + 1))); }

inline Q pow_q(const Q& b, long e) {
  Q r = 1;
  for (long i = 0; i < e; ++i) r *= b;
  return r;
}

inline Q harmonic(long n, int m = 1) {
  Q s = 0;
  for (long j = 1; j <= n; ++j) s += canon(Q(1, 1) / pow_q(Q(j), m));
  return s;
}

inline Q odd_harmonic(long n, int m = 1) {
  Q s = 0;
  for (long j = 1; j <= n; ++j) s += canon(Q(1, 1) / pow_q(Q(2 * j - 1), m));
  return s;
}

// sum_{j=1}^{n} 1/(a+j): H_{a+n} - H_a without needing H_a itself.
inline Q harmonic_shift(const Q& a, long n) {
  Q s = 0;
  for (long j = 1; j <= n; ++j) s += canon(Q(1, 1) / (a + j));
  return s;
}

inline bool is_int(const Q& q) { return q.get_den() == 1; }

/// Coefficient c of Gamma(x) = c sqrt(pi) for half-integer x = r + 1/2 (any integer r).
inline Q gamma_half_coeff(long r) {
  if (r >= 0) return canon(Q(fact(2 * r), pow_q(Q(4), r).get_num() * fact(r)));
  const long s = -r;
  Q v = canon(Q(pow_q(Q(4), s).get_num() * fact(s), fact(2 * s)));
  return s % 2 == 0 ? v : Q(-v);
}

}  // namespace oracle
