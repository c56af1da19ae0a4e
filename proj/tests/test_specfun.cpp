#include <random>
#include <thread>

#include "doctest.h"
#include "exact_oracle.hpp"
#include "mpfr_oracle.hpp"
#include "norlund/elementary.hpp"
#include "norlund/specfun.hpp"

using namespace norlund;
using oracle::Mp;

namespace {

constexpr int P = 256;
const PrecisionContext ctx(P);

BigReal rat(long a, long b, int p = P) { return BigReal::from_fraction(a, b, p); }

// |a - b| <= 2^-(P - bits) max(1, |b|)
bool close_rel(const BigReal& a, const BigReal& b, int bits) {
  BigReal scale = b.abs();
  if (scale < BigReal::one(b.precision())) scale = BigReal::one(b.precision());
  return (a - b).abs() <= (scale * BigReal::ulp(b.precision())).ldexp(bits);
}

BigReal mpfr_digamma_at(const BigReal& z) {
  Mp x(P + 128), r(P + 128);
  oracle::set_big(x, z);
  mpfr_digamma(r.get(), x.get(), MPFR_RNDN);
  return oracle::to_big(r, P);
}

BigReal mpfr_lngamma_at(const BigReal& z) {
  Mp x(P + 128), r(P + 128);
  oracle::set_big(x, z);
  mpfr_lngamma(r.get(), x.get(), MPFR_RNDN);
  return oracle::to_big(r, P);
}

// psi^(r)(q) for rational q > 0 from the value at the fractional part base in
// {1, 1/2} plus the exact finite shift sum: psi^(r)(x+1) = psi^(r)(x) + (-1)^r r!/x^(r+1).
BigReal polygamma_oracle(int r, long twice_q) {
  // psi^(r)(1) = (-1)^(r+1) r! zeta(r+1); psi^(r)(1/2) = (2^(r+1) - 1) psi^(r)(1)
  Mp z(P + 128);
  mpfr_zeta_ui(z.get(), static_cast<unsigned long>(r + 1), MPFR_RNDN);
  mpfr_mul_z(z.get(), z.get(), oracle::fact(r).get_mpz_t(), MPFR_RNDN);
  if (r % 2 == 0) mpfr_neg(z.get(), z.get(), MPFR_RNDN);
  long base2 = 2;  // 2x of the base point
  if (twice_q % 2 == 1) {
    mpfr_mul_si(z.get(), z.get(), (1L << (r + 1)) - 1, MPFR_RNDN);
    base2 = 1;
  }
  oracle::Q shift = 0;
  for (long x2 = base2; x2 < twice_q; x2 += 2) {
    shift += oracle::canon(oracle::Q(1) / oracle::pow_q(oracle::Q(x2, 2), r + 1));
  }
  shift *= oracle::Q(oracle::fact(r));
  if (r % 2 == 1) shift = -shift;
  Mp s(P + 128);
  mpfr_set_q(s.get(), oracle::canon(shift).get_mpq_t(), MPFR_RNDN);
  mpfr_add(z.get(), z.get(), s.get(), MPFR_RNDN);
  return oracle::to_big(z, P);
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("Bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    CHECK_THROWS_AS(bernoulli(201), Error);
    // concurrent first use is safe and consistent
    std::vector<std::thread> ts;
    std::vector<Rational> got(4);
    for (int i = 0; i < 4; ++i) ts.emplace_back([i, &got] { got[static_cast<std::size_t>(i)] = bernoulli(100); });
    for (auto& t : ts) t.join();
    for (const auto& g : got) CHECK(g == got.front());
  }

  TEST_CASE("digamma against MPFR") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> num(1, 5000);
    for (int i = 0; i < 40; ++i) {
      const BigReal z = rat(num(rng), 97);
      CHECK(close_rel(digamma(z, ctx), mpfr_digamma_at(z), 8));
    }
    for (long n : {1L, 2L, 1000L}) {
      const BigReal z = BigReal::from_int(n, P).ldexp(-20);
      CHECK(close_rel(digamma(z, ctx), mpfr_digamma_at(z), 8));
    }
  }

  TEST_CASE("digamma examples") {
    const BigReal d = digamma(rat(1, 2), ctx) - digamma(BigReal::one(P), ctx);
    CHECK(close_rel(d, -const_ln2(ctx).ldexp(1), 8));
    CHECK(close_rel(digamma(BigReal::from_int(2, P), ctx) - digamma(BigReal::one(P), ctx), BigReal::one(P), 8));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.01, 5);
    for (int i = 0; i < 20; ++i) {
      const BigReal z = BigReal::from_double(u(rng), P);
      const BigReal step = digamma(z + BigReal::one(P), ctx) - digamma(z, ctx);
      CHECK(close_rel(step, BigReal::one(P) / z, 10));
    }
    CHECK_THROWS_AS(digamma(BigReal::zero(P), ctx), DomainError);
    CHECK_THROWS_AS(digamma(rat(-1, 2), ctx), DomainError);
  }

  TEST_CASE("polygamma against zeta values and shifts") {
    for (int r = 1; r <= PolyOrder::kMax; ++r) {
      for (long twice_q : {1L, 2L, 3L, 7L, 20L}) {
        const BigReal got = polygamma(PolyOrder(r), rat(twice_q, 2), ctx);
        CHECK_MESSAGE(close_rel(got, polygamma_oracle(r, twice_q), 8), "r=" << r << " q=" << twice_q << "/2");
      }
    }
    const BigReal pi = const_pi(ctx);
    CHECK(close_rel(polygamma(PolyOrder(1), rat(1, 2), ctx), pi * pi / 2, 8));
    CHECK(close_rel(polygamma(PolyOrder(1), BigReal::one(P), ctx), pi * pi / 6, 8));
    CHECK(close_rel(polygamma(PolyOrder(2), BigReal::one(P), ctx), -const_zeta3(ctx).ldexp(1), 8));
    CHECK_THROWS_AS(PolyOrder(9), UsageError);
    CHECK_THROWS_AS(PolyOrder(-1), UsageError);
    CHECK_THROWS_AS(polygamma(PolyOrder(1), BigReal::zero(P), ctx), DomainError);
  }

  TEST_CASE("harmonic_real") {
    CHECK(close_rel(harmonic_real(rat(1, 2), 1, ctx), BigReal::from_int(2, P) - const_ln2(ctx).ldexp(1), 8));
    CHECK(harmonic_real(rat(1, 2), 1, ctx).to_decimal(20) == "0.61370563888010938117");
    CHECK(close_rel(harmonic_real(BigReal::from_int(3, P), 1, ctx), rat(11, 6), 8));
    const BigReal pi = const_pi(ctx);
    CHECK(close_rel(harmonic_real(rat(-1, 2), 2, ctx), -(pi * pi / 3), 8));
    for (long n = 0; n <= 15; ++n) {
      for (int m = 1; m <= 4; ++m) {
        const Rational h = harmonic_int(n, m);
        CHECK(close_rel(harmonic_real(BigReal::from_int(n, P), m, ctx), h.to_bigreal(P), 8));
      }
    }
    for (long k = 0; k <= 20; ++k) {
      for (int m = 1; m <= 3; ++m) {
        CHECK(close_rel(harmonic_real(rat(2 * k - 1, 2), m, ctx), constvec_eval(harmonic_half(k, m), ctx), 10));
      }
    }
    // alpha below -1 via the backward recurrence
    CHECK(close_rel(harmonic_real(rat(-3, 2), 1, ctx), harmonic_real(rat(-1, 2), 1, ctx) + BigReal::from_int(2, P), 8));
    CHECK_THROWS_AS(harmonic_real(BigReal::from_int(-1, P), 1, ctx), DomainError);
    CHECK_THROWS_AS(harmonic_real(BigReal::one(P), 0, ctx), UsageError);
  }

  TEST_CASE("binom_real") {
    CHECK(binom_real(rat(5, 2), 1, ctx) == rat(5, 2));
    // binom(n + 3/2, n) = (2n+1)(2n+3)/(4^n 3) C(2n, n)
    for (long n = 0; n <= 12; ++n) {
      const Rational expect = Rational((2 * n + 1) * (2 * n + 3), 3) * Rational(central_binomial(n)) / Rational(4).pow(n);
      CHECK(close_rel(binom_real(rat(2 * n + 3, 2), n, ctx), expect.to_bigreal(P), 8));
    }
    CHECK(binom_real(rat(7, 3), 0, ctx) == BigReal::one(P));
    CHECK(binom_real(BigReal::from_int(3, P), 2, ctx) == BigReal::from_int(3, P));
    CHECK_THROWS_AS(binom_real(BigReal::one(P), -1, ctx), UsageError);
  }

  TEST_CASE("log_gamma and gamma_ratio against MPFR") {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(1, 3000);
    for (int i = 0; i < 20; ++i) {
      const BigReal a = rat(num(rng), 61);
      const BigReal b = rat(num(rng), 53);
      CHECK(close_rel(log_gamma(a, ctx), mpfr_lngamma_at(a), 8));
      const BigReal expect = elementary::exp(mpfr_lngamma_at(a) - mpfr_lngamma_at(b));
      CHECK(close_rel(gamma_ratio(a, b, ctx), expect, 12));
    }
    CHECK_THROWS_AS(gamma_ratio(BigReal::from_int(-2, P), BigReal::one(P), ctx), DomainError);
  }

  TEST_CASE("reflection formula through the gamma pipeline") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<long> num(1, 996);
    const BigReal one = BigReal::one(P);
    for (int i = 0; i < 20; ++i) {
      long k = num(rng);
      if (k % 997 == 0) ++k;
      const BigReal r = rat(k, 997);
      // (-r)! (r-1)! = Gamma(1-r) Gamma(r)
      const BigReal lhs = gamma_ratio(one - r, one, ctx) * gamma_ratio(r, one, ctx);
      CHECK(close_rel(lhs, const_pi(ctx) / sin_pi(r), 12));
    }
  }

  TEST_CASE("digamma differences behind the pi series") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-0.4, 0.4), v(0.1, 0.9);
    const BigReal half = rat(1, 2);
    const BigReal one = BigReal::one(P);
    const BigReal pi = const_pi(ctx);
    for (int i = 0; i < 15; ++i) {
      const BigReal z = BigReal::from_double(u(rng), P);
      const BigReal lhs = digamma(half + z, ctx) - digamma(half - z, ctx);
      CHECK(close_rel(lhs, pi * sin_pi(z) / cos_pi(z), 12));
      const BigReal w = BigReal::from_double(v(rng), P);
      CHECK(close_rel(digamma(one - w, ctx) - digamma(w, ctx), pi * cos_pi(w) / sin_pi(w), 12));
    }
  }

  TEST_CASE("centered difference of digamma matches trigamma") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.5, 5);
    const BigReal eps = BigReal::one(P).ldexp(-(P / 3));
    for (int i = 0; i < 10; ++i) {
      const BigReal z = BigReal::from_double(u(rng), P);
      const BigReal fd = (digamma(z + eps, ctx) - digamma(z - eps, ctx)) / eps.ldexp(1);
      const BigReal exact = polygamma(PolyOrder(1), z, ctx);
      // truncation eps^2 |psi'''|/6 plus rounding ~ ulp/eps
      const BigReal c = polygamma(PolyOrder(3), z, ctx).abs() / 6 + BigReal::one(P);
      const BigReal bound = c * eps * eps * 2 + BigReal::ulp(P).ldexp(P / 3 + 4);
      CHECK((fd - exact).abs() <= bound);
    }
  }

  TEST_CASE("higher precision requests") {
    const PrecisionContext wide(2048);
    Mp x(2200), r(2200);
    mpfr_set_ui(x.get(), 7, MPFR_RNDN);
    mpfr_div_ui(x.get(), x.get(), 3, MPFR_RNDN);
    mpfr_digamma(r.get(), x.get(), MPFR_RNDN);
    const BigReal got = digamma(BigReal::from_fraction(7, 3, 2048), wide);
    CHECK((got - oracle::to_big(r, 2048)).abs() <= BigReal::ulp(2048).ldexp(8));
  }
}
