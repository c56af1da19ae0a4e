#include <random>

#include "doctest.h"
#include "exact_oracle.hpp"
#include "norlund/exactnum.hpp"

using namespace norlund;

namespace {

Rational R(const oracle::Q& q) { return Rational(q); }

}  // namespace

TEST_SUITE("exactnum") {
  TEST_CASE("canonical rationals") {
    CHECK(Rational(6, -4).to_string() == "-3/2");
    CHECK(Rational(0, 7).denominator() == 1);
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5e-3") == Rational(-3, 2000));
    CHECK(Rational::parse("10/4") == Rational(5, 2));
    CHECK(Rational::parse("1e-10") == Rational(1, 10000000000L));
    CHECK_THROWS_AS(Rational::parse("abc"), UsageError);
    CHECK_THROWS_AS(Rational::parse("1/0"), UsageError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
  }

  TEST_CASE("harmonic-type numbers") {
    CHECK(odd_harmonic(3, 1) == Rational(23, 15));
    CHECK(odd_harmonic(0, 2) == Rational(0));
    CHECK(odd_harmonic(2, 2) == Rational(10, 9));
    CHECK(harmonic_int(4, 1) == Rational(25, 12));
    CHECK(harmonic_int(0, 3) == Rational(0));
    CHECK(harmonic_int(3, 2) == Rational(49, 36));
    for (long n = 0; n <= 40; ++n) {
      for (int m = 1; m <= 3; ++m) {
        CHECK(odd_harmonic(n, m) == R(oracle::odd_harmonic(n, m)));
        CHECK(harmonic_int(n, m) == R(oracle::harmonic(n, m)));
      }
    }
  }

  TEST_CASE("Catalan and binomials") {
    CHECK(catalan(0) == 1);
    CHECK(catalan(4) == 14);
    CHECK(catalan(5) == 42);
    for (long n = 0; n <= 40; ++n) {
      CHECK(Rational(catalan(n)) == R(oracle::catalan(n)));
      CHECK(Rational(central_binomial(n)) == R(oracle::central(n)));
    }
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(Rational(5, 2), 1) == Rational(5, 2));
    CHECK(pochhammer(Rational(1, 2), 3) == Rational(15, 8));
  }

  TEST_CASE("half-integer factorials") {
    CHECK(half_factorial(0, HalfSign::plus) == SqrtPiScaled(Rational(1), 1));
    CHECK(half_factorial(2, HalfSign::plus) == SqrtPiScaled(Rational(3, 4), 1));
    CHECK(half_factorial(1, HalfSign::minus) == SqrtPiScaled(Rational(-2), 1));
    CHECK_THROWS_AS(half_factorial(-1, HalfSign::plus), UsageError);
    for (long r = 0; r <= 30; ++r) {
      // Gamma(r + 1/2) and Gamma(-r + 1/2)
      CHECK(half_factorial(r, HalfSign::plus) == SqrtPiScaled(R(oracle::gamma_half_coeff(r)), 1));
      CHECK(half_factorial(r, HalfSign::minus) == SqrtPiScaled(R(oracle::gamma_half_coeff(-r)), 1));
    }
  }

  TEST_CASE("binom(n, h + 1/2)") {
    CHECK(binom_half(0, 0) == SqrtPiScaled(Rational(2), -2));
    CHECK(binom_half(2, 0) == SqrtPiScaled(Rational(16, 3), -2));
    CHECK(binom_half_branch(3, 3, BinomHalfBranch::upper) == binom_half_branch(3, 3, BinomHalfBranch::lower));
    CHECK_THROWS_AS(binom_half_branch(2, 3, BinomHalfBranch::upper), UsageError);
    CHECK_THROWS_AS(binom_half_branch(3, 2, BinomHalfBranch::lower), UsageError);
  }

  TEST_CASE("SqrtPiScaled stays within its window") {
    const SqrtPiScaled root_pi(Rational(1), 1);
    CHECK((root_pi * root_pi).half_power() == 2);
    CHECK_THROWS_AS(root_pi * root_pi * root_pi, UsageError);
    CHECK((SqrtPiScaled(Rational(0), 2)).half_power() == 0);
    const BigReal v = SqrtPiScaled(Rational(2), -2).evaluate(PrecisionContext(128));
    CHECK((v - BigReal::from_int(2, 128) / const_pi(PrecisionContext(128))).abs() <= BigReal::ulp(128).ldexp(4));
  }

  TEST_CASE("H_{k-1/2} as constant vectors") {
    CHECK(harmonic_half(0, 1) == ConstVector(0, -2));
    CHECK(harmonic_half(1, 1) == ConstVector(2, -2));
    CHECK(harmonic_half(2, 2) == ConstVector(Rational(40, 9), 0, -2));
    CHECK(harmonic_half(0, 3) == ConstVector(0, 0, 0, -6));
    CHECK_THROWS_AS(harmonic_half(1, 4), UsageError);
    for (long k = 0; k <= 30; ++k) {
      const oracle::Q o1 = oracle::odd_harmonic(k, 1);
      const oracle::Q o2 = oracle::odd_harmonic(k, 2);
      const oracle::Q o3 = oracle::odd_harmonic(k, 3);
      CHECK(harmonic_half(k, 1) == ConstVector(R(2 * o1), -2));
      CHECK(harmonic_half(k, 2) == ConstVector(R(4 * o2), 0, -2));
      CHECK(harmonic_half(k, 3) == ConstVector(R(8 * o3), 0, 0, -6));
    }
  }

  TEST_CASE("constvec_eval") {
    const PrecisionContext ctx(128);
    CHECK(constvec_eval(ConstVector(1), ctx) == BigReal::one(128));
    CHECK(constvec_eval(ConstVector(0, 2), ctx).to_decimal(20) == "1.38629436111989061883");
    CHECK(constvec_eval(ConstVector::zeta2(), ctx).to_decimal(20) == "1.64493406684822643647");
    const ConstVector v(Rational(1, 3), Rational(-2, 7), Rational(5), Rational(-1, 9));
    CHECK((v + v) == v * Rational(2));
    CHECK((v - v) == ConstVector());
    CHECK(!v.is_rational());
  }

  TEST_CASE("terminating Norlund sums") {
    CHECK(norlund_finite(Rational(1, 3), 1) == Rational(3));
    CHECK(norlund_finite(Rational(2), 2) == Rational(5, 6));
    CHECK_THROWS_AS(norlund_finite(Rational(0), 2), DomainError);
    CHECK_THROWS_AS(norlund_finite(Rational(-1, 2), 2), DomainError);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> num(1, 300), den(1, 30);
    for (int i = 0; i < 30; ++i) {
      const oracle::Q z = oracle::canon(oracle::Q(num(rng), den(rng)));
      oracle::Q expect = 0;
      for (long k = 1; k <= 3; ++k) expect += oracle::canon(1 / (z + k - 1));
      CHECK(norlund_finite(R(z), 3) == R(expect));
    }
  }
}
