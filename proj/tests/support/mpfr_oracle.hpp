#pragma once

#include <mpfr.h>

#include <cmath>

#include "norlund/bigreal.hpp"
#include "norlund/exactnum.hpp"

namespace oracle {

/// RAII mpfr_t at a fixed precision.
class Mp {
 public:
  explicit Mp(long bits) { mpfr_init2(v_, bits); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

inline void set_rational(Mp& out, const norlund::Rational& r) {
  mpfr_set_q(out.get(), r.value().get_mpq_t(), MPFR_RNDN);
}

inline void set_big(Mp& out, const norlund::BigReal& x) {
  mpfr_set_z_2exp(out.get(), x.mantissa().get_mpz_t(), -x.precision(), MPFR_RNDN);
}

/// Nearest BigReal at the given precision.
inline norlund::BigReal to_big(const Mp& x, int precision) {
  Mp scaled(mpfr_get_prec(x.get()) + precision + 64);
  mpfr_mul_2si(scaled.get(), x.get(), precision, MPFR_RNDN);
  mpz_class m;
  mpfr_get_z(m.get_mpz_t(), scaled.get(), MPFR_RNDN);
  return norlund::BigReal(m, precision);
}

/// |a - b| measured in ulps of a's precision.
inline double ulps_apart(const norlund::BigReal& a, const norlund::BigReal& b) {
  mpz_class d = a.mantissa() - b.mantissa();
  return std::abs(d.get_d());
}

}  // namespace oracle
