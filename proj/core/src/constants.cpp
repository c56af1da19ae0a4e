#include <map>
#include <mutex>

#include "norlund/bigreal.hpp"

namespace norlund {

namespace {

// Extra bits beyond the requested precision; covers the truncation error
// of each floor division in the series below (at most one unit per term).
constexpr int kConstGuard = 40;

mpz_class pow2(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

// round(2^w * atan(1/x)) up to a few units.
mpz_class atan_inv(unsigned long x, unsigned long w) {
  mpz_class power = pow2(w) / x;
  mpz_class sum = power;
  const unsigned long x2 = x * x;
  for (unsigned long k = 1; power != 0; ++k) {
    power /= x2;
    mpz_class term = power / (2 * k + 1);
    if (k % 2 == 1) {
      sum -= term;
    } else {
      sum += term;
    }
  }
  return sum;
}

// Machin: pi = 16 atan(1/5) - 4 atan(1/239).
mpz_class pi_fixed(unsigned long w) { return 16 * atan_inv(5, w) - 4 * atan_inv(239, w); }

// ln 2 = 2 atanh(1/3) = 2 sum 1/((2k+1) 3^(2k+1)).
mpz_class ln2_fixed(unsigned long w) {
  mpz_class power = pow2(w) / 3;
  mpz_class sum = 0;
  for (unsigned long k = 0; power != 0; ++k) {
    sum += power / (2 * k + 1);
    power /= 9;
  }
  return 2 * sum;
}

// zeta(3) = (5/2) sum_{k>=1} (-1)^(k+1) / (k^3 binom(2k, k)).
mpz_class zeta3_fixed(unsigned long w) {
  const mpz_class scale = pow2(w);
  mpz_class central = 2;  // binom(2, 1)
  mpz_class sum = 0;
  for (unsigned long k = 1;; ++k) {
    mpz_class den = central * k * k * k;
    mpz_class term = scale / den;
    if (term == 0) break;
    if (k % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
    // binom(2k+2, k+1) = binom(2k, k) * 2(2k+1)/(k+1)
    central *= 2 * (2 * k + 1);
    central /= (k + 1);
  }
  return (5 * sum) / 2;
}

class ConstantCache {
 public:
  using Generator = mpz_class (*)(unsigned long);
  explicit ConstantCache(Generator gen) : gen_(gen) {}

  BigReal get(int precision_bits) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = values_.find(precision_bits);
    if (it == values_.end()) {
      const int w = precision_bits + kConstGuard;
      BigReal wide(gen_(static_cast<unsigned long>(w)), w);
      it = values_.emplace(precision_bits, wide.rescale(precision_bits).mantissa()).first;
    }
    return BigReal(it->second, precision_bits);
  }

 private:
  Generator gen_;
  std::mutex mu_;
  std::map<int, mpz_class> values_;
};

ConstantCache& pi_cache() {
  static ConstantCache cache(&pi_fixed);
  return cache;
}

ConstantCache& ln2_cache() {
  static ConstantCache cache(&ln2_fixed);
  return cache;
}

ConstantCache& zeta3_cache() {
  static ConstantCache cache(&zeta3_fixed);
  return cache;
}

}  // namespace

BigReal const_pi(const PrecisionContext& ctx) { return pi_cache().get(ctx.precision_bits); }

BigReal const_ln2(const PrecisionContext& ctx) { return ln2_cache().get(ctx.precision_bits); }

BigReal const_zeta3(const PrecisionContext& ctx) { return zeta3_cache().get(ctx.precision_bits); }

}  // namespace norlund
