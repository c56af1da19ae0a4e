#pragma once

#include "norlund/bigreal.hpp"
#include "norlund/exactnum.hpp"

namespace norlund {

/// Derivative order of the polygamma function; 0 is digamma itself.
class PolyOrder {
 public:
  static constexpr int kMax = 8;
  explicit PolyOrder(int r);
  int value() const { return r_; }

 private:
  int r_;
};

/// Bernoulli number B_index (B_1 = -1/2). Indices above kBernoulliCap throw Error.
inline constexpr int kBernoulliCap = 200;
const Rational& bernoulli(int index);

/// psi(z) for z > 0.
BigReal digamma(const BigReal& z, const PrecisionContext& ctx);
/// psi^(r)(z) for z > 0.
BigReal polygamma(PolyOrder r, const BigReal& z, const PrecisionContext& ctx);

/// H_alpha^(m) = sum_j (1/j^m - 1/(j+alpha)^m), evaluated without Euler's constant.
/// Non-integer alpha <= -1 is reached through H_a = H_{a+1} - 1/(a+1)^m;
/// negative integers are poles.
BigReal harmonic_real(const BigReal& alpha, int m, const PrecisionContext& ctx);

/// x (x-1) ... (x-n+1) / n!
BigReal binom_real(const BigReal& x, long n, const PrecisionContext& ctx);

/// Gamma(a) / Gamma(b); neither argument may be a non-positive integer.
BigReal gamma_ratio(const BigReal& a, const BigReal& b, const PrecisionContext& ctx);

/// ln Gamma(x) for x > 0.
BigReal log_gamma(const BigReal& x, const PrecisionContext& ctx);

}  // namespace norlund
