#include "norlund/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "norlund/elementary.hpp"

namespace norlund {

BigReal TermStream::Weight::inc(long n, int precision) const {
  if (inc_exact) return inc_exact(n).to_bigreal(precision);
  return inc_real(n, precision);
}

std::vector<Rational> TermStream::exact_terms(long count) const {
  if (!is_exact()) throw UsageError("stream has no exact term representation");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  Rational t = *first_term_exact;
  for (long i = 0; i < count; ++i) {
    out.push_back(t);
    if (!t.is_zero()) t *= ratio_exact(start_index + i);
  }
  return out;
}

std::vector<Rational> TermStream::exact_weights(long count) const {
  if (!weight || !weight->initial_exact || !weight->inc_exact) {
    throw UsageError("stream has no exact weight representation");
  }
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  Rational w = *weight->initial_exact;
  for (long i = 0; i < count; ++i) {
    if (i > 0) w += weight->inc_exact(start_index + i);
    out.push_back(w);
  }
  return out;
}

StreamCursor::StreamCursor(const TermStream& stream, int precision)
    : stream_(&stream), precision_(precision), next_index_(stream.start_index) {}

StreamTerm StreamCursor::next() {
  const long n = next_index_++;
  if (!base_) {
    base_ = stream_->first_term_exact ? stream_->first_term_exact->to_bigreal(precision_)
                                      : stream_->first_term(precision_).rescale(precision_);
    if (stream_->first_term_exact ? stream_->first_term_exact->is_zero() : base_->is_zero()) {
      terminated_ = true;
    }
    if (stream_->weight) {
      const auto& w = *stream_->weight;
      weight_ = w.initial_exact ? w.initial_exact->to_bigreal(precision_)
                                : w.initial(precision_).rescale(precision_);
    }
  } else if (!terminated_) {
    if (stream_->ratio_exact) {
      Rational r = stream_->ratio_exact(n - 1);
      if (r.is_zero()) {
        terminated_ = true;
        base_ = BigReal::zero(precision_);
      } else {
        base_ = scale(*base_, r);
      }
    } else {
      BigReal r = stream_->ratio_real(n - 1, precision_).rescale(precision_);
      if (r.is_zero()) terminated_ = true;
      base_ = *base_ * r;
    }
    if (weight_ && !terminated_) *weight_ += stream_->weight->inc(n, precision_);
  }
  if (terminated_) base_ = BigReal::zero(precision_);
  BigReal w = weight_ ? *weight_ : BigReal::one(precision_);
  BigReal term = weight_ ? *base_ * w : *base_;
  return StreamTerm{n, *base_, w, term};
}

std::string to_string(SumMethod method) {
  switch (method) {
    case SumMethod::automatic:
      return "auto";
    case SumMethod::direct:
      return "direct";
    case SumMethod::levin:
      return "levin";
    case SumMethod::richardson:
      return "richardson";
  }
  return "unknown";
}

SumMethod parse_sum_method(const std::string& text) {
  if (text == "auto") return SumMethod::automatic;
  if (text == "direct") return SumMethod::direct;
  if (text == "levin") return SumMethod::levin;
  if (text == "richardson") return SumMethod::richardson;
  throw UsageError("unknown summation method '" + text + "' (auto, direct, levin, richardson)");
}

TermStream norlund_stream(const Scalar& z, const Scalar& h) {
  if (z.sign() <= 0) throw DomainError("z > 0");
  if ((z + h).sign() <= 0) throw DomainError("z + h > 0");
  TermStream s;
  s.start_index = 0;
  s.theta = z + h;
  // t(n+1)/t(n) = -(h - (n+1)) (n+1) / ((z + n + 1) (n + 2))
  auto ratio = [](const auto& zz, const auto& hh, long n) {
    return -(hh - lift(zz, n + 1)) * lift(zz, n + 1) / ((zz + lift(zz, n + 1)) * lift(zz, n + 2));
  };
  if (z.is_exact() && h.is_exact()) {
    const Rational zq = z.exact();
    const Rational hq = h.exact();
    s.first_term_exact = hq / zq;
    s.first_term = [t0 = hq / zq](int p) { return t0.to_bigreal(p); };
    s.ratio_exact = [zq, hq, ratio](long n) { return ratio(zq, hq, n); };
  } else {
    s.first_term = [z, h](int p) { return h.at(p) / z.at(p); };
    s.ratio_real = [z, h, ratio](long n, int p) { return ratio(z.at(p), h.at(p), n); };
  }
  return s;
}

// ---------------------------------------------------------------------------

SumResult sum_direct(const TermStream& s, long max_terms, const BigReal& stop_tol) {
  if (max_terms < 1) throw UsageError("max_terms must be at least 1");
  const int p = stop_tol.precision();
  StreamCursor cursor(s, p);
  BigReal sum = BigReal::zero(p);
  long used = 0;
  std::optional<StreamTerm> last;
  bool exact = false;
  while (used < max_terms) {
    StreamTerm t = cursor.next();
    if (cursor.terminated()) {
      exact = true;
      break;
    }
    sum += t.term;
    ++used;
    last = t;
    if (t.term.abs() < stop_tol) break;
  }
  SumResult r{sum, std::max(used, 1L), SumMethod::direct, BigReal::zero(p), std::nullopt, {}};
  if (exact || !last) {
    r.tail_bound = BigReal::zero(p);
    r.notes.emplace_back("stream terminates; sum is exact up to rounding");
    return r;
  }
  StreamTerm peek = cursor.next();
  if (cursor.terminated()) {
    r.tail_bound = BigReal::zero(p);
    return r;
  }
  const BigReal tn = last->term.abs();
  const BigReal tn1 = peek.term.abs();
  if (!s.is_weighted() && s.monotone_raabe && s.theta && !tn1.is_zero() &&
      last->term.sign() == peek.term.sign()) {
    // n (t_n / t_{n+1} - 1) >= q > 1 for all later n gives tail <= n t_n / (q - 1)
    const BigReal n = BigReal::from_int(used, p);
    const BigReal raabe = n * (tn - tn1) / tn1;
    const BigReal limit = BigReal::one(p) + s.theta->at(p);
    const BigReal q = raabe < limit ? raabe : limit;
    const BigReal one = BigReal::one(p);
    if (q > one) r.tail_bound = n * tn / (q - one);
  }
  if (r.tail_bound) {
    r.error_estimate = *r.tail_bound;
  } else if (s.theta && s.theta->sign() > 0) {
    r.error_estimate = BigReal::from_int(used, p) * tn / s.theta->at(p);
  } else {
    r.error_estimate = tn;
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct LevinInputs {
  long start;
  std::vector<mpz_class> s_over_omega;  // mantissas of S_n / omega_n
  std::vector<mpz_class> inv_omega;     // mantissas of 1 / omega_n
};

// omega_n = (n + 1) t_n; returns the index of a zero term, or -1.
long prepare_levin(const std::vector<BigReal>& partial_sums, const std::vector<BigReal>& terms,
                   long start, long last, LevinInputs& in) {
  in.start = start;
  const int p = partial_sums.front().precision();
  const BigReal one = BigReal::one(p);
  for (long n = start; n <= last; ++n) {
    const BigReal& t = terms[static_cast<std::size_t>(n)];
    if (t.is_zero()) return n;
    BigReal inv = one / (t * (n + 1));
    in.inv_omega.push_back(inv.mantissa());
    in.s_over_omega.push_back((partial_sums[static_cast<std::size_t>(n)] * inv).mantissa());
  }
  return -1;
}

// L_k from start .. start+k. Weights (-1)^j binom(k, j) (start+1+j)^(k-1); the
// common factor (start+1+k)^(k-1) cancels between numerator and denominator.
std::optional<BigReal> levin_value(const LevinInputs& in, int k, int p) {
  mpz_class num = 0;
  mpz_class den = 0;
  mpz_class binom = 1;
  for (int j = 0; j <= k; ++j) {
    mpz_class c;
    mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(in.start + 1 + j),
                  static_cast<unsigned long>(std::max(k - 1, 0)));
    c *= binom;
    if (j % 2 == 1) c = -c;
    num += c * in.s_over_omega[static_cast<std::size_t>(j)];
    den += c * in.inv_omega[static_cast<std::size_t>(j)];
    binom = binom * (k - j) / (j + 1);
  }
  if (den == 0) return std::nullopt;
  mpz_class scaled = num;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(p));
  return BigReal(round_div(scaled, den), p);
}

void check_levin_shape(const std::vector<BigReal>& partial_sums,
                       const std::vector<BigReal>& terms, long start, long needed_last) {
  if (partial_sums.size() != terms.size()) {
    throw UsageError("accel_levin: partial sums and terms differ in length");
  }
  if (start < 0 || needed_last >= static_cast<long>(partial_sums.size())) {
    throw UsageError("accel_levin: not enough partial sums for the requested order");
  }
}

// A zero term inside the window is harmless when every later term in the
// window is zero too: the sequence has already reached its limit.
std::optional<SumResult> trailing_zero_result(const std::vector<BigReal>& partial_sums,
                                              const std::vector<BigReal>& terms, long zero_at,
                                              long last) {
  for (long n = zero_at; n <= last; ++n) {
    if (!terms[static_cast<std::size_t>(n)].is_zero()) return std::nullopt;
  }
  const BigReal& s = partial_sums[static_cast<std::size_t>(zero_at)];
  SumResult r{s, zero_at + 1, SumMethod::levin, BigReal::zero(s.precision()), std::nullopt, {}};
  r.notes.emplace_back("sequence is constant from index " + std::to_string(zero_at));
  return r;
}

}  // namespace

SumResult accel_levin(const std::vector<BigReal>& partial_sums, const std::vector<BigReal>& terms,
                      int order, long start) {
  if (order < 1) throw UsageError("accel_levin: order must be at least 1");
  const long last = start + order;
  check_levin_shape(partial_sums, terms, start, last);
  const int p = partial_sums.front().precision();
  LevinInputs in;
  if (long z = prepare_levin(partial_sums, terms, start, last, in); z >= 0) {
    if (auto r = trailing_zero_result(partial_sums, terms, z, last)) return *r;
    throw AccelBreakdown("Levin transform: zero term at index " + std::to_string(z));
  }
  auto hi = levin_value(in, order, p);
  auto lo = levin_value(in, order - 1, p);
  if (!hi || !lo) throw AccelBreakdown("Levin transform: vanishing denominator");
  return SumResult{*hi, last + 1, SumMethod::levin, (*hi - *lo).abs(), std::nullopt, {}};
}

SumResult accel_levin_adaptive(const std::vector<BigReal>& partial_sums,
                               const std::vector<BigReal>& terms, int max_order, long start) {
  const long available = static_cast<long>(partial_sums.size()) - start - 1;
  const int k_max = static_cast<int>(std::min<long>(max_order, available));
  if (k_max < 3) return accel_levin(partial_sums, terms, std::max(k_max, 1), start);
  check_levin_shape(partial_sums, terms, start, start + k_max);
  const int p = partial_sums.front().precision();
  LevinInputs in;
  if (long z = prepare_levin(partial_sums, terms, start, start + k_max, in); z >= 0) {
    if (auto r = trailing_zero_result(partial_sums, terms, z, start + k_max)) return *r;
    throw AccelBreakdown("Levin transform: zero term at index " + std::to_string(z));
  }
  std::vector<std::optional<BigReal>> values;
  values.reserve(static_cast<std::size_t>(k_max) + 1);
  values.emplace_back(partial_sums[static_cast<std::size_t>(start)]);
  for (int k = 1; k <= k_max; ++k) values.push_back(levin_value(in, k, p));

  int best = -1;
  std::optional<BigReal> best_spread;
  for (int k = 2; k <= k_max; ++k) {
    const auto& a = values[static_cast<std::size_t>(k)];
    const auto& b = values[static_cast<std::size_t>(k - 1)];
    const auto& c = values[static_cast<std::size_t>(k - 2)];
    if (!a || !b || !c) continue;
    BigReal d1 = (*a - *b).abs();
    BigReal d2 = (*a - *c).abs();
    BigReal spread = d1 < d2 ? d2 : d1;
    if (!best_spread || spread < *best_spread) {
      best = k;
      best_spread = spread;
    }
  }
  if (best < 0) throw AccelBreakdown("Levin transform: every order broke down");
  return SumResult{*values[static_cast<std::size_t>(best)], start + best + 1, SumMethod::levin,
                   *best_spread, std::nullopt, {}};
}

SumResult accel_richardson(const std::vector<BigReal>& partial_sums, const BigReal& theta,
                           int levels) {
  if (levels < 1) throw UsageError("accel_richardson: at least one level is required");
  if (static_cast<long>(partial_sums.size()) < levels + 1) {
    throw UsageError("accel_richardson: " + std::to_string(levels) + " levels need " +
                     std::to_string(levels + 1) + " partial sums");
  }
  if (theta.sign() <= 0) throw UsageError("accel_richardson: theta must be positive");
  const int p = partial_sums.front().precision();
  const BigReal th = theta.rescale(p);
  const BigReal one = BigReal::one(p);
  BigReal factor = elementary::exp(th * const_ln2(PrecisionContext(p)));  // 2^theta
  std::vector<BigReal> col(partial_sums.begin(), partial_sums.begin() + levels + 1);
  BigReal previous_second = col[1];
  for (int j = 0; j < levels; ++j) {
    previous_second = col[1];
    for (std::size_t i = 0; i + 1 < col.size() - static_cast<std::size_t>(j); ++i) {
      col[i] = (factor * col[i + 1] - col[i]) / (factor - one);
    }
    factor = factor.ldexp(1);
  }
  return SumResult{col[0], static_cast<long>(partial_sums.size()), SumMethod::richardson,
                   (col[0] - previous_second).abs(), std::nullopt, {}};
}

// ---------------------------------------------------------------------------

namespace {

struct Scan {
  std::vector<BigReal> base;
  std::vector<BigReal> weight;
  bool terminated = false;
};

Scan scan(const TermStream& s, long count, int p) {
  Scan out;
  StreamCursor cursor(s, p);
  for (long i = 0; i < count; ++i) {
    StreamTerm t = cursor.next();
    if (cursor.terminated()) {
      out.terminated = true;
      break;
    }
    out.base.push_back(t.base);
    out.weight.push_back(t.weight);
  }
  return out;
}

std::vector<BigReal> prefix_sums(const std::vector<BigReal>& terms, int p) {
  std::vector<BigReal> out;
  out.reserve(terms.size());
  BigReal acc = BigReal::zero(p);
  for (const auto& t : terms) {
    acc += t;
    out.push_back(acc);
  }
  return out;
}

// sum_n b_n w_n = w_0 B + sum_{i>=1} (w_i - w_{i-1}) (B - (b_0 + ... + b_{i-1}))
std::vector<BigReal> by_parts(const Scan& sc, const BigReal& total) {
  std::vector<BigReal> u;
  u.reserve(sc.base.size());
  u.push_back(sc.weight[0] * total);
  BigReal tail = total;
  for (std::size_t i = 1; i < sc.base.size(); ++i) {
    tail -= sc.base[i - 1];
    u.push_back((sc.weight[i] - sc.weight[i - 1]) * tail);
  }
  return u;
}

int levin_max_order(int w) { return std::max(8, w / 4); }

SumResult levin_sum(const TermStream& s, const SumConfig& cfg, int w) {
  const int k_max = levin_max_order(w);
  const long count = std::min<long>(cfg.max_terms, k_max + 2);
  Scan sc = scan(s, count, w);
  if (sc.terminated) return sum_direct(s, cfg.max_terms, BigReal::zero(w));
  if (sc.base.size() < 4) throw AccelBreakdown("too few terms for the Levin transform");
  if (!s.is_weighted()) {
    return accel_levin_adaptive(prefix_sums(sc.base, w), sc.base, k_max, 1);
  }
  SumResult inner = accel_levin_adaptive(prefix_sums(sc.base, w), sc.base, k_max, 1);
  std::vector<BigReal> u = by_parts(sc, inner.value);
  SumResult outer = accel_levin_adaptive(prefix_sums(u, w), u, k_max, 1);
  // an error d in the inner sum shifts the rewritten series by d times the weights
  BigReal w_last = sc.weight.back().abs();
  if (w_last < BigReal::one(w)) w_last = BigReal::one(w);
  outer.error_estimate += inner.error_estimate * w_last;
  outer.terms_used = std::max(outer.terms_used, inner.terms_used);
  outer.notes.emplace_back("weighted stream summed by parts");
  return outer;
}

constexpr long kRichardsonBase = 16;
constexpr int kRichardsonMaxLevels = 10;

std::vector<BigReal> sampled_partials(const std::vector<BigReal>& terms, int levels, int p) {
  std::vector<BigReal> out;
  BigReal acc = BigReal::zero(p);
  long next = kRichardsonBase;
  for (long i = 0; i < static_cast<long>(terms.size()); ++i) {
    acc += terms[static_cast<std::size_t>(i)];
    if (i + 1 == next) {
      out.push_back(acc);
      next *= 2;
      if (static_cast<int>(out.size()) == levels + 1) break;
    }
  }
  return out;
}

SumResult richardson_sum(const TermStream& s, const SumConfig& cfg, int w) {
  if (!s.theta) throw UsageError("Richardson extrapolation needs the stream's decay exponent");
  int levels = 0;
  while (levels < kRichardsonMaxLevels && (kRichardsonBase << (levels + 1)) <= cfg.max_terms) {
    ++levels;
  }
  if (levels < 1) {
    throw UsageError("Richardson extrapolation needs max_terms >= " +
                     std::to_string(2 * kRichardsonBase));
  }
  const long count = kRichardsonBase << levels;
  Scan sc = scan(s, count, w);
  if (sc.terminated) return sum_direct(s, cfg.max_terms, BigReal::zero(w));
  const BigReal theta = s.theta->at(w);
  SumResult r = accel_richardson(sampled_partials(sc.base, levels, w), theta, levels);
  if (s.is_weighted()) {
    std::vector<BigReal> u = by_parts(sc, r.value);
    SumResult outer = accel_richardson(sampled_partials(u, levels, w), theta, levels);
    outer.error_estimate += r.error_estimate;
    outer.notes.emplace_back("weighted stream summed by parts");
    r = outer;
  }
  r.terms_used = count;
  return r;
}

}  // namespace

SumResult sum_stream(const TermStream& s, const SumConfig& cfg) {
  if (cfg.max_terms < 1) throw UsageError("max_terms must be at least 1");
  const int w = cfg.precision_bits + cfg.guard_bits;
  switch (cfg.method) {
    case SumMethod::direct:
      return sum_direct(s, cfg.max_terms, BigReal::zero(w));
    case SumMethod::richardson:
      return richardson_sum(s, cfg, w);
    case SumMethod::automatic:
    case SumMethod::levin:
      try {
        return levin_sum(s, cfg, w);
      } catch (const AccelBreakdown& e) {
        SumResult r = sum_direct(s, cfg.max_terms, BigReal::zero(w));
        r.notes.emplace_back(std::string("Levin breakdown, fell back to direct summation: ") +
                             e.what());
        return r;
      }
  }
  throw UsageError("unknown summation method");
}

}  // namespace norlund
