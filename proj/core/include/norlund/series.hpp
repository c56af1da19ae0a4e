#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "norlund/bigreal.hpp"
#include "norlund/exactnum.hpp"
#include "norlund/scalar.hpp"

namespace norlund {

/// A series given by its first term and the ratio t(n+1)/t(n), optionally
/// multiplied termwise by a weight with w(n) = w(n-1) + inc(n).
///
/// Indices are the displayed summation indices, starting at start_index.
/// A ratio that evaluates to exactly zero terminates the stream.
class TermStream {
 public:
  using ExactFn = std::function<Rational(long n)>;
  using RealFn = std::function<BigReal(long n, int precision)>;
  using ValueFn = std::function<BigReal(int precision)>;

  struct Weight {
    ValueFn initial;  // w(start_index)
    std::optional<Rational> initial_exact;
    ExactFn inc_exact;  // w(n) - w(n-1); empty when parameters are real
    RealFn inc_real;

    BigReal inc(long n, int precision) const;
  };

  long start_index = 0;
  ValueFn first_term;
  std::optional<Rational> first_term_exact;
  ExactFn ratio_exact;  // preferred when set
  RealFn ratio_real;
  std::optional<Weight> weight;
  /// Decay exponent: S - S_N ~ c N^-theta.
  std::optional<Scalar> theta;
  /// The Raabe quantity n (t_n / t_{n+1} - 1) is eventually monotone, which
  /// makes the direct-summation tail bound valid.
  bool monotone_raabe = true;

  bool is_exact() const { return first_term_exact.has_value() && static_cast<bool>(ratio_exact); }
  bool is_weighted() const { return weight.has_value(); }

  /// Exact first terms t_start .. t_{start+count-1} (before weighting), when exact.
  std::vector<Rational> exact_terms(long count) const;
  /// Exact weights for the same range, when exact.
  std::vector<Rational> exact_weights(long count) const;

  /// Builds a stream with one scalar parameter; `ratio` is a generic callable
  /// (const T& p, long n) -> T used for both Rational and BigReal.
  template <class RatioFn>
  static TermStream with_parameter(const Scalar& p, long start, ValueFn first,
                                   std::optional<Rational> first_exact, RatioFn ratio);
};

struct StreamTerm {
  long index;
  BigReal base;
  BigReal weight;
  BigReal term;  // base * weight
};

/// Resumable generator over a stream at a fixed precision; not thread-safe.
class StreamCursor {
 public:
  StreamCursor(const TermStream& stream, int precision);

  StreamTerm next();
  /// True once every later base term is known to be exactly zero.
  bool terminated() const { return terminated_; }
  int precision() const { return precision_; }

 private:
  const TermStream* stream_;
  int precision_;
  long next_index_;
  std::optional<BigReal> base_;
  std::optional<BigReal> weight_;
  bool terminated_ = false;
};

enum class SumMethod { automatic, direct, levin, richardson };

std::string to_string(SumMethod method);
/// Accepts "auto", "direct", "levin", "richardson".
SumMethod parse_sum_method(const std::string& text);

struct SumResult {
  BigReal value;
  long terms_used = 0;
  SumMethod method = SumMethod::direct;
  BigReal error_estimate;  // heuristic
  std::optional<BigReal> tail_bound;  // rigorous, direct summation only
  std::vector<std::string> notes;
};

/// Stream of psi(z + h) - psi(z) = sum (-1)^n h(h-1)...(h-n) / ((n+1) z(z+1)...(z+n)).
TermStream norlund_stream(const Scalar& z, const Scalar& h);

/// Adds terms until |t_n| < stop_tol or max_terms terms were added; works at
/// stop_tol's precision. A terminating stream stops at its first zero term.
SumResult sum_direct(const TermStream& s, long max_terms, const BigReal& stop_tol);

/// Levin u-transform of order k from partial_sums[start .. start+k] where
/// partial_sums[i] = terms[0] + ... + terms[i].
SumResult accel_levin(const std::vector<BigReal>& partial_sums, const std::vector<BigReal>& terms,
                      int order, long start = 1);

/// Levin u-transform with the order chosen to minimise the spread between
/// consecutive orders, up to max_order.
SumResult accel_levin_adaptive(const std::vector<BigReal>& partial_sums,
                               const std::vector<BigReal>& terms, int max_order, long start = 1);

/// Repeated Richardson elimination of N^-theta, N^-(theta+1), ... from partial
/// sums taken at N, 2N, 4N, ...
SumResult accel_richardson(const std::vector<BigReal>& partial_sums, const BigReal& theta,
                           int levels);

struct SumConfig {
  SumMethod method = SumMethod::automatic;
  long max_terms = 20000;
  int precision_bits = 256;
  /// Extra bits carried by the accelerators.
  int guard_bits = 64;
};

/// High-level summation of a stream at precision_bits + guard_bits. Weighted
/// streams are rewritten by summation by parts before acceleration. A Levin
/// breakdown falls back to direct summation and records a note.
SumResult sum_stream(const TermStream& s, const SumConfig& config);

// ---------------------------------------------------------------------------

template <class RatioFn>
TermStream TermStream::with_parameter(const Scalar& p, long start, ValueFn first,
                                      std::optional<Rational> first_exact, RatioFn ratio) {
  TermStream s;
  s.start_index = start;
  s.first_term = std::move(first);
  s.first_term_exact = std::move(first_exact);
  if (p.is_exact()) {
    s.ratio_exact = [q = p.exact(), ratio](long n) { return ratio(q, n); };
  } else {
    s.ratio_real = [p, ratio](long n, int precision) { return ratio(p.at(precision), n); };
  }
  return s;
}

}  // namespace norlund
