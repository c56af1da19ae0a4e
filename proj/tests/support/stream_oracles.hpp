#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "exact_oracle.hpp"
#include "norlund/catalog.hpp"

namespace oracle {

/// Closed factorial/Gamma forms of the summand of a catalog series.
struct StreamOracle {
  long start = 0;
  /// t_n when it is rational for these parameters.
  std::function<std::optional<Q>(long)> term;
  /// t_n / t_start, always rational for rational parameters.
  std::function<Q(long)> relative;
  bool weighted = false;
  /// w_n when rational.
  std::function<std::optional<Q>(long)> weight;
  /// w_n - w_start.
  std::function<Q(long)> weight_shift;
};

/// Oracle for the series of a catalog sample (general stream or special).
/// Throws std::logic_error for an identity or special it does not know.
StreamOracle stream_oracle(const norlund::Sample& sample);

/// Extra rational parameter points per identity beyond the default samples.
std::vector<norlund::Params> extra_rational_points(const std::string& id);

struct TermCheck {
  bool ok;
  std::string detail;
};

/// Recurrence-generated t_start..t_{start+count-1} (and weights) against the
/// closed forms: exact equality, or of t_n/t_start when t_start is irrational.
TermCheck check_stream_terms(const norlund::Identity& identity, const norlund::Sample& sample,
                             long count = 101);

}  // namespace oracle
