#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "norlund/bigreal.hpp"
#include "norlund/exactnum.hpp"
#include "norlund/scalar.hpp"
#include "norlund/series.hpp"

namespace norlund {

using Params = std::vector<std::pair<std::string, Scalar>>;

/// Looks a parameter up by name; UsageError when absent.
const Scalar& param(const Params& params, std::string_view name);
std::string format_params(const Params& params);

enum class ParamKind { integer, rational, real };

struct ParamSpec {
  std::string name;
  ParamKind kind;
};

struct DomainRule {
  std::string predicate;  // e.g. "z ∉ ℤ⁻"
  std::function<bool(const Params&)> holds;
  /// False for conditions added for convergence of the series.
  bool from_statement = true;
};

using StreamFactory = std::function<TermStream(const Params&)>;
using ClosedForm = std::function<BigReal(const Params&, const PrecisionContext&)>;
using ExactForm = std::function<std::optional<ConstVector>(const Params&)>;

/// A displayed special case with its own series and closed form.
struct Special {
  std::string label;  // the closed form as text
  Params params;
  std::function<TermStream()> lhs;
  std::function<BigReal(const PrecisionContext&)> rhs;
  std::optional<ConstVector> rhs_exact;
};

struct Identity {
  std::string id;
  std::string tag;  // the identity as a one-line formula
  std::vector<ParamSpec> params;
  std::vector<DomainRule> rules;
  StreamFactory lhs;
  /// Exact finite sum added to the accelerated series (left side).
  ExactForm correction;
  ClosedForm rhs;
  /// Closed form over (1, ln 2, zeta(2), zeta(3)) when the parameters allow it.
  ExactForm rhs_exact;
  /// Throws IllConditioned when the parameters are too close to a singularity
  /// for the requested precision.
  std::function<void(const Params&, int precision)> conditioning;
  std::vector<Params> default_samples;
  std::vector<Special> specials;
  Rational tolerance;
  /// Identity whose z-derivative this one encodes (weights H_{n+...}).
  std::optional<std::string> derived_from;
  std::vector<std::string> notes;
  std::function<std::vector<std::string>(const Params&)> sample_notes;

  std::string domain_text() const;       // statement conditions
  std::string convergence_text() const;  // added conditions
  std::string param_text() const;
};

/// Every identity, sorted by id. Ids are unique.
std::vector<Identity> register_all();

/// Immutable process-wide catalog built on first use.
const std::vector<Identity>& catalog();
/// NotFound for an unknown id.
const Identity& find_identity(std::string_view id);

struct Sample {
  std::string id;
  int index;
  std::string label;
  Params params;
  std::optional<std::size_t> special;  // index into Identity::specials
};

/// General default samples followed by the specials.
std::vector<Sample> samples(const Identity& identity);

struct VerifyConfig {
  int precision_bits = 256;
  long max_terms = 20000;
  SumMethod method = SumMethod::automatic;
  std::optional<Rational> tolerance;  // identity default when unset
};

struct VerificationReport {
  std::string id;
  std::string sample;
  Params params;
  std::string method;
  long terms_used = 0;
  BigReal lhs = BigReal::zero(kMinPrecisionBits);
  BigReal rhs = BigReal::zero(kMinPrecisionBits);
  BigReal abs_error = BigReal::zero(kMinPrecisionBits);
  BigReal tolerance = BigReal::zero(kMinPrecisionBits);
  bool passed = false;
  double elapsed_ms = 0.0;
  BigReal error_estimate = BigReal::zero(kMinPrecisionBits);
  std::optional<BigReal> tail_bound;
  std::vector<std::string> notes;
};

/// Checks parameter names, kinds and domain rules; DomainError names the
/// violated predicate. Returns the special that matches the parameters, if any.
std::optional<std::size_t> validate(const Identity& identity, const Params& params);

VerificationReport verify(std::string_view id, const Params& params, const VerifyConfig& config);
VerificationReport verify_sample(const Identity& identity, const Sample& sample,
                                 const VerifyConfig& config);

/// Left side as summed (including any exact correction), at precision + 64 bits.
SumResult evaluate_lhs(const Identity& identity, const Params& params, const VerifyConfig& config);

/// Consistency relations between entries of the catalog.
std::vector<VerificationReport> cross_checks(const VerifyConfig& config);

/// Compares the z-derivative of the base identity's closed form, taken by a
/// centered difference with step eps, with H_z * base - derived. The O(eps^2)
/// constant is estimated from a second difference at eps/2.
VerificationReport derivative_consistency(std::string_view base_id, std::string_view derived_id,
                                          const Rational& z0, const Rational& eps,
                                          int precision_bits = 256);

}  // namespace norlund
