#include "norlund/catalog.hpp"

#include <algorithm>
#include <chrono>

#include "norlund/errors.hpp"
#include "norlund/specfun.hpp"

namespace norlund {

namespace {

using Clock = std::chrono::steady_clock;

constexpr int kAccelGuard = 64;
constexpr int kRhsGuard = 32;

double millis_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += ", ";
    out += p;
  }
  return out;
}

Params canonical(const Identity& e, const Params& given) {
  for (std::size_t i = 0; i < given.size(); ++i) {
    const auto& name = given[i].first;
    const bool known = std::any_of(e.params.begin(), e.params.end(),
                                   [&](const ParamSpec& s) { return s.name == name; });
    if (!known) {
      throw UsageError("unknown parameter '" + name + "' for " + e.id + " (expects " + e.param_text() + ")");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (given[j].first == name) throw UsageError("parameter '" + name + "' given twice");
    }
  }
  Params out;
  for (const auto& spec : e.params) {
    auto it = std::find_if(given.begin(), given.end(), [&](const auto& kv) { return kv.first == spec.name; });
    if (it == given.end()) {
      throw UsageError("missing parameter '" + spec.name + "' for " + e.id + " (expects " + e.param_text() + ")");
    }
    out.push_back(*it);
  }
  return out;
}

std::optional<std::size_t> match_special(const Identity& e, const Params& ps) {
  for (std::size_t i = 0; i < e.specials.size(); ++i) {
    bool all = true;
    for (const auto& [name, value] : e.specials[i].params) {
      const Scalar& given = param(ps, name);
      if (!given.is_exact() || !(given == value.exact())) {
        all = false;
        break;
      }
    }
    if (all) return i;
  }
  return std::nullopt;
}

void check_rules(const Identity& e, const Params& ps) {
  for (const auto& spec : e.params) {
    const Scalar& v = param(ps, spec.name);
    if (spec.kind == ParamKind::integer && !v.is_integer()) {
      throw DomainError(e.id + ": " + spec.name + " ∈ ℤ required (got " + v.to_string() + ")");
    }
    if (spec.kind == ParamKind::rational && !v.is_exact()) {
      throw DomainError(e.id + ": " + spec.name + " must be an exact rational");
    }
  }
  for (const auto& r : e.rules) {
    if (!r.holds(ps)) {
      throw DomainError(e.id + ": " + r.predicate + " violated (" + format_params(ps) + ")");
    }
  }
}

void check_config(const VerifyConfig& cfg) {
  if (cfg.precision_bits < 64) throw UsageError("precision must be at least 64 bits");
  if (cfg.max_terms < 1) throw UsageError("max_terms must be positive");
}

SumResult sum_lhs(const Identity& e, const Params& ps, std::optional<std::size_t> special,
                  const VerifyConfig& cfg) {
  const int p = cfg.precision_bits;
  TermStream stream;
  std::optional<ConstVector> correction;
  if (special) {
    stream = e.specials[*special].lhs();
  } else {
    if (e.conditioning) e.conditioning(ps, p);
    stream = e.lhs(ps);
    if (e.correction) correction = e.correction(ps);
  }
  SumConfig sc;
  sc.method = cfg.method;
  sc.max_terms = cfg.max_terms;
  sc.precision_bits = p;
  sc.guard_bits = kAccelGuard;
  SumResult r = sum_stream(stream, sc);
  if (correction) {
    r.value += constvec_eval(*correction, PrecisionContext(r.value.precision(), kRhsGuard));
    r.notes.push_back("exact finite part " + correction->to_string() + " added");
  }
  return r;
}

VerificationReport make_report(std::string id, std::string label, Params ps, const BigReal& lhs,
                               const BigReal& rhs, const Rational& tolerance, int precision) {
  VerificationReport rep;
  rep.id = std::move(id);
  rep.sample = std::move(label);
  rep.params = std::move(ps);
  const int w = lhs.precision();
  rep.lhs = lhs.rescale(precision);
  rep.rhs = rhs.rescale(precision);
  rep.abs_error = (lhs - rhs.rescale(w)).abs();
  rep.tolerance = tolerance.to_bigreal(w);
  rep.passed = rep.abs_error <= rep.tolerance;
  rep.error_estimate = BigReal::zero(w);
  return rep;
}

VerificationReport run(const Identity& e, const Params& ps, std::optional<std::size_t> special,
                       std::string label, const VerifyConfig& cfg) {
  check_config(cfg);
  const auto start = Clock::now();
  const int p = cfg.precision_bits;
  const PrecisionContext ctx(p + kAccelGuard, kRhsGuard);

  SumResult sum = sum_lhs(e, ps, special, cfg);
  BigReal rhs = special ? e.specials[*special].rhs(ctx) : e.rhs(ps, ctx);
  std::optional<ConstVector> exact;
  if (special) {
    exact = e.specials[*special].rhs_exact;
  } else if (e.rhs_exact) {
    exact = e.rhs_exact(ps);
  }

  VerificationReport rep =
      make_report(e.id, std::move(label), ps, sum.value, rhs, cfg.tolerance.value_or(e.tolerance), p);
  rep.method = to_string(sum.method);
  rep.terms_used = sum.terms_used;
  rep.error_estimate = sum.error_estimate;
  rep.tail_bound = sum.tail_bound;
  rep.notes = std::move(sum.notes);
  if (exact) {
    const BigReal from_basis = constvec_eval(*exact, ctx);
    const BigReal gap = (from_basis - rhs).abs();
    if (gap > BigReal::ulp(ctx.precision_bits) * 16) {
      rep.notes.push_back("closed form " + exact->to_string() + " differs from the numeric evaluation");
    } else {
      rep.notes.push_back("closed form " + exact->to_string());
    }
  }
  if (!special && e.sample_notes) {
    for (auto& n : e.sample_notes(ps)) rep.notes.push_back(std::move(n));
  }
  rep.elapsed_ms = millis_since(start);
  return rep;
}

}  // namespace

const Scalar& param(const Params& params, std::string_view name) {
  for (const auto& [n, v] : params) {
    if (n == name) return v;
  }
  throw UsageError("missing parameter '" + std::string(name) + "'");
}

std::string format_params(const Params& params) {
  std::string out;
  for (const auto& [n, v] : params) {
    if (!out.empty()) out += ", ";
    out += n + "=" + v.to_string();
  }
  return out;
}

std::string Identity::domain_text() const {
  std::vector<std::string> parts;
  for (const auto& r : rules) {
    if (r.from_statement) parts.push_back(r.predicate);
  }
  return join(parts);
}

std::string Identity::convergence_text() const {
  std::vector<std::string> parts;
  for (const auto& r : rules) {
    if (!r.from_statement) parts.push_back(r.predicate);
  }
  return join(parts);
}

std::string Identity::param_text() const {
  std::vector<std::string> parts;
  for (const auto& p : params) {
    const char* kind = p.kind == ParamKind::integer ? "integer" : p.kind == ParamKind::rational ? "rational" : "real";
    parts.push_back(p.name + ": " + kind);
  }
  return join(parts);
}

const std::vector<Identity>& catalog() {
  static const std::vector<Identity> all = [] {
    auto v = register_all();
    std::sort(v.begin(), v.end(), [](const Identity& a, const Identity& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (v[i].id == v[i - 1].id) throw Error("duplicate identity id " + v[i].id);
    }
    return v;
  }();
  return all;
}

const Identity& find_identity(std::string_view id) {
  for (const auto& e : catalog()) {
    if (e.id == id) return e;
  }
  throw NotFound("unknown identity '" + std::string(id) + "'");
}

std::vector<Sample> samples(const Identity& identity) {
  std::vector<Sample> out;
  int index = 0;
  for (const auto& ps : identity.default_samples) {
    out.push_back(Sample{identity.id, index++, format_params(ps), ps, std::nullopt});
  }
  for (std::size_t i = 0; i < identity.specials.size(); ++i) {
    const auto& sp = identity.specials[i];
    out.push_back(Sample{identity.id, index++, sp.label, sp.params, i});
  }
  return out;
}

std::optional<std::size_t> validate(const Identity& identity, const Params& params) {
  const Params ps = canonical(identity, params);
  if (auto s = match_special(identity, ps)) return s;
  check_rules(identity, ps);
  return std::nullopt;
}

VerificationReport verify(std::string_view id, const Params& params, const VerifyConfig& config) {
  const Identity& e = find_identity(id);
  const Params ps = canonical(e, params);
  auto special = validate(e, ps);
  std::string label = special ? e.specials[*special].label : format_params(ps);
  return run(e, ps, special, std::move(label), config);
}

VerificationReport verify_sample(const Identity& identity, const Sample& sample, const VerifyConfig& config) {
  const Params ps = canonical(identity, sample.params);
  if (!sample.special) check_rules(identity, ps);
  return run(identity, ps, sample.special, sample.label, config);
}

SumResult evaluate_lhs(const Identity& identity, const Params& params, const VerifyConfig& config) {
  check_config(config);
  const Params ps = canonical(identity, params);
  auto special = validate(identity, ps);
  return sum_lhs(identity, ps, special, config);
}

namespace {

SumResult special_lhs(std::string_view id, std::size_t index, const VerifyConfig& cfg) {
  const Identity& e = find_identity(id);
  return sum_lhs(e, e.specials.at(index).params, index, cfg);
}

SumResult general_lhs(std::string_view id, const Params& ps, const VerifyConfig& cfg) {
  const Identity& e = find_identity(id);
  const Params cp = canonical(e, ps);
  check_rules(e, cp);
  return sum_lhs(e, cp, std::nullopt, cfg);
}

VerificationReport series_check(std::string id, std::string label, Params ps, const SumResult& lhs,
                                const BigReal& rhs, const VerifyConfig& cfg, Clock::time_point start) {
  VerificationReport rep = make_report(std::move(id), std::move(label), std::move(ps), lhs.value, rhs,
                                       cfg.tolerance.value_or(Rational::parse("1e-10")), cfg.precision_bits);
  rep.method = to_string(lhs.method);
  rep.terms_used = lhs.terms_used;
  rep.error_estimate = lhs.error_estimate;
  rep.elapsed_ms = millis_since(start);
  return rep;
}

}  // namespace

std::vector<VerificationReport> cross_checks(const VerifyConfig& config) {
  check_config(config);
  const int p = config.precision_bits;
  const int w = p + kAccelGuard;
  const PrecisionContext ctx(w, kRhsGuard);
  const BigReal pi = const_pi(ctx);
  const BigReal zeta2 = pi * pi / 6;
  const BigReal ln2 = const_ln2(ctx);
  std::vector<VerificationReport> out;

  {
    auto t = Clock::now();
    SumResult cat_oh = general_lhs("CAT-OH", {{"m", Scalar(1)}}, config);
    cat_oh.value *= 2;
    out.push_back(series_check("CAT-OH", "2 x series at m=1 vs zeta(2)", {{"m", Scalar(1)}}, cat_oh, zeta2, config, t));
    t = Clock::now();
    SumResult odd = special_lhs("CAT-H", 0, config);
    out.push_back(series_check("CAT-OH", "2 x series at m=1 vs CAT-H odd-harmonic series at z=1/2",
                               {{"m", Scalar(1)}}, cat_oh, odd.value, config, t));
  }
  {
    auto t = Clock::now();
    SumResult cb_m = general_lhs("CB-M", {{"m", Scalar(1)}}, config);
    const BigReal limit = polygamma(PolyOrder(1), Rational(1, 2).to_bigreal(w), ctx) / 4;
    out.push_back(series_check("CB-M", "series at m=1 vs psi'(1/2)/4 (h -> 0 limit of CB-INV)",
                               {{"m", Scalar(1)}}, cb_m, limit, config, t));
    t = Clock::now();
    const Params tiny{{"h", Scalar(Rational(mpz_class(1), mpz_class(1) << 40))}};
    const BigReal near_zero = find_identity("CB-INV").rhs(tiny, ctx);
    out.push_back(series_check("CB-INV", "closed form at h=2^-40 vs CB-M series at m=1", tiny, cb_m,
                               near_zero, config, t));
  }
  {
    auto t = Clock::now();
    SumResult n_form = special_lhs("CAT-N", 0, config);
    SumResult odd_form = special_lhs("CAT-2N1", 1, config);
    out.push_back(series_check("CAT-N", "sum n C_n/((n+1)4^n) vs sum (2n+1) C_n/((n+1)(n+2)4^n)",
                               {{"z", Scalar(1)}}, n_form, odd_form.value, config, t));
    t = Clock::now();
    out.push_back(series_check("CAT-N", "sum n C_n/((n+1)4^n) vs 4 ln 2 - 2", {{"z", Scalar(1)}}, n_form,
                               ln2 * 4 - BigReal::from_int(2, w), config, t));
  }
  {
    auto t = Clock::now();
    const TermStream cat = find_identity("CAT-INV").lhs({{"z", Scalar(Rational(1, 2))}});
    const TermStream cb = find_identity("CB-INV").specials.at(1).lhs();
    const auto a = cat.exact_terms(101);
    const auto b = cb.exact_terms(101);
    bool equal = true;
    for (long n = 0; n <= 100; ++n) {
      const Rational expected = Rational(1, (n + 1) * (2 * n + 1));
      equal = equal && a[static_cast<std::size_t>(n)] == expected && b[static_cast<std::size_t>(n)] == expected;
    }
    VerificationReport rep = make_report("CAT-INV", "terms at z=1/2 equal 1/((n+1)(2n+1)) and CB-INV h=1/2, n<=100",
                                         {{"z", Scalar(Rational(1, 2))}}, BigReal::zero(w),
                                         equal ? BigReal::zero(w) : BigReal::one(w), 0, p);
    rep.method = "exact";
    rep.terms_used = 101;
    rep.elapsed_ms = millis_since(t);
    out.push_back(std::move(rep));
  }
  {
    auto t = Clock::now();
    SumResult odd = special_lhs("CAT-H", 0, config);
    SumResult shifted = special_lhs("OH-SHIFT", 0, config);
    SumResult pair = special_lhs("OH-SHIFT", 1, config);
    SumResult diff = odd;
    diff.value = odd.value - shifted.value;
    diff.terms_used = odd.terms_used + shifted.terms_used;
    out.push_back(series_check("OH-SHIFT", "odd-harmonic series minus h=0 series vs sum 1/((n+1)(2n+1)^2)",
                               {{"h", Scalar(0)}}, diff, pair.value, config, t));
    t = Clock::now();
    out.push_back(series_check("OH-SHIFT", "odd-harmonic series minus h=0 series vs pi^2/4 - 2 ln 2",
                               {{"h", Scalar(0)}}, diff, zeta2 * 3 / 2 - ln2 * 2, config, t));
  }
  const Rational eps(mpz_class(1), mpz_class(1) << 40);
  out.push_back(derivative_consistency("CAT-INV", "CAT-H", Rational(5, 4), eps, p));
  out.push_back(derivative_consistency("CAT-2N1", "CAT-2N1-H", Rational(3, 2), eps, p));
  out.push_back(derivative_consistency("CB-Z", "OH-Z", Rational(5, 2), eps, p));
  return out;
}

VerificationReport derivative_consistency(std::string_view base_id, std::string_view derived_id,
                                          const Rational& z0, const Rational& eps, int precision_bits) {
  const auto start = Clock::now();
  const Identity& base = find_identity(base_id);
  const Identity& derived = find_identity(derived_id);
  if (derived.derived_from != base.id) {
    throw UsageError(derived.id + " is not the z-derivative form of " + base.id);
  }
  if (eps.sign() <= 0) throw UsageError("eps must be positive");
  if (precision_bits < 64) throw UsageError("precision must be at least 64 bits");
  auto at = [](const Rational& z) { return Params{{"z", Scalar(z)}}; };

  // The closed forms must be analytic on [z0 - eps, z0 + eps]: check the ends
  // and every half-integer inside, where the excluded points live.
  std::vector<Rational> probes{z0 - eps, z0, z0 + eps};
  auto twice_floor = [](const Rational& x) {
    const mpq_class t = 2 * x.value();
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return r;
  };
  const mpz_class hi = twice_floor(z0 + eps);
  for (mpz_class k = twice_floor(z0 - eps); k <= hi; ++k) {
    const Rational q(k, mpz_class(2));
    if (q >= z0 - eps && q <= z0 + eps) probes.push_back(q);
  }
  for (const auto& q : probes) {
    try {
      check_rules(base, at(q));
      check_rules(derived, at(q));
    } catch (const DomainError& err) {
      throw DomainError("z0 ± eps leaves the domain: " + std::string(err.what()));
    }
  }

  const int w = precision_bits + kAccelGuard;
  const PrecisionContext ctx(w, kRhsGuard);
  auto f = [&](const Rational& z) { return base.rhs(at(z), ctx); };
  auto centered = [&](const Rational& h) { return (f(z0 + h) - f(z0 - h)) / (Rational(2) * h).to_bigreal(w); };
  const BigReal fd = centered(eps);
  const BigReal fd_half = centered(eps / Rational(2));
  const BigReal eps2 = (eps * eps).to_bigreal(w);
  // FD(e) = f' + C e^2 + O(e^4)  =>  FD(e) - FD(e/2) = (3/4) C e^2
  const BigReal c = (fd - fd_half) / (eps2 * 3 / 4);
  const BigReal target = harmonic_real(z0.to_bigreal(w), 1, ctx) * f(z0) - derived.rhs(at(z0), ctx);

  VerificationReport rep;
  rep.id = derived.id;
  rep.sample = "d/dz " + base.id + " closed form at z=" + z0.to_string();
  rep.params = at(z0);
  rep.method = "finite-difference";
  rep.lhs = fd.rescale(precision_bits);
  rep.rhs = target.rescale(precision_bits);
  rep.abs_error = (fd - target).abs();
  rep.tolerance = c.abs() * eps2 * 2 + BigReal::one(w).ldexp(-(precision_bits - 48));
  rep.passed = rep.abs_error <= rep.tolerance;
  rep.error_estimate = c.abs() * eps2;
  rep.notes.push_back("eps = " + eps.to_string() + ", estimated C = " + c.rescale(64).to_decimal(6));
  rep.elapsed_ms = millis_since(start);
  return rep;
}

}  // namespace norlund
