#include <utility>

#include "norlund/catalog.hpp"
#include "norlund/errors.hpp"
#include "norlund/specfun.hpp"

namespace norlund {

namespace {

using Ctx = PrecisionContext;
using Weight = TermStream::Weight;

constexpr int kGuard = 32;

Rational frac(long a, long b) { return Rational(a, b); }

// ---- parameter access -----------------------------------------------------

BigReal real_param(const Params& ps, const char* name, const Ctx& c) {
  return param(ps, name).at(c.precision_bits);
}

long int_param(const Params& ps, const char* name) {
  return param(ps, name).exact().numerator().get_si();
}

std::vector<Params> samples_of(const char* name, std::initializer_list<Rational> values) {
  std::vector<Params> out;
  for (const auto& v : values) out.push_back(Params{{name, Scalar(v)}});
  return out;
}

// ---- numeric building blocks ----------------------------------------------

BigReal rat(const Rational& r, const Ctx& c) { return r.to_bigreal(c.precision_bits); }
BigReal add(const BigReal& x, const Rational& r) { return x + r.to_bigreal(x.precision()); }
BigReal pi(const Ctx& c) { return const_pi(c); }
BigReal ln2(const Ctx& c) { return const_ln2(c); }
BigReal zeta2(const Ctx& c) {
  BigReal p = const_pi(c);
  return p * p / 6;
}
BigReal zeta3(const Ctx& c) { return const_zeta3(c); }
BigReal harm(const BigReal& a, int m, const Ctx& c) { return harmonic_real(a, m, c); }
BigReal sqrt_pi(const Ctx& c) { return sqrt(const_pi(c)); }
BigReal golden(const Ctx& c) { return (BigReal::one(c.precision_bits) + sqrt(rat(5, c))) / 2; }

// z / binom(z - 3/2, z - 1) = sqrt(pi) Gamma(z + 1) / Gamma(z - 1/2)
BigReal bz(const BigReal& z, const Ctx& c) {
  return sqrt_pi(c) * gamma_ratio(add(z, 1), add(z, frac(-1, 2)), c);
}

// 1 / binom(z - 1/2, z) = sqrt(pi) Gamma(z + 1) / Gamma(z + 1/2)
BigReal inverse_binom_half(const BigReal& z, const Ctx& c) {
  return sqrt_pi(c) * gamma_ratio(add(z, 1), add(z, frac(1, 2)), c);
}

// ---- exact building blocks ------------------------------------------------

// H_a^(m) as a ConstVector for integer or half-integer a, m <= 3.
std::optional<ConstVector> harmonic_exact(const Rational& a, int m) {
  if (a.is_integer()) {
    const long n = a.numerator().get_si();
    if (n < 0) throw DomainError("harmonic number at a negative integer");
    return harmonic_int_vec(n, m);
  }
  if (!a.is_half_integer()) return std::nullopt;
  const Rational k = a + frac(1, 2);
  if (k.sign() >= 0) return harmonic_half(k.numerator().get_si(), m);
  // H_a = H_{a+1} - 1/(a+1)^m
  auto up = harmonic_exact(a + 1, m);
  return *up - ConstVector((a + 1).pow(m).reciprocal());
}

bool is_half_lattice(const Scalar& s) {
  return s.is_exact() && (s.exact().is_integer() || s.exact().is_half_integer());
}

Rational central(long n) { return Rational(central_binomial(n)); }

// ---- streams --------------------------------------------------------------

TermStream::ValueFn constant(const Rational& r) {
  return [r](int p) { return r.to_bigreal(p); };
}

TermStream fixed_stream(long start, const Rational& first, std::function<Rational(long)> ratio,
                        const Rational& theta) {
  TermStream s;
  s.start_index = start;
  s.first_term_exact = first;
  s.first_term = constant(first);
  s.ratio_exact = std::move(ratio);
  s.theta = Scalar(theta);
  return s;
}

// w_n = H_{n+a} from n = start.
Weight harmonic_weight(const Scalar& a, long start) {
  Weight w;
  const Scalar a0 = a + Rational(start);
  if (a0.is_exact() && a0.exact().is_integer() && a0.exact().sign() >= 0) {
    w.initial_exact = harmonic_int(a0.exact().numerator().get_si());
  }
  w.initial = [a0](int p) { return harmonic_real(a0.at(p), 1, Ctx(p, kGuard)); };
  if (a.is_exact()) {
    w.inc_exact = [q = a.exact()](long n) { return (q + Rational(n)).reciprocal(); };
  } else {
    w.inc_real = [a](long n, int p) {
      return BigReal::one(p) / (a.at(p) + BigReal::from_int(n, p));
    };
  }
  return w;
}

// w_n = O_{n+offset} from n = start.
Weight odd_weight(long offset, long start) {
  Weight w;
  const Rational o = odd_harmonic(start + offset);
  w.initial_exact = o;
  w.initial = constant(o);
  w.inc_exact = [offset](long n) { return Rational(1, 2 * (n + offset) - 1); };
  return w;
}

// ---- domain rules ---------------------------------------------------------

bool negative_integer(const Scalar& s) { return s.is_integer() && s.sign() < 0; }

DomainRule rule(std::string text, const char* name, std::function<bool(const Scalar&)> pred,
                bool from_statement = true) {
  return DomainRule{std::move(text),
                    [name, pred = std::move(pred)](const Params& p) { return pred(param(p, name)); },
                    from_statement};
}

DomainRule not_negative_integer(const char* name, const Rational& shift, std::string text) {
  return rule(std::move(text), name, [shift](const Scalar& s) { return !negative_integer(s + shift); });
}

DomainRule double_not_negative_integer(const char* name) {
  return rule(std::string("2") + name + " ∉ ℤ⁻", name,
              [](const Scalar& s) { return !negative_integer(Rational(2) * s); });
}

DomainRule greater_than(const char* name, const Rational& bound, std::string text,
                        bool from_statement = false) {
  return rule(std::move(text), name, [bound](const Scalar& s) { return s.compare(bound) > 0; },
              from_statement);
}

DomainRule not_equal(const char* name, const Rational& value, std::string text) {
  return rule(std::move(text), name, [value](const Scalar& s) { return !(s == value); });
}

Identity base(std::string id, std::string tag, std::vector<ParamSpec> params) {
  Identity e;
  e.id = std::move(id);
  e.tag = std::move(tag);
  e.params = std::move(params);
  e.tolerance = Rational::parse("1e-10");
  return e;
}

// ===========================================================================
// pi from the reflection formula

Identity pi_cot() {
  Identity e = base("PI-COT",
                    "(k-2)(1 + sum_{n>=1} 1/(n+1) prod_{j=1}^n (kj-(k-2))/(kj+1)) = pi cot(pi/k)",
                    {{"k", ParamKind::integer}});
  e.tolerance = Rational::parse("1e-8");
  e.rules = {greater_than("k", 1, "k ≥ 2", true)};
  e.lhs = [](const Params& ps) {
    const Scalar& k = param(ps, "k");
    const Rational first = k.exact() - 2;
    auto s = TermStream::with_parameter(k, 0, constant(first), first, [](const auto& kk, long n) {
      return lift(kk, n + 1) * (kk * lift(kk, n) + lift(kk, 2)) /
             (lift(kk, n + 2) * (kk * lift(kk, n) + kk + lift(kk, 1)));
    });
    s.theta = Scalar((k.exact() - 1) / k.exact());
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal inv_k = Rational(int_param(ps, "k")).reciprocal().to_bigreal(c.precision_bits);
    return pi(c) * cos_pi(inv_k) / sin_pi(inv_k);
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    if (int_param(ps, "k") == 2) return ConstVector(0);
    return std::nullopt;
  };
  e.default_samples = samples_of("k", {2, 3, 4, 5, 6});
  e.sample_notes = [](const Params& ps) {
    std::vector<std::string> out;
    if (int_param(ps, "k") == 2) out.emplace_back("degenerate: k-2 = 0 and cot(pi/2) = 0");
    return out;
  };
  e.specials.push_back(Special{
      "pi/sqrt(3)", Params{{"k", Scalar(3)}},
      [] {
        return fixed_stream(0, 1, [](long n) { return Rational((n + 1) * (3 * n + 2), (n + 2) * (3 * n + 4)); },
                            frac(2, 3));
      },
      [](const Ctx& c) { return pi(c) / sqrt(rat(3, c)); }, std::nullopt});
  e.specials.push_back(Special{
      "(pi/3) sqrt(alpha^3/sqrt(5)), alpha = (1+sqrt(5))/2", Params{{"k", Scalar(5)}},
      [] {
        return fixed_stream(0, 1, [](long n) { return Rational((n + 1) * (5 * n + 2), (n + 2) * (5 * n + 6)); },
                            frac(4, 5));
      },
      [](const Ctx& c) {
        const BigReal a = golden(c);
        return pi(c) / 3 * sqrt(a * a * a / sqrt(rat(5, c)));
      },
      std::nullopt});
  return e;
}

Identity pi_tan() {
  Identity e = base("PI-TAN", "sum_{n>=0} 2^(n+1)/(n+1) prod_{j=0}^n (2z-j)/(2z-(2j+1)) = -pi tan(pi z)",
                    {{"z", ParamKind::real}});
  e.tolerance = Rational::parse("1e-8");
  e.rules = {greater_than("z", frac(-1, 2), "z > -1/2", true),
             rule("z < 1/2", "z", [](const Scalar& s) { return s.compare(frac(1, 2)) < 0; })};
  e.lhs = [](const Params& ps) {
    const Scalar& z = param(ps, "z");
    std::optional<Rational> first_exact;
    if (z.is_exact()) first_exact = Rational(4) * z.exact() / (Rational(2) * z.exact() - 1);
    auto first = [z](int p) {
      const BigReal zz = z.at(p);
      return zz * 4 / (zz * 2 - BigReal::one(p));
    };
    auto s = TermStream::with_parameter(z, 0, first, first_exact, [](const auto& zz, long n) {
      return lift(zz, 2 * (n + 1)) * (lift(zz, 2) * zz - lift(zz, n + 1)) /
             (lift(zz, n + 2) * (lift(zz, 2) * zz - lift(zz, 2 * n + 3)));
    });
    s.theta = z + frac(1, 2);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    return -(pi(c) * sin_pi(z) / cos_pi(z));
  };
  e.default_samples = samples_of("z", {frac(-1, 3), 0, frac(1, 10)});
  auto special = [](Rational z, std::string label, long a, long b, long c2, long d,
                    std::function<BigReal(const Ctx&)> rhs) {
    // ratio 2(n+1)(a n + b)/((n+2)(c n + d))
    return Special{std::move(label), Params{{"z", Scalar(z)}},
                   [z, a, b, c2, d] {
                     return fixed_stream(
                         0, 1,
                         [a, b, c2, d](long n) { return Rational(2 * (n + 1) * (a * n + b), (n + 2) * (c2 * n + d)); },
                         z + frac(1, 2));
                   },
                   std::move(rhs), std::nullopt};
  };
  e.specials.push_back(special(frac(1, 4), "pi/2", 2, 1, 4, 5, [](const Ctx& c) { return pi(c) / 2; }));
  e.specials.push_back(special(frac(1, 3), "sqrt(3) pi/4", 3, 1, 6, 7,
                               [](const Ctx& c) { return sqrt(rat(3, c)) * pi(c) / 4; }));
  e.specials.push_back(special(frac(1, 5), "(3 pi/4) sqrt(sqrt(5)/alpha^3), alpha = (1+sqrt(5))/2", 5, 3,
                               10, 13, [](const Ctx& c) {
                                 const BigReal a = golden(c);
                                 return pi(c) * 3 / 4 * sqrt(sqrt(rat(5, c)) / (a * a * a));
                               }));
  return e;
}

// ===========================================================================
// Catalan numbers against binom(n + z, n)

std::vector<DomainRule> catalan_inverse_rules() {
  return {not_equal("z", 0, "z ≠ 0"), not_negative_integer("z", 0, "z ∉ ℤ⁻"),
          double_not_negative_integer("z"), greater_than("z", frac(-1, 2), "z > -1/2")};
}

std::vector<DomainRule> catalan_shifted_rules() {
  return {not_negative_integer("z", frac(-3, 2), "z - 3/2 ∉ ℤ⁻"),
          greater_than("z", frac(1, 2), "z > 1/2")};
}

// C_n / (4^n binom(n+z, n)): t0 = 1.
TermStream catalan_inverse_stream(const Scalar& z) {
  auto s = TermStream::with_parameter(z, 0, constant(1), Rational(1), [](const auto& zz, long n) {
    return lift(zz, (2 * n + 1) * (n + 1)) / (lift(zz, 2 * (n + 2)) * (zz + lift(zz, n + 1)));
  });
  s.theta = z + frac(1, 2);
  return s;
}

// (2n+1) C_n / (4^n binom(n+z, n)): t0 = 1.
TermStream catalan_odd_stream(const Scalar& z) {
  auto s = TermStream::with_parameter(z, 0, constant(1), Rational(1), [](const auto& zz, long n) {
    return lift(zz, (2 * n + 3) * (n + 1)) / (lift(zz, 2 * (n + 2)) * (zz + lift(zz, n + 1)));
  });
  s.theta = z + frac(-1, 2);
  return s;
}

// n C_n / (4^n binom(n+z, n)) from n = 1: t1 = 1/(4(1+z)).
TermStream catalan_n_stream(const Scalar& z) {
  std::optional<Rational> first_exact;
  if (z.is_exact()) first_exact = (Rational(4) * (z.exact() + 1)).reciprocal();
  auto first = [z](int p) { return BigReal::one(p) / ((z.at(p) + BigReal::one(p)) * 4); };
  auto s = TermStream::with_parameter(z, 1, first, first_exact, [](const auto& zz, long n) {
    return lift(zz, (2 * n + 1) * (n + 1) * (n + 1)) /
           (lift(zz, 2 * n * (n + 2)) * (zz + lift(zz, n + 1)));
  });
  s.theta = z + frac(-1, 2);
  return s;
}

TermStream catalan_fixed(long start, const Rational& first, long num_a, long num_b, long shift,
                         const Rational& theta) {
  // ratio (num_a n + num_b)(n+1) / (2(n+2)(n+shift))
  return fixed_stream(start, first,
                      [num_a, num_b, shift](long n) {
                        return Rational((num_a * n + num_b) * (n + 1), 2 * (n + 2) * (n + shift));
                      },
                      theta);
}

Identity cat_inv() {
  Identity e = base("CAT-INV", "sum_{n>=0} C_n/(4^n binom(n+z,n)) = -2z(H_{z-1} - H_{z-1/2})",
                    {{"z", ParamKind::real}});
  e.rules = catalan_inverse_rules();
  e.lhs = [](const Params& ps) { return catalan_inverse_stream(param(ps, "z")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    return -2 * z * (harm(add(z, -1), 1, c) - harm(add(z, frac(-1, 2)), 1, c));
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const Scalar& z = param(ps, "z");
    if (!is_half_lattice(z)) return std::nullopt;
    const Rational q = z.exact();
    return (*harmonic_exact(q - 1, 1) - *harmonic_exact(q - frac(1, 2), 1)) * (Rational(-2) * q);
  };
  e.default_samples = samples_of("z", {frac(1, 2), 1, frac(3, 2), 2, frac(5, 2)});
  e.specials.push_back(Special{"4(1 - ln 2)", Params{{"z", Scalar(1)}},
                               [] { return catalan_fixed(0, 1, 2, 1, 2, frac(3, 2)); },
                               [](const Ctx& c) { return (BigReal::one(c.precision_bits) - ln2(c)) * 4; },
                               ConstVector(4, -4)});
  e.specials.push_back(Special{"10/3 - 4 ln 2", Params{{"z", Scalar(2)}},
                               [] { return catalan_fixed(0, frac(1, 2), 2, 1, 3, frac(5, 2)); },
                               [](const Ctx& c) { return rat(frac(10, 3), c) - ln2(c) * 4; },
                               ConstVector(frac(10, 3), -4)});
  return e;
}

Identity cat_h() {
  Identity e = base("CAT-H",
                    "sum_{n>=0} C_n H_{n+z}/(4^n binom(n+z,n)) = 2(H_{z-1} - H_{z-1/2})(1 - z H_z) "
                    "+ 2z(H^(2)_{z-1/2} - H^(2)_{z-1})",
                    {{"z", ParamKind::real}});
  e.rules = catalan_inverse_rules();
  e.derived_from = "CAT-INV";
  e.lhs = [](const Params& ps) {
    const Scalar& z = param(ps, "z");
    auto s = catalan_inverse_stream(z);
    s.weight = harmonic_weight(z, 0);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal zm1 = add(z, -1);
    const BigReal zmh = add(z, frac(-1, 2));
    const BigReal d1 = harm(zm1, 1, c) - harm(zmh, 1, c);
    const BigReal d2 = harm(zmh, 2, c) - harm(zm1, 2, c);
    return 2 * d1 * (BigReal::one(c.precision_bits) - z * harm(z, 1, c)) + 2 * z * d2;
  };
  e.default_samples = samples_of("z", {frac(1, 2), 1, frac(3, 2), 2, frac(5, 2)});
  e.specials.push_back(Special{
      "pi^2/6 (odd harmonic form: sum O_{n+1}/((n+1)(2n+1)))", Params{{"z", Scalar(frac(1, 2))}},
      [] {
        auto s = fixed_stream(0, 1, [](long n) { return Rational((n + 1) * (2 * n + 1), (n + 2) * (2 * n + 3)); },
                              1);
        s.weight = odd_weight(1, 0);
        return s;
      },
      [](const Ctx& c) { return zeta2(c); }, ConstVector::zeta2()});
  e.specials.push_back(Special{"8 - 2 pi^2/3", Params{{"z", Scalar(1)}},
                               [] {
                                 auto s = catalan_fixed(0, 1, 2, 1, 2, frac(3, 2));
                                 s.weight = harmonic_weight(Scalar(1), 0);
                                 return s;
                               },
                               [](const Ctx& c) { return rat(8, c) - zeta2(c) * 4; }, ConstVector(8, 0, -4)});
  return e;
}

Identity cat_2n1() {
  Identity e = base("CAT-2N1", "sum_{n>=0} (2n+1) C_n/(4^n binom(n+z,n)) = 2z(H_{z-1} - H_{z-3/2})",
                    {{"z", ParamKind::real}});
  e.rules = catalan_shifted_rules();
  e.lhs = [](const Params& ps) { return catalan_odd_stream(param(ps, "z")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    return 2 * z * (harm(add(z, -1), 1, c) - harm(add(z, frac(-3, 2)), 1, c));
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const Scalar& z = param(ps, "z");
    if (!is_half_lattice(z)) return std::nullopt;
    const Rational q = z.exact();
    return (*harmonic_exact(q - 1, 1) - *harmonic_exact(q - frac(3, 2), 1)) * (Rational(2) * q);
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  e.specials.push_back(Special{"4 ln 2", Params{{"z", Scalar(1)}},
                               [] { return catalan_fixed(0, 1, 2, 3, 2, frac(1, 2)); },
                               [](const Ctx& c) { return ln2(c) * 4; }, ConstVector(0, 4)});
  e.specials.push_back(Special{"4 ln 2 - 2", Params{{"z", Scalar(2)}},
                               [] { return catalan_fixed(0, frac(1, 2), 2, 3, 3, frac(3, 2)); },
                               [](const Ctx& c) { return ln2(c) * 4 - rat(2, c); }, ConstVector(-2, 4)});
  return e;
}

Identity cat_n() {
  Identity e = base("CAT-N",
                    "sum_{n>=0} n C_n/(4^n binom(n+z,n)) = 2z H_{z-1} - z(H_{z-1/2} + H_{z-3/2})",
                    {{"z", ParamKind::real}});
  e.rules = catalan_shifted_rules();
  e.lhs = [](const Params& ps) { return catalan_n_stream(param(ps, "z")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    return 2 * z * harm(add(z, -1), 1, c) -
           z * (harm(add(z, frac(-1, 2)), 1, c) + harm(add(z, frac(-3, 2)), 1, c));
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const Scalar& z = param(ps, "z");
    if (!is_half_lattice(z)) return std::nullopt;
    const Rational q = z.exact();
    return *harmonic_exact(q - 1, 1) * (Rational(2) * q) -
           (*harmonic_exact(q - frac(1, 2), 1) + *harmonic_exact(q - frac(3, 2), 1)) * q;
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  e.specials.push_back(Special{
      "4 ln 2 - 2 (sum n C_n/((n+1) 4^n))", Params{{"z", Scalar(1)}},
      [] {
        return fixed_stream(1, frac(1, 8),
                            [](long n) { return Rational((n + 1) * (n + 1) * (2 * n + 1), 2 * n * (n + 2) * (n + 2)); },
                            frac(1, 2));
      },
      [](const Ctx& c) { return ln2(c) * 4 - rat(2, c); }, ConstVector(-2, 4)});
  return e;
}

Identity cat_2n1_h() {
  Identity e = base("CAT-2N1-H",
                    "sum_{n>=0} (2n+1) C_n H_{n+z}/(4^n binom(n+z,n)) = 2(z H_z - 1)(H_{z-1} - H_{z-3/2}) "
                    "+ 2z(H^(2)_{z-1} - H^(2)_{z-3/2})",
                    {{"z", ParamKind::real}});
  e.rules = catalan_shifted_rules();
  e.derived_from = "CAT-2N1";
  e.lhs = [](const Params& ps) {
    const Scalar& z = param(ps, "z");
    auto s = catalan_odd_stream(z);
    s.weight = harmonic_weight(z, 0);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal a = add(z, -1);
    const BigReal b = add(z, frac(-3, 2));
    return 2 * (z * harm(z, 1, c) - BigReal::one(c.precision_bits)) * (harm(a, 1, c) - harm(b, 1, c)) +
           2 * z * (harm(a, 2, c) - harm(b, 2, c));
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  e.specials.push_back(Special{"2 pi^2/3", Params{{"z", Scalar(1)}},
                               [] {
                                 auto s = catalan_fixed(0, 1, 2, 3, 2, frac(1, 2));
                                 s.weight = harmonic_weight(Scalar(1), 0);
                                 return s;
                               },
                               [](const Ctx& c) { return zeta2(c) * 4; }, ConstVector(0, 0, 4)});
  e.specials.push_back(Special{"2 pi^2/3 + 4 ln 2 - 8", Params{{"z", Scalar(2)}},
                               [] {
                                 auto s = catalan_fixed(0, frac(1, 2), 2, 3, 3, frac(3, 2));
                                 s.weight = harmonic_weight(Scalar(2), 0);
                                 return s;
                               },
                               [](const Ctx& c) { return zeta2(c) * 4 + ln2(c) * 4 - rat(8, c); },
                               ConstVector(-8, 4, 4)});
  e.specials.push_back(Special{
      "4 - 2 ln 2 - pi^2/6 (sum O_{n+2}/((n+1)(2n+3)))", Params{{"z", Scalar(frac(3, 2))}},
      [] {
        auto s = fixed_stream(0, frac(1, 3),
                              [](long n) { return Rational((n + 1) * (2 * n + 3), (n + 2) * (2 * n + 5)); }, 1);
        s.weight = odd_weight(2, 0);
        return s;
      },
      [](const Ctx& c) { return rat(4, c) - ln2(c) * 2 - zeta2(c); }, ConstVector(4, -2, -1)});
  return e;
}

Identity cat_n_h() {
  Identity e = base("CAT-N-H",
                    "sum_{n>=0} n C_n H_{n+z}/(4^n binom(n+z,n)) = (z H_z - 1)(2H_{z-1} - H_{z-1/2} - H_{z-3/2}) "
                    "+ z(2H^(2)_{z-1} - H^(2)_{z-1/2} - H^(2)_{z-3/2})",
                    {{"z", ParamKind::real}});
  e.rules = catalan_shifted_rules();
  e.derived_from = "CAT-N";
  e.lhs = [](const Params& ps) {
    const Scalar& z = param(ps, "z");
    auto s = catalan_n_stream(z);
    s.weight = harmonic_weight(z, 1);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal a = add(z, -1);
    const BigReal b = add(z, frac(-1, 2));
    const BigReal d = add(z, frac(-3, 2));
    return (z * harm(z, 1, c) - BigReal::one(c.precision_bits)) *
               (2 * harm(a, 1, c) - harm(b, 1, c) - harm(d, 1, c)) +
           z * (2 * harm(a, 2, c) - harm(b, 2, c) - harm(d, 2, c));
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  e.specials.push_back(Special{
      "2 pi^2/3 - 4", Params{{"z", Scalar(1)}},
      [] {
        auto s = fixed_stream(1, frac(1, 8),
                              [](long n) { return Rational((n + 1) * (n + 1) * (2 * n + 1), 2 * n * (n + 2) * (n + 2)); },
                              frac(1, 2));
        s.weight = harmonic_weight(Scalar(1), 1);
        return s;
      },
      [](const Ctx& c) { return zeta2(c) * 4 - rat(4, c); }, ConstVector(-4, 0, 4)});
  e.specials.push_back(Special{
      "13/4 - 2 ln 2 - pi^2/6 (sum n O_{n+2}/((n+1)(2n+1)(2n+3)))", Params{{"z", Scalar(frac(3, 2))}},
      [] {
        auto s = fixed_stream(1, frac(1, 30),
                              [](long n) { return Rational((n + 1) * (n + 1) * (2 * n + 1), n * (n + 2) * (2 * n + 5)); },
                              1);
        s.weight = odd_weight(2, 1);
        return s;
      },
      [](const Ctx& c) { return rat(frac(13, 4), c) - ln2(c) * 2 - zeta2(c); }, ConstVector(frac(13, 4), -2, -1)});
  return e;
}

// ===========================================================================
// Central binomial series from z = 1/2

// 4^n / (C(2n+2, n+1)(n+1)^2): the h -> 0 limit and the m = 1 case.
TermStream pi_squared_over_8_stream() {
  return fixed_stream(0, frac(1, 2),
                      [](long n) { return Rational(2 * (n + 1) * (n + 1), (2 * n + 3) * (n + 2)); }, frac(1, 2));
}

Identity cb_inv() {
  Identity e = base("CB-INV",
                    "sum_{n>=0} 4^n/(binom(n,h) C(2n+2,n+1)(n+1)^2) = (pi/4)(H_{h-1/2} - H_{-1/2})/sin(pi h)",
                    {{"h", ParamKind::real}});
  e.rules = {rule("h ∉ ℤ", "h", [](const Scalar& s) { return !s.is_integer(); }),
             double_not_negative_integer("h"), greater_than("h", frac(-1, 2), "h > -1/2")};
  e.lhs = [](const Params& ps) {
    const Scalar& h = param(ps, "h");
    // 1/binom(0, h) = pi h / sin(pi h)
    auto first = [h](int p) {
      const Ctx c(p, kGuard);
      const BigReal hh = h.at(p);
      return pi(c) * hh / (sin_pi(hh) * 2);
    };
    auto s = TermStream::with_parameter(h, 0, first, std::nullopt, [](const auto& hh, long n) {
      return lift(hh, 2) * (lift(hh, n + 1) - hh) * lift(hh, n + 1) / lift(hh, (2 * n + 3) * (n + 2));
    });
    s.theta = h + frac(1, 2);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal h = real_param(ps, "h", c);
    return pi(c) / 4 * (harm(add(h, frac(-1, 2)), 1, c) + ln2(c) * 2) / sin_pi(h);
  };
  e.conditioning = [](const Params& ps, int precision) {
    const BigReal s = sin_pi(param(ps, "h").at(precision + 64)).abs();
    if (s < BigReal::one(precision + 64).ldexp(-(precision / 2))) {
      throw IllConditioned("|sin(pi h)| < 2^-" + std::to_string(precision / 2) +
                           "; h is too close to an integer for this precision");
    }
  };
  e.default_samples = samples_of("h", {frac(1, 4), frac(1, 3), frac(3, 2), frac(5, 2), frac(-1, 3)});
  e.specials.push_back(Special{"pi^2/8 (limit h -> 0)", Params{{"h", Scalar(0)}}, pi_squared_over_8_stream,
                               [](const Ctx& c) {
                                 return polygamma(PolyOrder(1), rat(frac(1, 2), c), c) / 4;
                               },
                               ConstVector(0, 0, frac(3, 4))});
  e.specials.push_back(Special{
      "2 ln 2 (sum 1/((2n+1)(n+1)))", Params{{"h", Scalar(frac(1, 2))}},
      [] {
        return fixed_stream(0, 1, [](long n) { return Rational((2 * n + 1) * (n + 1), (2 * n + 3) * (n + 2)); }, 1);
      },
      [](const Ctx& c) { return ln2(c) * 2; }, ConstVector(0, 2)});
  e.notes.emplace_back("nonzero integer h is excluded; h = 0 is the L'Hospital limit pi^2/8");
  return e;
}

// Terms with n >= h of the shifted central-binomial series; index m = n - h.
TermStream shifted_stream(long h) {
  const Rational first =
      (Rational(central_binomial(h + 1)) * Rational((h + 1) * (h + 1))).reciprocal();
  return fixed_stream(h, first,
                      [h](long n) {
                        const long m = n - h;
                        return Rational((2 * m + 1) * (n + 1), (2 * n + 3) * (n + 2));
                      },
                      Rational(h + 1));
}

// sum_{n<h} (-1)^(n-h) binom(h,n) / (C(2(h-n), h-n) C(2n+2, n+1)(n+1)^2) * weight(n)
Rational shifted_head(long h, const std::function<Rational(long)>& weight) {
  Rational total = 0;
  for (long n = 0; n < h; ++n) {
    const long sign = (h - n) % 2 == 0 ? 1 : -1;
    Rational t = Rational(binomial(h, n)) /
                 (central(h - n) * central(n + 1) * Rational((n + 1) * (n + 1)));
    total += t * Rational(sign) * weight(n);
  }
  return total;
}

std::vector<DomainRule> nonnegative_h() { return {greater_than("h", -1, "h ≥ 0", true)}; }

Identity cb_shift() {
  Identity e = base("CB-SHIFT",
                    "sum_{n>=h} C(2(n-h),n-h)/(binom(n,h) C(2n+2,n+1)(n+1)^2) = (-1)^h (H_h + 2 ln 2)/((h+1) "
                    "C(2h+2,h+1)) - sum_{n<h} (-1)^(n-h) binom(h,n)/(C(2(h-n),h-n) C(2n+2,n+1)(n+1)^2)",
                    {{"h", ParamKind::integer}});
  e.rules = nonnegative_h();
  e.lhs = [](const Params& ps) { return shifted_stream(int_param(ps, "h")); };
  e.correction = [](const Params& ps) -> std::optional<ConstVector> {
    return ConstVector(shifted_head(int_param(ps, "h"), [](long) { return Rational(1); }));
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const long h = int_param(ps, "h");
    const Rational d = Rational(h + 1) * central(h + 1);
    BigReal v = harm(BigReal::from_int(h, c.precision_bits), 1, c) + ln2(c) * 2;
    v = v / d.to_bigreal(c.precision_bits);
    return h % 2 == 0 ? v : -v;
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const long h = int_param(ps, "h");
    const Rational cf = Rational(h % 2 == 0 ? 1 : -1) / (Rational(h + 1) * central(h + 1));
    return ConstVector(cf * harmonic_int(h), Rational(2) * cf);
  };
  e.default_samples = samples_of("h", {0, 1, 2, 3});
  e.notes.emplace_back("finite sum over n < h is added exactly to the accelerated tail");
  return e;
}

Identity oh_shift() {
  Identity e = base("OH-SHIFT",
                    "sum_{n>=h} C(2(n-h),n-h) O_{n-h}/(binom(n,h) C(2n+2,n+1)(n+1)^2) = -(-1)^h (zeta(2) - "
                    "H^(2)_h)/(2D) + (-1)^h (H_h + 2 ln 2) O_{h+1}/D - sum_{n<h} (-1)^(n-h) binom(h,n) O_{h-n}/"
                    "(C(2(h-n),h-n) C(2n+2,n+1)(n+1)^2), D = (h+1) C(2h+2,h+1)",
                    {{"h", ParamKind::integer}});
  e.rules = nonnegative_h();
  e.lhs = [](const Params& ps) {
    const long h = int_param(ps, "h");
    auto s = shifted_stream(h);
    s.weight = odd_weight(-h, h);
    return s;
  };
  e.correction = [](const Params& ps) -> std::optional<ConstVector> {
    const long h = int_param(ps, "h");
    return ConstVector(shifted_head(h, [h](long n) { return odd_harmonic(h - n); }));
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const long h = int_param(ps, "h");
    const int p = c.precision_bits;
    const BigReal d = (Rational(h + 1) * central(h + 1)).to_bigreal(p);
    const BigReal hh = BigReal::from_int(h, p);
    BigReal v = -(zeta2(c) - harm(hh, 2, c)) / (d * 2) +
                (harm(hh, 1, c) + ln2(c) * 2) * odd_harmonic(h + 1).to_bigreal(p) / d;
    return h % 2 == 0 ? v : -v;
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const long h = int_param(ps, "h");
    const Rational s(h % 2 == 0 ? 1 : -1);
    const Rational d = Rational(h + 1) * central(h + 1);
    const Rational o = odd_harmonic(h + 1);
    return ConstVector(s * harmonic_int(h, 2) / (Rational(2) * d) + s * harmonic_int(h) * o / d,
                       Rational(2) * s * o / d, -s / (Rational(2) * d));
  };
  e.default_samples = samples_of("h", {0, 1, 2, 3});
  e.sample_notes = [](const Params& ps) {
    std::vector<std::string> out;
    if (int_param(ps, "h") > 0) {
      out.emplace_back("finite sum uses O_{h-n}; the form with O_{n-h} agrees since O_{-k} = O_k");
    }
    return out;
  };
  e.specials.push_back(Special{
      "-pi^2/12 + 2 ln 2 (sum O_n/((n+1)(2n+1)))", Params{{"h", Scalar(0)}},
      [] {
        auto s = fixed_stream(0, 1, [](long n) { return Rational((n + 1) * (2 * n + 1), (n + 2) * (2 * n + 3)); }, 1);
        s.weight = odd_weight(0, 0);
        return s;
      },
      [](const Ctx& c) { return ln2(c) * 2 - zeta2(c) / 2; }, ConstVector(0, 2, frac(-1, 2))});
  e.specials.push_back(Special{
      "pi^2/4 - 2 ln 2 (sum 1/((n+1)(2n+1)^2))", Params{{"h", Scalar(0)}},
      [] {
        return fixed_stream(
            0, 1,
            [](long n) { return Rational((n + 1) * (2 * n + 1) * (2 * n + 1), (n + 2) * (2 * n + 3) * (2 * n + 3)); }, 2);
      },
      [](const Ctx& c) { return zeta2(c) * 3 / 2 - ln2(c) * 2; }, ConstVector(0, -2, frac(3, 2))});
  e.specials.push_back(Special{
      "pi^2/36 - (8/9) ln 2 + 7/18 (sum O_{n-1}/((n+1)(2n+1)(2n-1)))", Params{{"h", Scalar(1)}},
      [] {
        auto s = fixed_stream(1, frac(1, 6),
                              [](long n) { return Rational((n + 1) * (2 * n - 1), (n + 2) * (2 * n + 3)); }, 2);
        s.weight = odd_weight(-1, 1);
        return s;
      },
      [](const Ctx& c) { return zeta2(c) / 6 - ln2(c) * 8 / 9 + rat(frac(7, 18), c); },
      ConstVector(frac(7, 18), frac(-8, 9), frac(1, 6))});
  return e;
}

// ===========================================================================
// Series with binom(n + m, m) C(2(n+m), n+m) in the denominator

std::vector<DomainRule> positive_m() { return {greater_than("m", 0, "m ≥ 1", true)}; }

// 4^n / ((n+1) binom(n+m, m) C(2(n+m), n+m))
TermStream cb_m_stream(long m) {
  return fixed_stream(0, central(m).reciprocal(),
                      [m](long n) { return Rational(2 * (n + 1) * (n + 1), (n + 2) * (2 * n + 2 * m + 1)); },
                      Rational(2 * m - 1, 2));
}

// C_n / (binom(n+m, n) C(2(n+m), n+m))
TermStream cat_ctr_stream(long m) {
  return fixed_stream(0, central(m).reciprocal(),
                      [m](long n) { return Rational((2 * n + 1) * (n + 1), (n + 2) * (2 * n + 2 * m + 1)); },
                      Rational(m));
}

// m / (4 C(2(m-1), m-1))
Rational m_prefactor(long m) { return Rational(m) / (Rational(4) * central(m - 1)); }

Identity cb_m() {
  Identity e = base("CB-M",
                    "sum_{n>=0} 4^n/((n+1) binom(n+m,m) C(2(n+m),n+m)) = (m/4)(3 zeta(2) - 4 O^(2)_{m-1})/"
                    "C(2(m-1),m-1)",
                    {{"m", ParamKind::integer}});
  e.rules = positive_m();
  e.lhs = [](const Params& ps) { return cb_m_stream(int_param(ps, "m")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const long m = int_param(ps, "m");
    return (zeta2(c) * 3 - odd_harmonic(m - 1, 2).to_bigreal(c.precision_bits) * 4) *
           m_prefactor(m).to_bigreal(c.precision_bits);
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const long m = int_param(ps, "m");
    const Rational k = m_prefactor(m);
    return ConstVector(Rational(-4) * k * odd_harmonic(m - 1, 2), 0, Rational(3) * k);
  };
  e.default_samples = samples_of("m", {1, 2, 3, 5});
  e.specials.push_back(Special{"pi^2/8", Params{{"m", Scalar(1)}}, pi_squared_over_8_stream,
                               [](const Ctx& c) {
                                 const BigReal p = pi(c);
                                 return p * p / 8;
                               },
                               ConstVector(0, 0, frac(3, 4))});
  return e;
}

Identity oh_m() {
  Identity e = base("OH-M",
                    "sum_{n>=0} 4^n O_{n+m}/((n+1) binom(n+m,m) C(2(n+m),n+m)) = (m/4) C(2(m-1),m-1)^-1 "
                    "(7 zeta(3) - 8 O^(3)_{m-1} + O_{m-1}(3 zeta(2) - 4 O^(2)_{m-1}))",
                    {{"m", ParamKind::integer}});
  e.rules = positive_m();
  e.lhs = [](const Params& ps) {
    const long m = int_param(ps, "m");
    auto s = cb_m_stream(m);
    s.weight = odd_weight(m, 0);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const long m = int_param(ps, "m");
    const int p = c.precision_bits;
    const BigReal o1 = odd_harmonic(m - 1).to_bigreal(p);
    const BigReal o2 = odd_harmonic(m - 1, 2).to_bigreal(p);
    const BigReal o3 = odd_harmonic(m - 1, 3).to_bigreal(p);
    return (zeta3(c) * 7 - o3 * 8 + o1 * (zeta2(c) * 3 - o2 * 4)) * m_prefactor(m).to_bigreal(p);
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const long m = int_param(ps, "m");
    const Rational k = m_prefactor(m);
    const Rational o1 = odd_harmonic(m - 1);
    return ConstVector(k * (Rational(-8) * odd_harmonic(m - 1, 3) - Rational(4) * o1 * odd_harmonic(m - 1, 2)),
                       0, Rational(3) * k * o1, Rational(7) * k);
  };
  e.default_samples = samples_of("m", {1, 2, 3, 5});
  e.specials.push_back(Special{"7 zeta(3)/4", Params{{"m", Scalar(1)}},
                               [] {
                                 auto s = pi_squared_over_8_stream();
                                 s.weight = odd_weight(1, 0);
                                 return s;
                               },
                               [](const Ctx& c) { return zeta3(c) * 7 / 4; }, ConstVector(0, 0, 0, frac(7, 4))});
  return e;
}

Identity cat_ctr() {
  Identity e = base("CAT-CTR",
                    "sum_{n>=0} C_n/(binom(n+m,n) C(2(n+m),n+m)) = (m/2)(H_{m-1} - 2 O_{m-1} + 2 ln 2)/"
                    "C(2(m-1),m-1)",
                    {{"m", ParamKind::integer}});
  e.rules = positive_m();
  e.lhs = [](const Params& ps) { return cat_ctr_stream(int_param(ps, "m")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const long m = int_param(ps, "m");
    const int p = c.precision_bits;
    const BigReal hm = harm(BigReal::from_int(m - 1, p), 1, c);
    return (hm - odd_harmonic(m - 1).to_bigreal(p) * 2 + ln2(c) * 2) * 2 * m_prefactor(m).to_bigreal(p);
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const long m = int_param(ps, "m");
    const Rational k = Rational(2) * m_prefactor(m);
    return ConstVector(k * (harmonic_int(m - 1) - Rational(2) * odd_harmonic(m - 1)), Rational(2) * k);
  };
  e.default_samples = samples_of("m", {1, 2, 3, 5});
  return e;
}

Identity cat_oh() {
  Identity e = base("CAT-OH",
                    "sum_{n>=0} C_n O_{n+m}/(binom(n+m,m) C(2(n+m),n+m)) = (m/4) C(2(m-1),m-1)^-1 (H^(2)_{m-1} "
                    "+ 2 zeta(2) - 4 O^(2)_{m-1} + 2 O_{m-1}(H_{m-1} - 2 O_{m-1} + 2 ln 2))",
                    {{"m", ParamKind::integer}});
  e.rules = positive_m();
  e.lhs = [](const Params& ps) {
    const long m = int_param(ps, "m");
    auto s = cat_ctr_stream(m);
    s.weight = odd_weight(m, 0);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const long m = int_param(ps, "m");
    const int p = c.precision_bits;
    const BigReal mm = BigReal::from_int(m - 1, p);
    const BigReal o1 = odd_harmonic(m - 1).to_bigreal(p);
    const BigReal o2 = odd_harmonic(m - 1, 2).to_bigreal(p);
    const BigReal inner = harm(mm, 1, c) - o1 * 2 + ln2(c) * 2;
    return (harm(mm, 2, c) + zeta2(c) * 2 - o2 * 4 + o1 * 2 * inner) * m_prefactor(m).to_bigreal(p);
  };
  e.rhs_exact = [](const Params& ps) -> std::optional<ConstVector> {
    const long m = int_param(ps, "m");
    const Rational k = m_prefactor(m);
    const Rational o1 = odd_harmonic(m - 1);
    const Rational one = harmonic_int(m - 1, 2) - Rational(4) * odd_harmonic(m - 1, 2) +
                         Rational(2) * o1 * (harmonic_int(m - 1) - Rational(2) * o1);
    return ConstVector(k * one, Rational(4) * k * o1, Rational(2) * k);
  };
  e.default_samples = samples_of("m", {1, 2, 3, 5});
  return e;
}

// ===========================================================================
// Fractional-z forms

std::vector<DomainRule> fractional_z_rules(const Rational& lower, std::string lower_text) {
  return {not_negative_integer("z", 0, "z ∉ ℤ⁻"), double_not_negative_integer("z"),
          not_equal("z", 0, "z ≠ 0"), not_equal("z", frac(1, 2), "z ≠ 1/2"),
          greater_than("z", lower, std::move(lower_text))};
}

// first term 1/binom(z - 1/2, z), exact for integer z: 4^z / C(2z, z)
TermStream fractional_stream(const Scalar& z, bool catalan) {
  std::optional<Rational> first_exact;
  if (z.is_exact() && z.exact().is_integer() && z.exact().sign() >= 0) {
    const long k = z.exact().numerator().get_si();
    first_exact = Rational(4).pow(k) / central(k);
  }
  auto first = [z](int p) { return inverse_binom_half(z.at(p), Ctx(p, kGuard)); };
  TermStream s;
  if (catalan) {
    s = TermStream::with_parameter(z, 0, first, first_exact, [](const auto& zz, long n) {
      return lift(zz, (2 * n + 1) * (n + 1)) /
             (lift(zz, 2 * (n + 2)) * (zz + lift(zz, Rational(2 * n + 1, 2))));
    });
    s.theta = z;
  } else {
    s = TermStream::with_parameter(z, 0, first, first_exact, [](const auto& zz, long n) {
      return lift(zz, (n + 1) * (n + 1)) / (lift(zz, n + 2) * (zz + lift(zz, Rational(2 * n + 1, 2))));
    });
    s.theta = z + frac(-1, 2);
  }
  return s;
}

Identity cb_z() {
  Identity e = base("CB-Z",
                    "sum_{n>=0} 1/((n+1) binom(n+z,z) binom(n+z-1/2,n+z)) = z/binom(z-3/2,z-1) (zeta(2) - "
                    "H^(2)_{z-3/2})",
                    {{"z", ParamKind::real}});
  e.rules = fractional_z_rules(frac(1, 2), "z > 1/2");
  e.lhs = [](const Params& ps) { return fractional_stream(param(ps, "z"), false); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    return bz(z, c) * (zeta2(c) - harm(add(z, frac(-3, 2)), 2, c));
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  return e;
}

Identity oh_z() {
  Identity e = base("OH-Z",
                    "sum_{n>=0} H_{n+z-1/2}/((n+1) binom(n+z-1/2,n+z) binom(n+z,z)) = B (zeta(2) - "
                    "H^(2)_{z-3/2})(H_{z-3/2} - H_{z-1}) + 2B (zeta(3) - H^(3)_{z-3/2}) + B H_{z-1} (zeta(2) - "
                    "H^(2)_{z-3/2}), B = z/binom(z-3/2,z-1)",
                    {{"z", ParamKind::real}});
  e.rules = fractional_z_rules(frac(1, 2), "z > 1/2");
  e.derived_from = "CB-Z";
  e.lhs = [](const Params& ps) {
    const Scalar& z = param(ps, "z");
    auto s = fractional_stream(z, false);
    s.weight = harmonic_weight(z + frac(-1, 2), 0);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal a = add(z, frac(-3, 2));
    const BigReal b = add(z, -1);
    const BigReal z2 = zeta2(c) - harm(a, 2, c);
    const BigReal hb = harm(b, 1, c);
    return bz(z, c) * (z2 * (harm(a, 1, c) - hb) + 2 * (zeta3(c) - harm(a, 3, c)) + hb * z2);
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  return e;
}

Identity cat_ctr_z() {
  Identity e = base("CAT-CTR-Z",
                    "sum_{n>=0} binom(n-1/2,n)/((n+1) binom(n+z-1/2,n+z) binom(n+z,z)) = 2z/binom(z-3/2,z-1) "
                    "(H_{z-1} - H_{z-3/2})",
                    {{"z", ParamKind::real}});
  e.rules = fractional_z_rules(0, "z > 0");
  e.lhs = [](const Params& ps) { return fractional_stream(param(ps, "z"), true); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    return 2 * bz(z, c) * (harm(add(z, -1), 1, c) - harm(add(z, frac(-3, 2)), 1, c));
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  return e;
}

Identity cat_oh_z() {
  Identity e = base("CAT-OH-Z",
                    "sum_{n>=0} binom(n-1/2,n) H_{n+z-1/2}/((n+1) binom(n+z-1/2,n+z) binom(n+z,z)) = 2B "
                    "(H^(2)_{z-1} - H^(2)_{z-3/2} - (H_{z-1} - H_{z-3/2})^2) + 2B H_{z-1} (H_{z-1} - H_{z-3/2}), "
                    "B = z/binom(z-3/2,z-1)",
                    {{"z", ParamKind::real}});
  e.rules = fractional_z_rules(0, "z > 0");
  e.derived_from = "CAT-CTR-Z";
  e.lhs = [](const Params& ps) {
    const Scalar& z = param(ps, "z");
    auto s = fractional_stream(z, true);
    s.weight = harmonic_weight(z + frac(-1, 2), 0);
    return s;
  };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal a = add(z, -1);
    const BigReal b = add(z, frac(-3, 2));
    const BigReal ha = harm(a, 1, c);
    const BigReal d = ha - harm(b, 1, c);
    return 2 * bz(z, c) * (harm(a, 2, c) - harm(b, 2, c) - d * d + ha * d);
  };
  e.default_samples = samples_of("z", {1, frac(3, 2), 2, frac(5, 2)});
  return e;
}

// ===========================================================================
// The factorial series itself

std::vector<DomainRule> norlund_rules() {
  return {greater_than("z", 0, "z > 0", true),
          DomainRule{"z + h > 0",
                     [](const Params& p) { return (param(p, "z") + param(p, "h")).sign() > 0; }, true}};
}

std::vector<Params> norlund_samples() {
  std::vector<Params> out;
  const std::pair<Rational, Rational> pairs[] = {{frac(1, 3), 1},          {2, 2},
                                                 {frac(1, 2), frac(1, 2)}, {1, frac(1, 3)},
                                                 {frac(3, 2), frac(-1, 2)}, {frac(5, 2), frac(3, 2)}};
  for (const auto& [z, h] : pairs) out.push_back(Params{{"z", Scalar(z)}, {"h", Scalar(h)}});
  return out;
}

Identity norlund() {
  Identity e = base("NORLUND",
                    "psi(z+h) - psi(z) = sum_{n>=0} (-1)^n h(h-1)...(h-n)/((n+1) z(z+1)...(z+n))",
                    {{"z", ParamKind::real}, {"h", ParamKind::real}});
  e.rules = norlund_rules();
  e.lhs = [](const Params& ps) { return norlund_stream(param(ps, "z"), param(ps, "h")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal h = real_param(ps, "h", c);
    return digamma(z + h, c) - digamma(z, c);
  };
  e.default_samples = norlund_samples();
  e.notes.emplace_back("integer h >= 0 terminates after h terms");
  return e;
}

Identity norlund_h() {
  Identity e = base("NORLUND-H",
                    "H_{z+h-1} - H_{z-1} = -Gamma(z)/Gamma(-h) sum_{n>=0} Gamma(n+1-h)/((n+1) Gamma(n+1+z))",
                    {{"z", ParamKind::real}, {"h", ParamKind::real}});
  e.rules = norlund_rules();
  e.lhs = [](const Params& ps) { return norlund_stream(param(ps, "z"), param(ps, "h")); };
  e.rhs = [](const Params& ps, const Ctx& c) {
    const BigReal z = real_param(ps, "z", c);
    const BigReal h = real_param(ps, "h", c);
    return harm(add(z + h, -1), 1, c) - harm(add(z, -1), 1, c);
  };
  e.default_samples = norlund_samples();
  e.notes.emplace_back("summed in product form; for integer h >= 0 the Gamma quotient is read as its limit");
  return e;
}

}  // namespace

std::vector<Identity> register_all() {
  std::vector<Identity> all;
  all.push_back(pi_cot());
  all.push_back(pi_tan());
  all.push_back(cat_inv());
  all.push_back(cat_h());
  all.push_back(cat_2n1());
  all.push_back(cat_n());
  all.push_back(cat_2n1_h());
  all.push_back(cat_n_h());
  all.push_back(cb_inv());
  all.push_back(cb_shift());
  all.push_back(oh_shift());
  all.push_back(cb_m());
  all.push_back(oh_m());
  all.push_back(cat_ctr());
  all.push_back(cat_oh());
  all.push_back(cb_z());
  all.push_back(oh_z());
  all.push_back(cat_ctr_z());
  all.push_back(cat_oh_z());
  all.push_back(norlund());
  all.push_back(norlund_h());
  return all;
}

}  // namespace norlund
