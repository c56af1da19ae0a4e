#include "norlund/scalar.hpp"

#include <algorithm>

namespace norlund {

namespace {

// Common precision for mixing a real with another value.
int real_precision(const Scalar& a, const Scalar& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

const Rational& Scalar::exact() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return *q;
  throw UsageError("an exact rational parameter is required here");
}

BigReal Scalar::at(int precision_bits) const {
  if (const auto* q = std::get_if<Rational>(&v_)) return q->to_bigreal(precision_bits);
  return std::get<BigReal>(v_).rescale(precision_bits);
}

int Scalar::precision() const {
  if (is_exact()) return 0;
  return std::get<BigReal>(v_).precision();
}

bool Scalar::is_integer() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return q->is_integer();
  return std::get<BigReal>(v_).is_integer();
}

bool Scalar::is_half_integer() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return q->is_half_integer();
  const auto& x = std::get<BigReal>(v_);
  return !x.is_integer() && x.ldexp(1).is_integer();
}

int Scalar::sign() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return q->sign();
  return std::get<BigReal>(v_).sign();
}

int Scalar::compare(const Rational& r) const {
  if (const auto* q = std::get_if<Rational>(&v_)) return (*q - r).sign();
  const auto& x = std::get<BigReal>(v_);
  return (x - r.to_bigreal(x.precision())).sign();
}

double Scalar::to_double() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return q->to_double();
  return std::get<BigReal>(v_).to_double();
}

std::string Scalar::to_string() const {
  if (const auto* q = std::get_if<Rational>(&v_)) return q->to_string();
  const auto& x = std::get<BigReal>(v_);
  return x.to_decimal(std::min(40, BigReal::decimal_digits(x.precision())));
}

Scalar operator+(const Scalar& a, const Rational& b) {
  if (a.is_exact()) return Scalar(a.exact() + b);
  const int p = a.precision();
  return Scalar(a.at(p) + b.to_bigreal(p));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.exact() + b.exact());
  const int p = real_precision(a, b);
  return Scalar(a.at(p) + b.at(p));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(a.exact() - b.exact());
  const int p = real_precision(a, b);
  return Scalar(a.at(p) - b.at(p));
}

Scalar operator*(const Rational& a, const Scalar& b) {
  if (b.is_exact()) return Scalar(a * b.exact());
  return Scalar(scale(b.at(b.precision()), a));
}

}  // namespace norlund
