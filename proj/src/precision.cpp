#include "ovl/precision.hpp"

#include <mpfr.h>

namespace ovl {

Real with_digits(const Real& x, unsigned digits10) {
  Real y = x;
  y.precision(digits10);
  return y;
}

Real ulp_of(const Real& v) {
  if (v.is_zero()) return Real(0);
  const mpfr_prec_t bits = mpfr_get_prec(v.backend().data());
  return boost::multiprecision::ldexp(boost::multiprecision::abs(v),
                                      1 - static_cast<long>(bits));
}

PrecisionReal::PrecisionReal(Real value, Real error)
    : value_(std::move(value)), error_(std::move(error)) {
  if (error_ < 0) throw std::invalid_argument("negative error bound");
}

PrecisionReal PrecisionReal::of_rational(const Rational& q, unsigned digits10) {
  // Conversion happens at the default precision, so raise it for the scope;
  // a plain assignment would silently keep the ambient precision.
  PrecisionGuard guard(digits10);
  Real v{q};
  v.precision(digits10);
  return PrecisionReal(v, ulp_of(v));
}

PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b) {
  Real v = a.value() + b.value();
  return PrecisionReal(v, a.error_bound() + b.error_bound() + ulp_of(v));
}

PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b) {
  Real v = a.value() - b.value();
  return PrecisionReal(v, a.error_bound() + b.error_bound() + ulp_of(v));
}

PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b) {
  using boost::multiprecision::abs;
  Real v = a.value() * b.value();
  Real e = abs(a.value()) * b.error_bound() + abs(b.value()) * a.error_bound() +
           a.error_bound() * b.error_bound() + ulp_of(v);
  return PrecisionReal(std::move(v), std::move(e));
}

PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b) {
  using boost::multiprecision::abs;
  Real denom_low = abs(b.value()) - b.error_bound();
  if (denom_low <= 0) throw std::domain_error("division by enclosure containing zero");
  Real v = a.value() / b.value();
  Real e = (a.error_bound() + abs(v) * b.error_bound()) / denom_low + ulp_of(v);
  return PrecisionReal(std::move(v), std::move(e));
}

PrecisionReal operator-(const PrecisionReal& a) {
  return PrecisionReal(-a.value(), a.error_bound());
}

PrecisionReal abs(const PrecisionReal& a) {
  return PrecisionReal(boost::multiprecision::abs(a.value()), a.error_bound());
}

PrecisionReal pow_ui(const PrecisionReal& base, unsigned long e) {
  PrecisionReal acc = PrecisionReal::exact(with_digits(Real(1), base.precision_digits()));
  PrecisionReal sq = base;
  while (e > 0) {
    if (e & 1UL) acc = acc * sq;
    e >>= 1UL;
    if (e > 0) sq = sq * sq;
  }
  return acc;
}

Cmp compare(const PrecisionReal& a, const PrecisionReal& b) {
  if (a.is_exact() && b.is_exact()) {
    const int c = a.value().compare(b.value());
    return c < 0 ? Cmp::Less : (c > 0 ? Cmp::Greater : Cmp::Equal);
  }
  if (a.upper() < b.lower()) return Cmp::Less;
  if (a.lower() > b.upper()) return Cmp::Greater;
  return Cmp::Undecidable;
}

Cmp compare(const PrecisionReal& a, const Real& b) {
  return compare(a, PrecisionReal::exact(b));
}

}  // namespace ovl
