#pragma once

#include <stdexcept>
#include <utility>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace ovl {

using Real = boost::multiprecision::mpfr_float;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Three-way comparison of enclosures. Undecidable means the intervals
/// overlap and neither order can be certified at the current precision.
enum class Cmp { Less, Equal, Greater, Undecidable };

/// Returns a copy of x rounded/extended to the given decimal precision.
Real with_digits(const Real& x, unsigned digits10);

/// One unit in the last place of v at v's own precision; 0 for v == 0.
Real ulp_of(const Real& v);

/// A real value with an explicit error bound: the true value lies in
/// [value - error_bound, value + error_bound]. All arithmetic propagates
/// the bound conservatively, including rounding of the stored value.
class PrecisionReal {
 public:
  PrecisionReal() : value_(0), error_(0) {}
  PrecisionReal(Real value, Real error);

  static PrecisionReal exact(Real v) { return PrecisionReal(std::move(v), Real(0)); }
  static PrecisionReal exact(double v) { return PrecisionReal(Real(v), Real(0)); }
  static PrecisionReal exact(long v) { return PrecisionReal(Real(v), Real(0)); }
  /// Rounds q to digits10 decimal digits; the rounding error goes into the bound.
  static PrecisionReal of_rational(const Rational& q, unsigned digits10);

  const Real& value() const { return value_; }
  const Real& error_bound() const { return error_; }
  unsigned precision_digits() const { return value_.precision(); }

  Real lower() const { return value_ - error_; }
  Real upper() const { return value_ + error_; }
  bool is_exact() const { return error_.is_zero(); }

 private:
  Real value_;
  Real error_;  // nonnegative
};

PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b);
PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b);
PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b);
/// Throws std::domain_error if b's enclosure contains zero.
PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b);
PrecisionReal operator-(const PrecisionReal& a);

PrecisionReal abs(const PrecisionReal& a);
PrecisionReal pow_ui(const PrecisionReal& base, unsigned long e);

Cmp compare(const PrecisionReal& a, const PrecisionReal& b);
Cmp compare(const PrecisionReal& a, const Real& b);

/// Scoped override of the default mpfr precision.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits10)
      : saved_(Real::default_precision()) {
    Real::default_precision(digits10);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

}  // namespace ovl
