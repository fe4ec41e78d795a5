#pragma once

#include <vector>

#include "ovl/admissibility.hpp"
#include "ovl/precision.hpp"
#include "ovl/words.hpp"

namespace ovl {

/// pi_x(w) = (1-x) sum w_k x^k. Closed form for EPWords (rounding error
/// only); truncated with tail bound <= eps for streams.
PrecisionReal project(const Word& w, const PrecisionReal& x, const Real& eps);

/// Composition (g_{w_0} o ... o g_{w_n})(x0) of the inverse-branch
/// contractions g_0(t) = x t, g_1(t) = x t + (1 - x). Agrees with
/// project(w, x) within x^{n+1}.
PrecisionReal project_ifs(const Word& w, const PrecisionReal& x, uint64_t n, double x0);

/// G(x) = sum (alpha_k - beta_k) x^k; its roots in (0,1) coincide with
/// those of pi_x(alpha) = pi_x(beta).
PrecisionReal pair_difference(const CriticalPair& pair, const PrecisionReal& x, const Real& eps);

/// Integer-coefficient polynomial whose roots in (0,1) are exactly the
/// roots of G there (EPWord pairs only): the numerator of G over the
/// common denominator (1 - x^{d_alpha})(1 - x^{d_beta}).
std::vector<BigInt> pair_numerator(const EPWord& alpha, const EPWord& beta);

int sign_at(const std::vector<BigInt>& poly, const Rational& x);

enum class RootStatus { Root, NoneFound };

struct RootResult {
  RootStatus status = RootStatus::NoneFound;
  PrecisionReal r;
  PrecisionReal residual;      // |G(r)| when a root was found
  double scan_ceiling = 0.0;   // right end of the scanned range
  double min_abs_seen = 0.0;   // smallest |G| observed during the scan
  bool exact_path = false;     // exact rational reduction was used
  std::vector<BigInt> numerator;  // the reduced polynomial, for inspection
  std::vector<std::string> warnings;
};

struct RootOptions {
  double grid = 1e-3;    // scan step
  double delta = 1e-4;   // scan stops at 1 - delta
  unsigned digits = 50;  // working precision (raised automatically for tight tol)
};

/// Smallest x in (0,1) with G(x) = 0, bracketed by sign scanning and
/// refined by bisection to width <= tol. EPWord pairs go through the exact
/// rational reduction; tangential roots are not found by sign scanning and
/// only produce a warning.
RootResult smallest_root(const CriticalPair& pair, const Real& tol, RootOptions opts = {});

}  // namespace ovl
