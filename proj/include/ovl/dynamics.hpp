#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ovl/admissibility.hpp"
#include "ovl/precision.hpp"
#include "ovl/projection.hpp"
#include "ovl/words.hpp"

namespace ovl {

/// Raised when an orbit comparison against p cannot be certified at the
/// working precision (callers typically retry with more digits).
struct PrecisionExhausted : std::runtime_error {
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// The overlapping pair x -> a x and x -> a x + (1 - a) on [0,1], glued at
/// p. The sign picks the convention at x = p: Minus sends p through the
/// lower branch (symbol 0), Plus through the upper branch (symbol 1).
struct OverlapParams {
  PrecisionReal a;
  PrecisionReal p;
  Sign sign = Sign::Minus;
};

/// Certified violation of 1 < a <= 2 or 1 - 1/a <= p <= 1/a, if any.
std::optional<std::string> params_violation(const OverlapParams& f);

PrecisionReal apply_branch(const OverlapParams& f, const PrecisionReal& x, Bit branch);

struct MapStep {
  PrecisionReal y;
  Bit symbol = 0;
  bool decided = true;       // false: x vs p undecidable at this precision
  bool at_boundary = false;  // x = p exactly; symbol follows the convention
};

MapStep eval_map(const OverlapParams& f, const PrecisionReal& x);

/// x, f(x), ..., f^n(x). Throws PrecisionExhausted on an undecidable branch.
std::vector<PrecisionReal> orbit(const OverlapParams& f, const PrecisionReal& x0, uint64_t n);

FiniteWord itinerary(const OverlapParams& f, const PrecisionReal& x0, uint64_t len);

/// The two itineraries of the critical point: the first symbol is forced
/// through branch 0 (first) and branch 1 (second); later symbols follow the
/// map's own convention.
std::pair<FiniteWord, FiniteWord> critical_itineraries(const OverlapParams& f, uint64_t len);

enum class RoundTripVerdict { Verified, Mismatch, Inconclusive };

struct RoundTripReport {
  RoundTripVerdict verdict = RoundTripVerdict::Inconclusive;
  uint64_t verified_depth = 0;
  std::optional<uint64_t> mismatch_index;
  std::optional<bool> mismatch_on_alpha;
  std::string detail;
};

/// Regenerates both itineraries from (a, p) and compares them symbol by
/// symbol against the pair, also requiring the orbit enclosure to overlap
/// the projected shifted word at every step. r = 1/a is passed separately
/// to keep its enclosure tight. Exactly periodic returns to p are detected
/// word-side and snapped, so e.g. f^2(p) = p does not exhaust precision.
RoundTripReport round_trip_verify(const CriticalPair& pair, const OverlapParams& f,
                                  const PrecisionReal& r, uint64_t len);

enum class ReconstructStatus { Verified, Mismatch, Inconclusive, NoRoot, NotAdmissible };

struct ReconstructionReport {
  ReconstructStatus status = ReconstructStatus::Inconclusive;
  AdmissibilityReport admissibility;
  RootResult root;
  std::optional<OverlapParams> params;
  PrecisionReal r;
  RoundTripReport round_trip;
  unsigned digits_used = 0;
  std::vector<std::string> warnings;
};

struct ReconstructOptions {
  uint64_t verify_len = 200;
  Sign sign = Sign::Minus;
  std::optional<uint64_t> admissibility_depth;
  unsigned max_digits = 5000;  // precision ceiling for the retry loop
};

/// Full pipeline: admissibility, smallest root r of the projection
/// difference, p = pi_r(alpha) cross-checked against pi_r(beta), a = 1/r,
/// round-trip verification to verify_len symbols. Working precision starts
/// at what verify_len requires and doubles on undecidable comparisons; a
/// true mismatch is never reported as a precision failure or vice versa.
ReconstructionReport reconstruct(const CriticalPair& pair, ReconstructOptions opts = {});

/// indicator[n] = 1 iff n is prime, for 2 <= n <= nmax, computed purely
/// dynamically: reconstruct (a, p) from the pair (@primes, 1(0)) and test
/// f^{n-1}(p) > p with certified comparisons.
std::vector<Bit> primality_indicator(uint64_t nmax);

}  // namespace ovl
