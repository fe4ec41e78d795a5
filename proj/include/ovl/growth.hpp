#pragma once

#include <array>
#include <string>
#include <vector>

#include "ovl/admissibility.hpp"
#include "ovl/precision.hpp"
#include "ovl/words.hpp"

namespace ovl {

/// The two families of forbidden factors derived from the shift conditions:
/// F_alpha = { alpha|_{k-1} . 1 : alpha_k = 0, k >= 1 } (a window starting
/// with 0 first diverges above alpha) and F_beta = { beta|_{k-1} . 0 :
/// beta_k = 1 } (a window starting with 1 first diverges below beta).
/// Members whose proper factors already contain an earlier member are
/// omitted as redundant.
struct FactorFamilies {
  std::vector<FiniteWord> from_alpha;
  std::vector<FiniteWord> from_beta;
  bool alpha_family_finite = false;  // no further members beyond those listed
  bool beta_family_finite = false;
  std::string description;
};

FactorFamilies forbidden_factor_families(const CriticalPair& pair, uint64_t max_len = 16);

/// Deterministic recognizer of finite words avoiding F_alpha and F_beta,
/// built over pairs of match positions into alpha and beta with positions
/// wrapped into the periodic parts.
struct GrowthAutomaton {
  std::vector<std::array<int, 2>> next;  // -1 means Reject
  int start = 0;
  std::vector<char> alive;  // states surviving the trim
  int trimmed_away = 0;

  int size() const { return static_cast<int>(next.size()); }
};

/// EPWord pairs only.
GrowthAutomaton build_automaton(const CriticalPair& pair);

enum class CountMethod { Automaton, BruteForce };

/// Number of length-L words of the sofic cover (all finite words avoiding
/// the forbidden factors). BruteForce tests the divergence conditions
/// window by window, independent of the automaton; guarded at L > 24.
BigInt count_prefixes(const CriticalPair& pair, uint64_t len, CountMethod method);

enum class GrowthClass { Null, NonNull, Unknown };
enum class GrowthMode { Exact, Estimate };

struct GrowthReport {
  GrowthMode mode = GrowthMode::Exact;
  std::vector<BigInt> counts;  // counts[i] = number of words of length i+1
  PrecisionReal rate;          // nats per symbol
  GrowthClass classification = GrowthClass::Unknown;
  std::string method_notes;
};

/// Exact classification for EPWord pairs: Null iff every strongly connected
/// component of the trimmed automaton is a single simple cycle; otherwise
/// rate = ln(spectral radius) of the recurrent transition-count matrix with
/// certified two-sided bounds.
GrowthReport classify_growth(const CriticalPair& pair, uint64_t report_len = 14);

struct EstimateOptions {
  double nonnull_threshold = 0.1;  // rate above this (with margin) => NonNull
};

/// Depth-limited estimate for arbitrary (including stream) pairs: exact
/// counts of the cover language up to maxL via a lazily built matcher,
/// rate = ln(counts[maxL]) / maxL (an upper bound on the true rate).
GrowthReport estimate_growth(const CriticalPair& pair, uint64_t max_len,
                             EstimateOptions opts = {});

}  // namespace ovl
