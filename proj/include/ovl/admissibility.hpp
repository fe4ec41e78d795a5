#pragma once

#include <optional>
#include <string>

#include "ovl/words.hpp"

namespace ovl {

enum class Closure { OpenClosed, ClosedOpen };
enum class TriBool { False, True, Unknown };
enum class Sign { Minus, Plus };

/// A candidate pair of critical itineraries.
struct CriticalPair {
  Word alpha;
  Word beta;

  /// Rejects structurally equal EPWord inputs (alpha = beta cannot satisfy
  /// the first-symbol conditions).
  CriticalPair(Word a, Word b);
};

enum class Verdict { Admissible, NotAdmissible, Unknown };

struct Witness {
  bool on_alpha;         // which word's shift condition failed
  uint64_t shift_index;  // the offending n
  std::string detail;
};

struct AdmissibilityReport {
  Verdict verdict = Verdict::Unknown;
  std::optional<Witness> witness;  // always present for NotAdmissible
  uint64_t checked_depth = 0;
  /// Whether every comparison performed for the corresponding side resolved
  /// exactly. For EPWord sides this certifies the condition for all n.
  bool alpha_exact = false;
  bool beta_exact = false;
  std::string notes;
};

inline constexpr uint64_t kDefaultStreamDepth = 500;

/// Membership of w in (lo, hi] (OpenClosed) or [lo, hi) (ClosedOpen) under
/// lexicographic order. Unknown propagates from unresolved comparisons.
TriBool interval_contains(const Word& w, const Word& lo, const Word& hi, Closure closure,
                          std::optional<uint64_t> depth = std::nullopt);

/// Checks the first-symbol conditions and the shift conditions
/// S^n alpha not in (alpha, beta], S^n beta not in [alpha, beta). Exact for
/// EPWord sides (shifts cycle after |pre| + |per|); depth-bounded otherwise.
AdmissibilityReport check_admissible(const CriticalPair& pair,
                                     std::optional<uint64_t> depth = std::nullopt);

/// Membership of w in the address space for the given sign, checking shift
/// indices n < depth.
TriBool in_address_space(const Word& w, const CriticalPair& pair, Sign sign, uint64_t depth);

}  // namespace ovl
