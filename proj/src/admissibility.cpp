#include "ovl/admissibility.hpp"

#include <sstream>

namespace ovl {

CriticalPair::CriticalPair(Word a, Word b) : alpha(std::move(a)), beta(std::move(b)) {
  if (alpha.is_eventually_periodic() && beta.is_eventually_periodic() &&
      alpha.ep() == beta.ep()) {
    throw std::invalid_argument("CriticalPair: alpha and beta must be distinct");
  }
}

TriBool interval_contains(const Word& w, const Word& lo, const Word& hi, Closure closure,
                          std::optional<uint64_t> depth) {
  const CompareResult cl = lex_compare(w, lo, depth);
  const CompareResult ch = lex_compare(w, hi, depth);
  const bool lo_ok = (closure == Closure::OpenClosed) ? cl.order == Order::GT
                                                      : (cl.order == Order::GT || cl.order == Order::EQ);
  const bool hi_ok = (closure == Closure::OpenClosed) ? (ch.order == Order::LT || ch.order == Order::EQ)
                                                      : ch.order == Order::LT;
  // A decided "outside" verdict on either side settles membership even if
  // the other comparison is unresolved.
  if (cl.order != Order::Unknown && !lo_ok) return TriBool::False;
  if (ch.order != Order::Unknown && !hi_ok) return TriBool::False;
  if (cl.order == Order::Unknown || ch.order == Order::Unknown) return TriBool::Unknown;
  return (lo_ok && hi_ok) ? TriBool::True : TriBool::False;
}

namespace {

struct SideResult {
  std::optional<Witness> witness;
  bool any_unknown = false;
  uint64_t checked = 0;
};

SideResult check_side(const Word& w, bool on_alpha, const CriticalPair& pair, Closure closure,
                      uint64_t stream_depth) {
  SideResult res;
  const uint64_t bound = w.is_eventually_periodic() ? w.ep().cycle_bound() : stream_depth;
  res.checked = bound;
  for (uint64_t n = 0; n < bound; ++n) {
    const TriBool t =
        interval_contains(shift(w, n), pair.alpha, pair.beta, closure, stream_depth);
    if (t == TriBool::True) {
      std::ostringstream os;
      os << "S^" << n << (on_alpha ? "alpha" : "beta") << " lies in "
         << (closure == Closure::OpenClosed ? "(alpha,beta]" : "[alpha,beta)");
      res.witness = Witness{on_alpha, n, os.str()};
      return res;
    }
    if (t == TriBool::Unknown) res.any_unknown = true;
  }
  return res;
}

}  // namespace

AdmissibilityReport check_admissible(const CriticalPair& pair, std::optional<uint64_t> depth) {
  AdmissibilityReport rep;
  const bool has_stream =
      !pair.alpha.is_eventually_periodic() || !pair.beta.is_eventually_periodic();
  const uint64_t stream_depth = depth.value_or(kDefaultStreamDepth);
  rep.checked_depth = stream_depth;

  // Condition 1: alpha = 01..., beta = 10...
  if (pair.alpha.at(0) != 0 || pair.alpha.at(1) != 1) {
    rep.verdict = Verdict::NotAdmissible;
    rep.witness = Witness{true, 0, "first-symbol condition: alpha must begin 01"};
    return rep;
  }
  if (pair.beta.at(0) != 1 || pair.beta.at(1) != 0) {
    rep.verdict = Verdict::NotAdmissible;
    rep.witness = Witness{false, 0, "first-symbol condition: beta must begin 10"};
    return rep;
  }

  const SideResult ra = check_side(pair.alpha, true, pair, Closure::OpenClosed, stream_depth);
  if (ra.witness) {
    rep.verdict = Verdict::NotAdmissible;
    rep.witness = ra.witness;
    return rep;
  }
  const SideResult rb = check_side(pair.beta, false, pair, Closure::ClosedOpen, stream_depth);
  if (rb.witness) {
    rep.verdict = Verdict::NotAdmissible;
    rep.witness = rb.witness;
    return rep;
  }

  rep.alpha_exact = !ra.any_unknown;
  rep.beta_exact = !rb.any_unknown;
  if (ra.any_unknown || rb.any_unknown) {
    rep.verdict = Verdict::Unknown;
    rep.notes = "some comparisons unresolved within depth";
    return rep;
  }
  rep.verdict = Verdict::Admissible;
  if (has_stream) {
    std::ostringstream os;
    os << "stream side(s) checked for shift indices n < " << stream_depth
       << "; every comparison performed resolved exactly";
    rep.notes = os.str();
  }
  return rep;
}

TriBool in_address_space(const Word& w, const CriticalPair& pair, Sign sign, uint64_t depth) {
  const Closure closure = (sign == Sign::Minus) ? Closure::OpenClosed : Closure::ClosedOpen;
  bool unknown = false;
  for (uint64_t n = 0; n < depth; ++n) {
    const TriBool t = interval_contains(shift(w, n), pair.alpha, pair.beta, closure, depth);
    if (t == TriBool::True) return TriBool::False;
    if (t == TriBool::Unknown) unknown = true;
  }
  return unknown ? TriBool::Unknown : TriBool::True;
}

}  // namespace ovl
