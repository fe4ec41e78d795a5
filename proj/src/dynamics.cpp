#include "ovl/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace ovl {

namespace {

Bit convention_symbol(Sign sign) { return sign == Sign::Minus ? Bit(0) : Bit(1); }

PrecisionReal hull(const PrecisionReal& u, const PrecisionReal& v) {
  const Real lo = boost::multiprecision::min(u.lower(), v.lower());
  const Real hi = boost::multiprecision::max(u.upper(), v.upper());
  const Real mid = (lo + hi) / 2;
  return PrecisionReal(mid, (hi - lo) / 2 + ulp_of(mid));
}

bool overlap(const PrecisionReal& u, const PrecisionReal& v) {
  return u.lower() <= v.upper() && v.lower() <= u.upper();
}

}  // namespace

std::optional<std::string> params_violation(const OverlapParams& f) {
  if (f.a.upper() <= 1) return "a <= 1: both branches contract onto fixed points";
  if (f.a.lower() > 2) return "a > 2: the branches cannot cover [0,1] with overlap";
  const PrecisionReal one = PrecisionReal::exact(1L);
  const PrecisionReal lo = one - one / f.a;
  const PrecisionReal hi = one / f.a;
  if (compare(f.p, lo) == Cmp::Less) return "p < 1 - 1/a: the upper branch escapes [0,1]";
  if (compare(f.p, hi) == Cmp::Greater) return "p > 1/a: the lower branch escapes [0,1]";
  return std::nullopt;
}

PrecisionReal apply_branch(const OverlapParams& f, const PrecisionReal& x, Bit branch) {
  const PrecisionReal ax = f.a * x;
  if (branch == 0) return ax;
  return ax + (PrecisionReal::exact(1L) - f.a);
}

MapStep eval_map(const OverlapParams& f, const PrecisionReal& x) {
  MapStep step;
  switch (compare(x, f.p)) {
    case Cmp::Less:
      step.symbol = 0;
      break;
    case Cmp::Greater:
      step.symbol = 1;
      break;
    case Cmp::Equal:
      step.symbol = convention_symbol(f.sign);
      step.at_boundary = true;
      break;
    case Cmp::Undecidable:
      step.decided = false;
      step.symbol = convention_symbol(f.sign);
      break;
  }
  step.y = apply_branch(f, x, step.symbol);
  return step;
}

std::vector<PrecisionReal> orbit(const OverlapParams& f, const PrecisionReal& x0, uint64_t n) {
  std::vector<PrecisionReal> out;
  out.reserve(n + 1);
  out.push_back(x0);
  for (uint64_t k = 0; k < n; ++k) {
    const MapStep step = eval_map(f, out.back());
    if (!step.decided)
      throw PrecisionExhausted("orbit: branch undecidable at step " + std::to_string(k));
    out.push_back(step.y);
  }
  return out;
}

FiniteWord itinerary(const OverlapParams& f, const PrecisionReal& x0, uint64_t len) {
  std::vector<Bit> bits;
  bits.reserve(len);
  PrecisionReal x = x0;
  for (uint64_t k = 0; k < len; ++k) {
    const MapStep step = eval_map(f, x);
    if (!step.decided)
      throw PrecisionExhausted("itinerary: branch undecidable at step " + std::to_string(k));
    bits.push_back(step.symbol);
    x = step.y;
  }
  return FiniteWord(std::move(bits));
}

std::pair<FiniteWord, FiniteWord> critical_itineraries(const OverlapParams& f, uint64_t len) {
  // Each itinerary is computed wholly under its own convention; the first
  // symbol is forced by it, since x0 = p.
  const auto one_side = [&](Sign sign) {
    if (len == 0) return FiniteWord{};
    const OverlapParams g{f.a, f.p, sign};
    std::vector<Bit> bits{convention_symbol(sign)};
    PrecisionReal x = apply_branch(g, g.p, bits[0]);
    while (bits.size() < len) {
      const MapStep step = eval_map(g, x);
      if (!step.decided)
        throw PrecisionExhausted("critical_itineraries: branch undecidable at step " +
                                 std::to_string(bits.size()));
      bits.push_back(step.symbol);
      x = step.y;
    }
    return FiniteWord(std::move(bits));
  };
  return {one_side(Sign::Minus), one_side(Sign::Plus)};
}

namespace {

struct SideOutcome {
  enum Kind { Ok, Mismatch, NeedMore } kind = Ok;
  uint64_t index = 0;
  std::string detail;
};

// The itinerary of p itself under the map's convention: alpha for Minus,
// beta for Plus. An orbit that returns exactly to p continues with it.
const Word& base_word(const CriticalPair& pair, Sign sign) {
  return sign == Sign::Minus ? pair.alpha : pair.beta;
}

bool tail_is_base(const Word& w, uint64_t n, const Word& base) {
  if (!w.is_eventually_periodic() || !base.is_eventually_periodic()) return false;
  return shift(w, n).ep() == base.ep();
}

SideOutcome verify_word(const Word& w, const CriticalPair& pair, const OverlapParams& f,
                        const PrecisionReal& r, uint64_t len, const Real& eps) {
  SideOutcome out;
  if (len == 0) return out;
  const Word& base = base_word(pair, f.sign);
  const Bit conv = convention_symbol(f.sign);
  PrecisionReal x = apply_branch(f, f.p, w.at(0));
  for (uint64_t n = 1; n < len; ++n) {
    // The orbit point must agree with the projection of the shifted word.
    const PrecisionReal proj = project(shift(w, n), r, eps);
    if (!overlap(x, proj)) {
      out.kind = SideOutcome::Mismatch;
      out.index = n;
      out.detail = "orbit enclosure disjoint from projected shifted word";
      return out;
    }
    const Bit expected = w.at(n);
    Bit got;
    bool snapped = false;
    switch (compare(x, f.p)) {
      case Cmp::Less:
        got = 0;
        break;
      case Cmp::Greater:
        got = 1;
        break;
      case Cmp::Equal:
        got = conv;
        break;
      case Cmp::Undecidable:
        if (tail_is_base(w, n, base)) {
          // Exactly periodic return to p; undecidable forever numerically.
          got = conv;
          snapped = true;
        } else {
          out.kind = SideOutcome::NeedMore;
          out.index = n;
          out.detail = "comparison with p undecidable";
          return out;
        }
        break;
    }
    if (got != expected) {
      out.kind = SideOutcome::Mismatch;
      out.index = n;
      std::ostringstream os;
      os << "itinerary symbol " << int(got) << " differs from word symbol " << int(expected);
      out.detail = os.str();
      return out;
    }
    x = apply_branch(f, snapped ? f.p : x, got);
  }
  out.index = len;
  return out;
}

}  // namespace

RoundTripReport round_trip_verify(const CriticalPair& pair, const OverlapParams& f,
                                  const PrecisionReal& r, uint64_t len) {
  RoundTripReport rep;
  Real eps = boost::multiprecision::max(f.p.error_bound(), ulp_of(f.p.value()));
  if (eps.is_zero()) eps = Real(1e-30);

  const SideOutcome ra = verify_word(pair.alpha, pair, f, r, len, eps);
  if (ra.kind == SideOutcome::Mismatch) {
    rep.verdict = RoundTripVerdict::Mismatch;
    rep.mismatch_index = ra.index;
    rep.mismatch_on_alpha = true;
    rep.detail = "alpha: " + ra.detail;
    return rep;
  }
  const SideOutcome rb = verify_word(pair.beta, pair, f, r, len, eps);
  if (rb.kind == SideOutcome::Mismatch) {
    rep.verdict = RoundTripVerdict::Mismatch;
    rep.mismatch_index = rb.index;
    rep.mismatch_on_alpha = false;
    rep.detail = "beta: " + rb.detail;
    return rep;
  }
  if (ra.kind == SideOutcome::NeedMore || rb.kind == SideOutcome::NeedMore) {
    rep.verdict = RoundTripVerdict::Inconclusive;
    rep.verified_depth = std::min(ra.index, rb.index);
    rep.detail = (ra.kind == SideOutcome::NeedMore ? "alpha: " + ra.detail
                                                   : "beta: " + rb.detail);
    return rep;
  }
  rep.verdict = RoundTripVerdict::Verified;
  rep.verified_depth = len;
  return rep;
}

namespace {

unsigned digits_for_length(uint64_t len) {
  const double need = std::ceil(static_cast<double>(len) * std::log10(2.0)) + 30;
  return std::max(50u, static_cast<unsigned>(need));
}

Real tol_for_digits(unsigned digits) {
  const long e = digits > 20 ? static_cast<long>(digits) - 20 : 10;
  return boost::multiprecision::pow(Real(10), -e);
}

}  // namespace

ReconstructionReport reconstruct(const CriticalPair& pair, ReconstructOptions opts) {
  ReconstructionReport rep;
  rep.admissibility = check_admissible(pair, opts.admissibility_depth);
  if (rep.admissibility.verdict == Verdict::NotAdmissible) {
    rep.status = ReconstructStatus::NotAdmissible;
    return rep;
  }
  if (rep.admissibility.verdict == Verdict::Unknown)
    rep.warnings.push_back("admissibility unresolved within depth; proceeding");

  unsigned digits = digits_for_length(opts.verify_len);
  for (;;) {
    PrecisionGuard guard(digits + 10);
    rep.digits_used = digits;
    const Real tol = tol_for_digits(digits);
    rep.root = smallest_root(pair, tol, RootOptions{.digits = digits});
    if (rep.root.status == RootStatus::NoneFound) {
      rep.status = ReconstructStatus::NoRoot;
      rep.warnings.push_back("projections never agree on (0,1): no overlap parameters exist");
      return rep;
    }
    rep.r = rep.root.r;

    const PrecisionReal p_alpha = project(pair.alpha, rep.r, tol);
    const PrecisionReal p_beta = project(pair.beta, rep.r, tol);
    if (!overlap(p_alpha, p_beta)) {
      rep.status = ReconstructStatus::Mismatch;
      rep.warnings.push_back("pi_r(alpha) and pi_r(beta) enclosures are disjoint at the root");
      return rep;
    }
    const PrecisionReal p = hull(p_alpha, p_beta);
    const PrecisionReal a = PrecisionReal::exact(1L) / rep.r;
    OverlapParams params{a, p, opts.sign};
    if (auto why = params_violation(params)) {
      rep.status = ReconstructStatus::Mismatch;
      rep.params = params;
      rep.warnings.push_back("reconstructed parameters out of range: " + *why);
      return rep;
    }
    rep.params = params;

    rep.round_trip = round_trip_verify(pair, params, rep.r, opts.verify_len);
    if (rep.round_trip.verdict == RoundTripVerdict::Verified) {
      rep.status = ReconstructStatus::Verified;
      return rep;
    }
    if (rep.round_trip.verdict == RoundTripVerdict::Mismatch) {
      rep.status = ReconstructStatus::Mismatch;
      return rep;
    }
    if (digits >= opts.max_digits) {
      rep.status = ReconstructStatus::Inconclusive;
      rep.warnings.push_back("precision ceiling reached with comparisons still undecidable");
      return rep;
    }
    digits = std::min(digits * 2, opts.max_digits);
  }
}

std::vector<Bit> primality_indicator(uint64_t nmax) {
  if (nmax < 2) return std::vector<Bit>(nmax + 1, 0);
  const CriticalPair pair(Word(SymbolStream(builtin_stream("primes"))),
                          parse_word("1(0)"));
  unsigned digits = digits_for_length(nmax);
  const unsigned cap = 64 * std::max<unsigned>(digits, 256);
  for (;;) {
    PrecisionGuard guard(digits + 10);
    const Real tol = tol_for_digits(digits);
    const RootResult root = smallest_root(pair, tol);
    if (root.status == RootStatus::NoneFound)
      throw std::runtime_error("primality_indicator: projection root not found");
    const PrecisionReal p = project(pair.alpha, root.r, tol);
    const PrecisionReal a = PrecisionReal::exact(1L) / root.r;
    const OverlapParams f{a, p, Sign::Minus};

    std::vector<Bit> out(nmax + 1, 0);
    bool retry = false;
    // x holds f^{n-1}(p); the first step takes the lower branch (1 is not prime).
    PrecisionReal x = apply_branch(f, p, 0);
    for (uint64_t n = 2; n <= nmax; ++n) {
      const Cmp c = compare(x, f.p);
      if (c == Cmp::Undecidable) {
        retry = true;
        break;
      }
      out[n] = (c == Cmp::Greater) ? 1 : 0;
      x = apply_branch(f, x, out[n]);
    }
    if (!retry) return out;
    if (digits >= cap)
      throw PrecisionExhausted("primality_indicator: precision ceiling reached");
    digits *= 2;
  }
}

}  // namespace ovl
