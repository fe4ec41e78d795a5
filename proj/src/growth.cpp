#include "ovl/growth.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <numeric>
#include <sstream>

namespace ovl {

namespace {

bool contains_factor(const std::vector<Bit>& text, const FiniteWord& pat) {
  if (pat.size() > text.size()) return false;
  for (std::size_t i = 0; i + pat.size() <= text.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < pat.size() && hit; ++j) hit = text[i + j] == pat[j];
    if (hit) return true;
  }
  return false;
}

void collect_family(const Word& w, bool alpha_side, uint64_t max_len,
                    std::vector<FiniteWord>& out) {
  std::vector<Bit> pref;
  for (uint64_t k = 1; k + 1 <= max_len; ++k) {
    pref.push_back(w.at(k - 1));
    const Bit wk = w.at(k);
    const bool member = alpha_side ? (wk == 0) : (wk == 1);
    if (!member) continue;
    std::vector<Bit> factor = pref;
    factor.push_back(alpha_side ? 1 : 0);
    bool redundant = false;
    for (const FiniteWord& earlier : out) {
      if (contains_factor(factor, earlier)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.emplace_back(std::move(factor));
  }
}

}  // namespace

FactorFamilies forbidden_factor_families(const CriticalPair& pair, uint64_t max_len) {
  FactorFamilies fam;
  collect_family(pair.alpha, true, max_len, fam.from_alpha);
  collect_family(pair.beta, false, max_len, fam.from_beta);
  if (pair.alpha.is_eventually_periodic()) {
    const auto& per = pair.alpha.ep().period().bits;
    fam.alpha_family_finite = std::find(per.begin(), per.end(), Bit(0)) == per.end();
  }
  if (pair.beta.is_eventually_periodic()) {
    const auto& per = pair.beta.ep().period().bits;
    fam.beta_family_finite = std::find(per.begin(), per.end(), Bit(1)) == per.end();
  }
  std::ostringstream os;
  os << "F_alpha: prefixes of alpha that first diverge above it (continue with 1 "
        "where alpha reads 0); F_beta: prefixes of beta that first diverge below it. "
        "Both signs share these factors and differ only by the boundary exclusion of "
        "the exact words beta (minus) and alpha (plus).";
  fam.description = os.str();
  return fam;
}

namespace {

// Tracks the longest suffix of the processed text matching a prefix of one
// reference word. Match positions past `cap` wrap into the periodic part.
struct SideMatcher {
  std::vector<Bit> pat;   // pat[0..cap]
  std::vector<int> fail;  // fail[k] = longest proper border of pat|_k
  int m = 0, d = 1, cap = 0;
  bool alpha_side = true;

  static SideMatcher from_ep(const EPWord& w, bool alpha_side) {
    SideMatcher s;
    s.m = static_cast<int>(w.preperiod().size());
    s.d = static_cast<int>(w.period().size());
    s.cap = s.m + s.d;
    s.alpha_side = alpha_side;
    s.init_pattern([&](uint64_t k) { return w.at(k); });
    return s;
  }

  // Uncapped matcher over an explicit prefix; exact for words up to length cap.
  static SideMatcher from_prefix(const Word& w, bool alpha_side, int cap) {
    SideMatcher s;
    s.m = cap;  // canonical() never wraps: k <= cap always holds
    s.d = 1;
    s.cap = cap;
    s.alpha_side = alpha_side;
    s.init_pattern([&](uint64_t k) { return w.at(k); });
    return s;
  }

  void init_pattern(const std::function<Bit(uint64_t)>& bit) {
    pat.resize(static_cast<std::size_t>(cap) + 1);
    for (int k = 0; k <= cap; ++k) pat[static_cast<std::size_t>(k)] = bit(static_cast<uint64_t>(k));
    fail.assign(pat.size(), 0);
    for (int k = 2; k <= cap; ++k) {
      int j = fail[static_cast<std::size_t>(k - 1)];
      while (j > 0 && pat[static_cast<std::size_t>(j)] != pat[static_cast<std::size_t>(k - 1)])
        j = fail[static_cast<std::size_t>(j)];
      if (pat[static_cast<std::size_t>(j)] == pat[static_cast<std::size_t>(k - 1)]) ++j;
      fail[static_cast<std::size_t>(k)] = j;
    }
  }

  int canonical(int k) const { return k <= cap ? k : m + (k - m) % d; }

  // Reading b completes a forbidden factor through some active match.
  bool rejects(int k, Bit b) const {
    for (int j = k; j > 0; j = fail[static_cast<std::size_t>(j)]) {
      const Bit expect = pat[static_cast<std::size_t>(j)];
      if (alpha_side ? (b == 1 && expect == 0) : (b == 0 && expect == 1)) return true;
    }
    return false;
  }

  int advance(int k, Bit b) const {
    int j = k;
    while (j > 0 && pat[static_cast<std::size_t>(j)] != b) j = fail[static_cast<std::size_t>(j)];
    j = (pat[static_cast<std::size_t>(j)] == b) ? j + 1 : 0;
    return canonical(j);
  }
};

struct PairMatcher {
  SideMatcher a, b;
  int encode(int ia, int ib) const { return ia * (b.cap + 1) + ib; }
  int states() const { return (a.cap + 1) * (b.cap + 1); }

  // Returns encoded target or -1 for Reject.
  int step(int state, Bit bit) const {
    const int ia = state / (b.cap + 1), ib = state % (b.cap + 1);
    if (a.rejects(ia, bit) || b.rejects(ib, bit)) return -1;
    return encode(a.advance(ia, bit), b.advance(ib, bit));
  }
};

GrowthAutomaton automaton_from_matcher(const PairMatcher& pm) {
  std::vector<int> id(static_cast<std::size_t>(pm.states()), -1);
  GrowthAutomaton g;
  std::vector<int> queue;
  const auto intern = [&](int enc) {
    if (id[static_cast<std::size_t>(enc)] < 0) {
      id[static_cast<std::size_t>(enc)] = g.size();
      g.next.push_back({-1, -1});
      queue.push_back(enc);
    }
    return id[static_cast<std::size_t>(enc)];
  };
  g.start = intern(pm.encode(0, 0));
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const int enc = queue[qi];
    const int sid = id[static_cast<std::size_t>(enc)];
    for (Bit bit : {Bit(0), Bit(1)}) {
      const int t = pm.step(enc, bit);
      g.next[static_cast<std::size_t>(sid)][bit] = (t < 0) ? -1 : intern(t);
    }
  }
  // Trim: drop states with no infinite continuation.
  g.alive.assign(static_cast<std::size_t>(g.size()), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < g.size(); ++s) {
      if (!g.alive[static_cast<std::size_t>(s)]) continue;
      bool has_out = false;
      for (Bit bit : {Bit(0), Bit(1)}) {
        const int t = g.next[static_cast<std::size_t>(s)][bit];
        if (t >= 0 && g.alive[static_cast<std::size_t>(t)]) has_out = true;
      }
      if (!has_out) {
        g.alive[static_cast<std::size_t>(s)] = 0;
        ++g.trimmed_away;
        changed = true;
      }
    }
  }
  return g;
}

std::vector<BigInt> path_counts(const GrowthAutomaton& g, uint64_t max_len, bool trimmed_only) {
  std::vector<BigInt> cnt(static_cast<std::size_t>(g.size()), BigInt(0));
  cnt[static_cast<std::size_t>(g.start)] = 1;
  std::vector<BigInt> totals;
  for (uint64_t len = 1; len <= max_len; ++len) {
    std::vector<BigInt> nxt(cnt.size(), BigInt(0));
    for (int s = 0; s < g.size(); ++s) {
      if (cnt[static_cast<std::size_t>(s)] == 0) continue;
      if (trimmed_only && !g.alive[static_cast<std::size_t>(s)]) continue;
      for (Bit bit : {Bit(0), Bit(1)}) {
        const int t = g.next[static_cast<std::size_t>(s)][bit];
        if (t < 0) continue;
        if (trimmed_only && !g.alive[static_cast<std::size_t>(t)]) continue;
        nxt[static_cast<std::size_t>(t)] += cnt[static_cast<std::size_t>(s)];
      }
    }
    cnt.swap(nxt);
    totals.push_back(std::accumulate(cnt.begin(), cnt.end(), BigInt(0)));
  }
  return totals;
}

PairMatcher matcher_for(const CriticalPair& pair) {
  return PairMatcher{SideMatcher::from_ep(pair.alpha.ep(), true),
                     SideMatcher::from_ep(pair.beta.ep(), false)};
}

// Kosaraju strongly connected components over the alive subgraph.
std::vector<int> scc_of(const GrowthAutomaton& g) {
  const int n = g.size();
  std::vector<std::vector<int>> fwd(static_cast<std::size_t>(n)), rev(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    if (!g.alive[static_cast<std::size_t>(s)]) continue;
    for (Bit bit : {Bit(0), Bit(1)}) {
      const int t = g.next[static_cast<std::size_t>(s)][bit];
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) continue;
      fwd[static_cast<std::size_t>(s)].push_back(t);
      rev[static_cast<std::size_t>(t)].push_back(s);
    }
  }
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int s0 = 0; s0 < n; ++s0) {
    if (seen[static_cast<std::size_t>(s0)] || !g.alive[static_cast<std::size_t>(s0)]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{s0, 0}};
    seen[static_cast<std::size_t>(s0)] = 1;
    while (!stack.empty()) {
      auto& [u, idx] = stack.back();
      if (idx < fwd[static_cast<std::size_t>(u)].size()) {
        const int v = fwd[static_cast<std::size_t>(u)][idx++];
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          stack.push_back({v, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int ncomp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[static_cast<std::size_t>(*it)] >= 0) continue;
    std::vector<int> stack{*it};
    comp[static_cast<std::size_t>(*it)] = ncomp;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : rev[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = ncomp;
          stack.push_back(v);
        }
      }
    }
    ++ncomp;
  }
  return comp;
}

// Certified two-sided bounds on the spectral radius of a nonnegative
// irreducible integer matrix via Collatz-Wielandt ratios of A + I.
std::pair<Rational, Rational> spectral_radius_bounds(const std::vector<std::vector<long>>& a,
                                                     double gap_target) {
  const std::size_t n = a.size();
  std::vector<BigInt> v(n, BigInt(1));
  Rational lo(0), hi(0);
  const BigInt scale = BigInt(1) << 48;
  for (int iter = 0; iter < 20000; ++iter) {
    std::vector<BigInt> w(n, BigInt(0));
    for (std::size_t i = 0; i < n; ++i) {
      BigInt acc = v[i];  // the +I term
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j]) acc += BigInt(a[i][j]) * v[j];
      w[i] = acc;
    }
    lo = Rational(w[0], v[0]);
    hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
      const Rational q(w[i], v[i]);
      if (q < lo) lo = q;
      if (q > hi) hi = q;
    }
    if (Rational(hi - lo).convert_to<double>() < gap_target && lo > 1) break;
    BigInt wmax = *std::max_element(w.begin(), w.end());
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = (w[i] * scale) / wmax;
      if (v[i] == 0) v[i] = 1;
    }
  }
  return {lo - 1, hi - 1};  // bounds on the eigenvalue of A itself
}

}  // namespace

GrowthAutomaton build_automaton(const CriticalPair& pair) {
  if (!pair.alpha.is_eventually_periodic() || !pair.beta.is_eventually_periodic())
    throw std::invalid_argument("build_automaton: both words must be eventually periodic");
  return automaton_from_matcher(matcher_for(pair));
}

namespace {

bool word_allowed(const std::vector<Bit>& w, const CriticalPair& pair) {
  const std::size_t len = w.size();
  for (std::size_t n = 0; n < len; ++n) {
    const bool alpha_window = w[n] == 0;
    const Word& ref = alpha_window ? pair.alpha : pair.beta;
    for (std::size_t i = 1; n + i < len; ++i) {
      const Bit expect = ref.at(i);
      const Bit got = w[n + i];
      if (got == expect) continue;
      // First divergence decides the window: above alpha / below beta is
      // forbidden, the other direction is safe.
      if (alpha_window ? (got == 1) : (got == 0)) return false;
      break;
    }
  }
  return true;
}

}  // namespace

BigInt count_prefixes(const CriticalPair& pair, uint64_t len, CountMethod method) {
  if (len == 0) return BigInt(1);
  if (method == CountMethod::BruteForce) {
    if (len > 24) throw std::invalid_argument("count_prefixes: brute force guarded at L > 24");
    BigInt total(0);
    std::vector<Bit> w(static_cast<std::size_t>(len), 0);
    const uint64_t top = uint64_t(1) << len;
    for (uint64_t code = 0; code < top; ++code) {
      for (uint64_t i = 0; i < len; ++i) w[static_cast<std::size_t>(i)] = (code >> i) & 1u;
      if (word_allowed(w, pair)) ++total;
    }
    return total;
  }
  const GrowthAutomaton g = build_automaton(pair);
  return path_counts(g, len, /*trimmed_only=*/false).back();
}

GrowthReport classify_growth(const CriticalPair& pair, uint64_t report_len) {
  GrowthReport rep;
  rep.mode = GrowthMode::Exact;
  const GrowthAutomaton g = build_automaton(pair);
  rep.counts = path_counts(g, report_len, /*trimmed_only=*/false);

  const std::vector<int> comp = scc_of(g);
  const int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::vector<int>> members(static_cast<std::size_t>(ncomp));
  for (int s = 0; s < g.size(); ++s)
    if (comp[static_cast<std::size_t>(s)] >= 0)
      members[static_cast<std::size_t>(comp[static_cast<std::size_t>(s)])].push_back(s);

  bool expanding = false;
  Rational best_lo(0), best_hi(0);
  for (const auto& scc : members) {
    if (scc.empty()) continue;
    // Internal transition counts (with multiplicity).
    std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
    for (std::size_t i = 0; i < scc.size(); ++i) local[static_cast<std::size_t>(scc[i])] = static_cast<int>(i);
    std::vector<std::vector<long>> a(scc.size(), std::vector<long>(scc.size(), 0));
    bool internal_edge = false;
    bool multi_out = false;
    for (std::size_t i = 0; i < scc.size(); ++i) {
      long out = 0;
      for (Bit bit : {Bit(0), Bit(1)}) {
        const int t = g.next[static_cast<std::size_t>(scc[i])][bit];
        if (t < 0 || local[static_cast<std::size_t>(t)] < 0) continue;
        ++a[i][static_cast<std::size_t>(local[static_cast<std::size_t>(t)])];
        ++out;
        internal_edge = true;
      }
      if (out >= 2) multi_out = true;
    }
    if (!internal_edge || !multi_out) continue;  // trivial SCC or a simple cycle
    expanding = true;
    const auto [lo, hi] = spectral_radius_bounds(a, 1e-11);
    if (hi > best_hi) {
      best_lo = lo;
      best_hi = hi;
    }
  }

  std::ostringstream notes;
  notes << "automaton: " << g.size() << " states (" << g.trimmed_away
        << " trimmed); counts are the sofic cover (both signs share the forbidden "
           "factors; exact-word boundary exclusions change counts by at most O(L)); "
           "h(union) equals the common rate.";
  if (!expanding) {
    rep.classification = GrowthClass::Null;
    rep.rate = PrecisionReal::exact(0L);
    notes << " every recurrent component is a simple cycle (polynomial growth).";
  } else {
    rep.classification = GrowthClass::NonNull;
    PrecisionGuard guard(30);
    const Real llo = boost::multiprecision::log(Real(best_lo));
    const Real lhi = boost::multiprecision::log(Real(best_hi));
    rep.rate = PrecisionReal((llo + lhi) / 2, (lhi - llo) / 2 + ulp_of(lhi));
    notes << " rate = ln(spectral radius) with certified Collatz-Wielandt bounds.";
  }
  rep.method_notes = notes.str();
  return rep;
}

GrowthReport estimate_growth(const CriticalPair& pair, uint64_t max_len, EstimateOptions opts) {
  if (max_len == 0) throw std::invalid_argument("estimate_growth: max_len must be >= 1");
  if (max_len + 1 > pair.alpha.depth_limit() || max_len + 1 > pair.beta.depth_limit())
    throw DepthExhausted("estimate_growth: stream depth insufficient for requested length");
  GrowthReport rep;
  rep.mode = GrowthMode::Estimate;

  const int cap = static_cast<int>(max_len);
  const PairMatcher pm{SideMatcher::from_prefix(pair.alpha, true, cap),
                       SideMatcher::from_prefix(pair.beta, false, cap)};
  // Exact counting of the cover language: match lengths never exceed the
  // word length, so the uncapped matcher is exact up to max_len.
  std::map<int, BigInt> level{{pm.encode(0, 0), BigInt(1)}};
  for (uint64_t len = 1; len <= max_len; ++len) {
    std::map<int, BigInt> nxt;
    for (const auto& [state, cnt] : level) {
      for (Bit bit : {Bit(0), Bit(1)}) {
        const int t = pm.step(state, bit);
        if (t >= 0) nxt[t] += cnt;
      }
    }
    level.swap(nxt);
    BigInt total(0);
    for (const auto& [state, cnt] : level) total += cnt;
    rep.counts.push_back(total);
  }

  PrecisionGuard guard(30);
  const Real ln_count = boost::multiprecision::log(Real(rep.counts.back()));
  rep.rate = PrecisionReal(ln_count / Real(static_cast<long>(max_len)), ulp_of(ln_count));
  const Real margin = rep.rate.value() - rep.rate.error_bound();
  rep.classification =
      (margin > Real(opts.nonnull_threshold)) ? GrowthClass::NonNull : GrowthClass::Unknown;
  std::ostringstream notes;
  notes << "depth-limited estimate to length " << max_len
        << "; (1/L) ln(counts[L]) is an upper bound on the true rate "
           "(factorial-language subadditivity); classification NonNull requires the "
           "bound to clear the threshold "
        << opts.nonnull_threshold << " with margin.";
  rep.method_notes = notes.str();
  return rep;
}

}  // namespace ovl
