#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ovl/dynamics.hpp"
#include "ovl/growth.hpp"

using namespace ovl;

namespace {

CriticalPair make(const char* a, const char* b) {
  return CriticalPair(parse_word(a), parse_word(b));
}

Real abs_real(const Real& x) { return boost::multiprecision::abs(x); }

OverlapParams doubling_map(Sign sign = Sign::Minus) {
  return {PrecisionReal::exact(2L), PrecisionReal::exact(Real("0.5")), sign};
}

OverlapParams sqrt2_map(unsigned digits, Sign sign = Sign::Minus) {
  PrecisionGuard guard(digits);
  const Real s = boost::multiprecision::sqrt(Real(2));
  return {PrecisionReal(s, ulp_of(s)), PrecisionReal::exact(Real("0.5")), sign};
}

}  // namespace

TEST_CASE("map evaluation and branch selection") {
  const OverlapParams f = doubling_map();
  const MapStep left = eval_map(f, PrecisionReal::exact(Real("0.5")));
  CHECK(left.symbol == 0);  // minus convention: x = p goes left
  CHECK(left.at_boundary);
  CHECK(left.y.value() == 1);

  const MapStep right = eval_map(f, PrecisionReal::exact(Real("0.75")));
  CHECK(right.symbol == 1);
  CHECK(right.y.value() == Real("0.5"));

  const OverlapParams g = doubling_map(Sign::Plus);
  const MapStep conv = eval_map(g, PrecisionReal::exact(Real("0.5")));
  CHECK(conv.symbol == 1);  // plus convention: x = p goes right
  CHECK(conv.y.value() == 0);

  const OverlapParams h = sqrt2_map(40, Sign::Plus);
  const MapStep boundary = eval_map(h, PrecisionReal::exact(Real("0.5")));
  CHECK(boundary.symbol == 1);
  CHECK(boundary.y.value().convert_to<double>() == doctest::Approx(1 - std::sqrt(2) / 2));
}

TEST_CASE("parameter invariants") {
  CHECK_FALSE(params_violation(doubling_map()).has_value());
  CHECK(params_violation({PrecisionReal::exact(Real("0.9")), PrecisionReal::exact(Real("0.5")),
                          Sign::Minus})
            .has_value());
  CHECK(params_violation({PrecisionReal::exact(2L), PrecisionReal::exact(Real("0.9")),
                          Sign::Minus})
            .has_value());
  // Overlap of the branch images is equivalent to the p-range invariant.
  const OverlapParams f = sqrt2_map(40);
  const Real ap = (f.a * f.p).value();
  CHECK(ap >= ap + 1 - f.a.value() - Real("1e-30"));
}

TEST_CASE("orbit examples") {
  const OverlapParams f = doubling_map();
  const auto o = orbit(f, PrecisionReal::exact(Real("0.5")), 3);
  REQUIRE(o.size() == 4);
  CHECK(o[0].value() == Real("0.5"));
  CHECK(o[1].value() == 1);
  CHECK(o[2].value() == 1);
  CHECK(o[3].value() == 1);

  const auto single = orbit(f, PrecisionReal::exact(Real("0.3")), 0);
  CHECK(single.size() == 1);

  const OverlapParams g = sqrt2_map(40);
  const auto o2 = orbit(g, g.p, 4);
  const double expect[] = {0.5, 0.70710678, 0.58578644, 0.41421356, 0.58578644};
  for (int i = 0; i <= 4; ++i)
    CHECK(o2[static_cast<std::size_t>(i)].value().convert_to<double>() ==
          doctest::Approx(expect[i]).epsilon(1e-6));
}

TEST_CASE("itinerary examples") {
  CHECK(itinerary(doubling_map(), PrecisionReal::exact(Real("0.5")), 5).str() == "01111");
  CHECK(itinerary(doubling_map(Sign::Plus), PrecisionReal::exact(Real("0.5")), 5).str() ==
        "10000");
  CHECK(itinerary(sqrt2_map(40), PrecisionReal::exact(Real("0.5")), 6).str() == "011010");
}

TEST_CASE("critical itineraries of closed-form parameters") {
  const auto [tm, tp] = critical_itineraries(doubling_map(), 8);
  CHECK(tm.str() == "01111111");
  CHECK(tp.str() == "10000000");

  const auto [sm, sp] = critical_itineraries(sqrt2_map(50), 8);
  CHECK(sm.str() == "01101010");  // 01(10)
  CHECK(sp.str() == "10010101");  // 10(01)
}

TEST_CASE("reconstruct the doubling pair exactly") {
  const ReconstructionReport rep = reconstruct(make("0(1)", "1(0)"), {.verify_len = 64});
  REQUIRE(rep.status == ReconstructStatus::Verified);
  REQUIRE(rep.params.has_value());
  CHECK(abs_real(rep.params->a.value() - 2) <= rep.params->a.error_bound() + Real("1e-12"));
  CHECK(abs_real(rep.params->p.value() - Real("0.5")) <=
        rep.params->p.error_bound() + Real("1e-12"));
  CHECK(rep.round_trip.verified_depth == 64);
}

TEST_CASE("reconstruct the golden pair with an exactly periodic critical orbit") {
  const ReconstructionReport rep = reconstruct(make("0(10)", "1(0)"), {.verify_len = 64});
  REQUIRE(rep.status == ReconstructStatus::Verified);
  PrecisionGuard guard(40);
  const Real phi = (1 + boost::multiprecision::sqrt(Real(5))) / 2;
  CHECK(abs_real(rep.params->a.value() - phi) <= rep.params->a.error_bound() + Real("1e-10"));
  CHECK(abs_real(rep.params->p.value() - (3 - boost::multiprecision::sqrt(Real(5))) / 2) <=
        rep.params->p.error_bound() + Real("1e-10"));
}

TEST_CASE("reconstruct the alternating-doubles pair (reported erratum)") {
  const ReconstructionReport rep = reconstruct(make("01(10)", "10(01)"), {.verify_len = 64});
  REQUIRE(rep.status == ReconstructStatus::Verified);
  PrecisionGuard guard(40);
  const Real sqrt2 = boost::multiprecision::sqrt(Real(2));
  CHECK(abs_real(rep.params->a.value() - sqrt2) <= rep.params->a.error_bound() + Real("1e-10"));
  CHECK(abs_real(rep.params->p.value() - Real("0.5")) <=
        rep.params->p.error_bound() + Real("1e-10"));
}

TEST_CASE("reconstruct the prime pair") {
  const ReconstructionReport rep =
      reconstruct(CriticalPair(Word(SymbolStream(builtin_stream("primes"))), parse_word("1(0)")),
                  {.verify_len = 200});
  REQUIRE(rep.status == ReconstructStatus::Verified);
  const double a = rep.params->a.value().convert_to<double>();
  const double p = rep.params->p.value().convert_to<double>();
  CHECK(a == doctest::Approx(1.792568768).epsilon(1e-9));
  CHECK(p == doctest::Approx(0.4421413462).epsilon(1e-9));
  CHECK(rep.round_trip.verified_depth == 200);
}

TEST_CASE("reconstruct failure modes") {
  // No projection root.
  const ReconstructionReport none = reconstruct(make("01(0)", "1(0)"), {.verify_len = 16});
  CHECK(none.status == ReconstructStatus::NotAdmissible);  // witnessed at n = 1

  // Skipping admissibility is impossible by design; a non-admissible pair
  // with a root still stops early.
  const ReconstructionReport bad = reconstruct(make("(01)", "(10)"), {.verify_len = 16});
  CHECK(bad.status == ReconstructStatus::NotAdmissible);
}

TEST_CASE("perturbed parameters are caught by round-trip verification") {
  const CriticalPair pair = make("0(1)", "1(0)");
  PrecisionGuard guard(60);
  const PrecisionReal r(Real("0.5"), Real("1e-40"));
  const OverlapParams off{PrecisionReal::exact(2L),
                          PrecisionReal(Real("0.500001"), Real("1e-40")), Sign::Minus};
  const RoundTripReport rep = round_trip_verify(pair, off, r, 64);
  CHECK(rep.verdict == RoundTripVerdict::Mismatch);
  REQUIRE(rep.mismatch_index.has_value());
  CHECK(*rep.mismatch_index < 30);
}

TEST_CASE("proof identity: orbit equals projected shifts") {
  // Verified reconstructions imply f^n(p) = pi_r(S^n beta); spot-check the
  // enclosures directly for the golden pair.
  const ReconstructionReport rep = reconstruct(make("0(10)", "1(0)"), {.verify_len = 100});
  REQUIRE(rep.status == ReconstructStatus::Verified);
  PrecisionGuard guard(rep.digits_used);
  const OverlapParams& f = *rep.params;
  const Word beta = parse_word("1(0)");
  PrecisionReal x = apply_branch(f, f.p, 1);
  for (uint64_t n = 1; n < 50; ++n) {
    const PrecisionReal proj = project(shift(beta, n), rep.r, Real("1e-40"));
    CHECK(x.lower() <= proj.upper());
    CHECK(proj.lower() <= x.upper());
    x = f.a * x;  // the tail of beta is all zeros: always the left branch
  }
}

TEST_CASE("conjugacy identity on automaton-accepted words") {
  const CriticalPair pair = make("01(10)", "10(01)");
  const ReconstructionReport rec = reconstruct(pair, {.verify_len = 32});
  REQUIRE(rec.status == ReconstructStatus::Verified);
  PrecisionGuard guard(60);
  const OverlapParams& f = *rec.params;

  const GrowthAutomaton g = build_automaton(pair);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coin(0, 1);
  int checked = 0;
  while (checked < 100) {
    // Random walk on the trimmed automaton, extended periodically.
    std::vector<Bit> bits;
    int state = g.start;
    for (int i = 0; i < 24; ++i) {
      Bit b = static_cast<Bit>(coin(rng));
      int t = g.next[static_cast<std::size_t>(state)][b];
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) {
        b = static_cast<Bit>(1 - b);
        t = g.next[static_cast<std::size_t>(state)][b];
      }
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) break;
      bits.push_back(b);
      state = t;
    }
    if (bits.size() < 24) continue;
    ++checked;
    const Word w(EPWord(FiniteWord{}, FiniteWord(bits)));
    const PrecisionReal pw = project(w, rec.r, Real("1e-40"));
    const PrecisionReal psw = project(shift(w, 1), rec.r, Real("1e-40"));
    const PrecisionReal fw = apply_branch(f, pw, w.at(0));
    CHECK(abs_real(fw.value() - psw.value()) <=
          fw.error_bound() + psw.error_bound() + Real("1e-10"));
  }
}

TEST_CASE("monotone projection on sorted address-space samples") {
  const CriticalPair pair = make("0(10)", "1(0)");
  const ReconstructionReport rec = reconstruct(pair, {.verify_len = 32});
  REQUIRE(rec.status == ReconstructStatus::Verified);
  PrecisionGuard guard(60);

  const GrowthAutomaton g = build_automaton(pair);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Word> words;
  while (words.size() < 1000) {
    std::vector<Bit> bits;
    int state = g.start;
    for (int i = 0; i < 20; ++i) {
      Bit b = static_cast<Bit>(coin(rng));
      int t = g.next[static_cast<std::size_t>(state)][b];
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) {
        b = static_cast<Bit>(1 - b);
        t = g.next[static_cast<std::size_t>(state)][b];
      }
      if (t < 0 || !g.alive[static_cast<std::size_t>(t)]) break;
      bits.push_back(b);
      state = t;
    }
    if (bits.size() < 20) continue;
    words.emplace_back(EPWord(FiniteWord(std::move(bits)), FiniteWord::from_string("0")));
  }
  std::sort(words.begin(), words.end(), [](const Word& u, const Word& v) {
    return lex_compare(u, v).order == Order::LT;
  });
  int ties = 0;
  for (std::size_t i = 1; i < words.size(); ++i) {
    const CompareResult c = lex_compare(words[i - 1], words[i]);
    if (c.order == Order::EQ) {
      ++ties;
      continue;
    }
    const PrecisionReal lo = project(words[i - 1], rec.r, Real("1e-40"));
    const PrecisionReal hi = project(words[i], rec.r, Real("1e-40"));
    REQUIRE(lo.upper() < hi.lower());
  }
  CHECK(ties < 900);  // sampling duplicates are fine, just not everything
}

TEST_CASE("primality indicator matches a sieve") {
  const uint64_t nmax = 300;
  const std::vector<Bit> ind = primality_indicator(nmax);
  REQUIRE(ind.size() == nmax + 1);
  std::vector<char> sieve(nmax + 1, 1);
  sieve[0] = sieve[1] = 0;
  for (uint64_t i = 2; i * i <= nmax; ++i)
    if (sieve[i])
      for (uint64_t k = i * i; k <= nmax; k += i) sieve[k] = 0;
  for (uint64_t n = 2; n <= nmax; ++n) REQUIRE(ind[n] == static_cast<Bit>(sieve[n]));
}

TEST_CASE("address-space inclusion: sampled words are their own itineraries") {
  const CriticalPair pair = make("01(10)", "10(01)");
  const ReconstructionReport rec = reconstruct(pair, {.verify_len = 64});
  REQUIRE(rec.status == ReconstructStatus::Verified);
  PrecisionGuard guard(120);
  const OverlapParams& f = *rec.params;
  // (0110) repeated is accepted; its projection's itinerary is itself.
  const Word w = parse_word("(0110)");
  const PrecisionReal x0 = project(w, rec.r, Real("1e-90"));
  const FiniteWord it = itinerary(f, x0, 50);
  for (uint64_t k = 0; k < 50; ++k) REQUIRE(it[k] == w.at(k));
}
