#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ovl/admissibility.hpp"

using namespace ovl;

namespace {
CriticalPair make(const char* a, const char* b) {
  return CriticalPair(parse_word(a), parse_word(b));
}
}  // namespace

TEST_CASE("interval membership under both closures") {
  const Word lo = parse_word("(01)");
  const Word hi = parse_word("1(0)");
  const Word mid = parse_word("011(0)");
  CHECK(interval_contains(mid, lo, hi, Closure::OpenClosed) == TriBool::True);
  CHECK(interval_contains(lo, lo, hi, Closure::OpenClosed) == TriBool::False);
  CHECK(interval_contains(hi, lo, hi, Closure::OpenClosed) == TriBool::True);
  CHECK(interval_contains(lo, lo, hi, Closure::ClosedOpen) == TriBool::True);
  CHECK(interval_contains(hi, lo, hi, Closure::ClosedOpen) == TriBool::False);
  CHECK(interval_contains(parse_word("(0)"), lo, hi, Closure::ClosedOpen) == TriBool::False);
}

TEST_CASE("named admissible pairs") {
  CHECK(check_admissible(make("0(1)", "1(0)")).verdict == Verdict::Admissible);
  CHECK(check_admissible(make("0(10)", "1(0)")).verdict == Verdict::Admissible);
  CHECK(check_admissible(make("01(10)", "10(01)")).verdict == Verdict::Admissible);
}

TEST_CASE("first-symbol conditions") {
  auto r1 = check_admissible(make("(10)", "1(0)"));  // alpha must start 01
  CHECK(r1.verdict == Verdict::NotAdmissible);
  REQUIRE(r1.witness.has_value());
  CHECK(r1.witness->on_alpha);

  auto r2 = check_admissible(make("0(1)", "(01)"));  // beta must start 10
  CHECK(r2.verdict == Verdict::NotAdmissible);
  REQUIRE(r2.witness.has_value());
  CHECK_FALSE(r2.witness->on_alpha);
}

TEST_CASE("shift-condition witness") {
  // S alpha = 1(0) = beta lands in (alpha, beta].
  const auto rep = check_admissible(make("01(0)", "1(0)"));
  CHECK(rep.verdict == Verdict::NotAdmissible);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->on_alpha);
  CHECK(rep.witness->shift_index == 1);
}

TEST_CASE("EPWord pairs certify for all shifts") {
  const auto rep = check_admissible(make("0(10)", "1(0)"));
  CHECK(rep.alpha_exact);
  CHECK(rep.beta_exact);
}

TEST_CASE("stream pair is admissible with every comparison resolved") {
  const auto rep = check_admissible(make("@primes", "1(0)"));
  CHECK(rep.verdict == Verdict::Admissible);
  CHECK(rep.checked_depth == kDefaultStreamDepth);
  CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("structurally equal words rejected") {
  CHECK_THROWS_AS(make("(01)", "0(10)"), std::invalid_argument);
}

TEST_CASE("address space membership") {
  const CriticalPair pair = make("01(10)", "10(01)");
  // The periodic word (0110) satisfies every shift condition.
  CHECK(in_address_space(parse_word("(0110)"), pair, Sign::Minus, 200) == TriBool::True);
  // A word containing the forbidden factor 0111 does not.
  CHECK(in_address_space(parse_word("0111(01)"), pair, Sign::Minus, 200) == TriBool::False);
  // beta itself is excluded from the minus space but not the plus space.
  CHECK(in_address_space(parse_word("10(01)"), pair, Sign::Minus, 200) == TriBool::False);
  CHECK(in_address_space(parse_word("10(01)"), pair, Sign::Plus, 200) == TriBool::True);
}
