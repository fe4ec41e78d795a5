#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ovl/words.hpp"

using namespace ovl;

TEST_CASE("EPWord canonical form") {
  // Non-primitive period collapses.
  EPWord w(FiniteWord::from_string(""), FiniteWord::from_string("0101"));
  CHECK(w.period().str() == "01");

  // Preperiod symbols absorbed into the rotated period.
  EPWord u(FiniteWord::from_string("0"), FiniteWord::from_string("10"));
  CHECK(u.preperiod().empty());
  CHECK(u.period().str() == "01");

  EPWord v(FiniteWord::from_string("011"), FiniteWord::from_string("1"));
  CHECK(v.preperiod().str() == "0");
  CHECK(v.period().str() == "1");

  CHECK(u == EPWord(FiniteWord{}, FiniteWord::from_string("01")));
}

TEST_CASE("parse and format round-trip") {
  CHECK(format_word(parse_word("0(10)")) == "(01)");
  CHECK(format_word(parse_word("1(0)")) == "1(0)");
  CHECK(format_word(parse_word("01(10)")) == "01(10)");
  // Bare bits mean "followed by zeros".
  CHECK(format_word(parse_word("0110")) == "011(0)");
  CHECK(format_word(parse_word("@primes")) == "@primes");

  CHECK_THROWS_AS(parse_word(""), ParseError);
  CHECK_THROWS_AS(parse_word("01(2)"), ParseError);
  CHECK_THROWS_AS(parse_word("01()"), ParseError);
  CHECK_THROWS_AS(parse_word("@nosuch"), ParseError);
}

TEST_CASE("symbol access and shift") {
  const Word w = parse_word("01(10)");
  const Bit expect[] = {0, 1, 1, 0, 1, 0, 1, 0};
  for (uint64_t i = 0; i < 8; ++i) CHECK(w.at(i) == expect[i]);

  const Word s2 = shift(w, 2);
  CHECK(format_word(s2) == "(10)");
  const Word s3 = shift(w, 3);
  CHECK(format_word(s3) == "(01)");
  CHECK(shift(s3, 2).ep() == s3.ep());
}

TEST_CASE("lex_compare on EPWords is exact") {
  const Word a = parse_word("(01)");
  const Word b = parse_word("1(0)");
  CHECK(lex_compare(a, b).order == Order::LT);
  CHECK(lex_compare(b, a).order == Order::GT);
  CHECK(lex_compare(a, parse_word("0(10)")).order == Order::EQ);

  // Differ only deep into the period structure.
  const Word u = parse_word("(011011)");
  const Word v = parse_word("(011)");
  CHECK(lex_compare(u, v).order == Order::EQ);
  const Word x = parse_word("(011010)");
  CHECK(lex_compare(x, v).order == Order::LT);
  CHECK(lex_compare(x, v).decided_at == 5);
}

TEST_CASE("lex_compare with streams reports Unknown when depth-capped") {
  const Word primes(SymbolStream(builtin_stream("primes")));
  // The prime indicator starts 0 1 1 0 1 0 1 ...
  CHECK(primes.at(0) == 0);
  CHECK(primes.at(1) == 1);
  CHECK(primes.at(2) == 1);
  CHECK(primes.at(3) == 0);
  CHECK(primes.at(4) == 1);

  const Word same_prefix = parse_word("0110101(0)");
  const CompareResult r = lex_compare(primes, same_prefix, 5);
  CHECK(r.order == Order::Unknown);
  // With more depth the words separate (indices 8.. differ eventually).
  CHECK(lex_compare(primes, same_prefix, 50).order != Order::Unknown);
}

TEST_CASE("distance metric") {
  PrecisionGuard guard(30);
  const Word a = parse_word("(01)");
  const Word b = parse_word("01(10)");
  // First difference at index 2.
  CHECK(distance(a, b).value() == Real(0.25));
  CHECK(distance(a, parse_word("0(10)")).value() == 0);
}

TEST_CASE("prime stream matches a sieve") {
  const auto rule = builtin_stream("primes");
  const SymbolStream s(rule);
  const uint64_t n = 10000;
  std::vector<char> sieve(n + 2, 1);
  sieve[0] = sieve[1] = 0;
  for (uint64_t i = 2; i * i <= n + 1; ++i)
    if (sieve[i])
      for (uint64_t k = i * i; k <= n + 1; k += i) sieve[k] = 0;
  for (uint64_t k = 0; k < n; ++k) {
    REQUIRE(s.at(k) == static_cast<Bit>(sieve[k + 1]));
  }
  CHECK(s.available_depth() >= 1000000);
}

TEST_CASE("stream shift offsets the rule") {
  const Word w(SymbolStream(builtin_stream("primes")));
  const Word s = shift(w, 3);
  for (uint64_t k = 0; k < 50; ++k) CHECK(s.at(k) == w.at(k + 3));
  CHECK(format_word(s) == "@primes+3");
  CHECK(format_word(parse_word("@primes+3")) == "@primes+3");
}

TEST_CASE("prefix extraction") {
  CHECK(prefix(parse_word("01(10)"), 6).str() == "011010");
  CHECK(prefix(parse_word("1(0)"), 4).str() == "1000");
}
