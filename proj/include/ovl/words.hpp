#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ovl/precision.hpp"

namespace ovl {

using Bit = uint8_t;

struct DepthExhausted : std::runtime_error {
  explicit DepthExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// A finite binary string.
struct FiniteWord {
  std::vector<Bit> bits;

  FiniteWord() = default;
  explicit FiniteWord(std::vector<Bit> b);
  static FiniteWord from_string(std::string_view s);

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  Bit operator[](std::size_t i) const { return bits[i]; }
  std::string str() const;
  bool operator==(const FiniteWord&) const = default;
};

/// An eventually periodic infinite word pre (per)^inf, kept in canonical
/// form: the period is primitive and the preperiod is minimal (its last
/// symbol differs from the last period symbol). Equality is structural.
class EPWord {
 public:
  EPWord(FiniteWord pre, FiniteWord per);

  const FiniteWord& preperiod() const { return pre_; }
  const FiniteWord& period() const { return per_; }
  Bit at(uint64_t n) const;
  /// Shifts beyond this index revisit earlier shifts: |pre| + |per|.
  uint64_t cycle_bound() const { return pre_.size() + per_.size(); }
  bool operator==(const EPWord&) const = default;

 private:
  FiniteWord pre_, per_;
};

/// A deterministic index-to-symbol rule with an explicit depth guarantee.
struct StreamRule {
  std::string name;
  uint64_t available_depth;
  std::function<Bit(uint64_t)> bit;
};

/// A rule-defined infinite word, possibly shifted by a fixed offset.
class SymbolStream {
 public:
  explicit SymbolStream(std::shared_ptr<const StreamRule> rule, uint64_t offset = 0);

  Bit at(uint64_t n) const;  // throws DepthExhausted past the guaranteed depth
  uint64_t available_depth() const;  // remaining depth after the offset
  const std::string& name() const { return rule_->name; }
  uint64_t offset() const { return offset_; }
  const std::shared_ptr<const StreamRule>& rule() const { return rule_; }

 private:
  std::shared_ptr<const StreamRule> rule_;
  uint64_t offset_;
};

/// An infinite binary word: exactly representable (EPWord) or rule-defined.
class Word {
 public:
  Word(EPWord w) : rep_(std::move(w)) {}
  Word(SymbolStream s) : rep_(std::move(s)) {}

  bool is_eventually_periodic() const { return std::holds_alternative<EPWord>(rep_); }
  const EPWord& ep() const { return std::get<EPWord>(rep_); }
  const SymbolStream& stream() const { return std::get<SymbolStream>(rep_); }

  Bit at(uint64_t n) const;
  /// Maximum index guaranteed computable (UINT64_MAX for EPWords).
  uint64_t depth_limit() const;

 private:
  std::variant<EPWord, SymbolStream> rep_;
};

enum class Order { LT, EQ, GT, Unknown };

struct CompareResult {
  Order order;
  /// For LT/GT the first differing index; for EQ the exactness bound used;
  /// for Unknown the number of symbols compared.
  uint64_t decided_at;
};

/// Grammar: WORD := BITS | BITS "(" BITS ")" | "(" BITS ")" | "@" NAME.
/// Bare BITS is read as BITS followed by all zeros. "@NAME+k" denotes a
/// registered stream shifted k places.
Word parse_word(const std::string& text);
std::string format_word(const Word& w);

Bit symbol_at(const Word& w, uint64_t n);

/// Lexicographic comparison. For two EPWords the result is exact (EQ is
/// decided at |pre_u| + |pre_v| + lcm(|per_u|, |per_v|) symbols). When a
/// stream is involved and no difference appears within the depth budget,
/// the result is Unknown.
CompareResult lex_compare(const Word& u, const Word& v,
                          std::optional<uint64_t> depth = std::nullopt);

Word shift(const Word& w, uint64_t n);
FiniteWord prefix(const Word& w, uint64_t len);

/// d(u, v) = 2^{-k} with k the first differing index; 0 if equal.
/// Throws DepthExhausted if a stream comparison cannot be resolved.
PrecisionReal distance(const Word& u, const Word& v,
                       std::optional<uint64_t> depth = std::nullopt);

/// Registry of built-in streams ("primes": symbol n is 1 iff n+1 is prime,
/// sieve-backed to depth 10^6).
std::shared_ptr<const StreamRule> builtin_stream(const std::string& name);
std::vector<std::string> builtin_stream_names();

}  // namespace ovl
