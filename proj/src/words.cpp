#include "ovl/words.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ovl {

FiniteWord::FiniteWord(std::vector<Bit> b) : bits(std::move(b)) {
  for (Bit x : bits) {
    if (x > 1) throw std::invalid_argument("FiniteWord: symbol not in {0,1}");
  }
}

FiniteWord FiniteWord::from_string(std::string_view s) {
  std::vector<Bit> b;
  b.reserve(s.size());
  for (char c : s) {
    if (c == '0') b.push_back(0);
    else if (c == '1') b.push_back(1);
    else throw ParseError("non-binary character in word literal");
  }
  return FiniteWord(std::move(b));
}

std::string FiniteWord::str() const {
  std::string s;
  s.reserve(bits.size());
  for (Bit b : bits) s.push_back(b ? '1' : '0');
  return s;
}

namespace {

// Smallest d such that per is (per|_d)^(|per|/d).
std::size_t primitive_root_length(const std::vector<Bit>& per) {
  const std::size_t n = per.size();
  for (std::size_t d = 1; d <= n / 2; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = per[i] == per[i % d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

EPWord::EPWord(FiniteWord pre, FiniteWord per) : pre_(std::move(pre)), per_(std::move(per)) {
  if (per_.empty()) throw std::invalid_argument("EPWord: empty period");
  const std::size_t d = primitive_root_length(per_.bits);
  per_.bits.resize(d);
  // Absorb preperiod symbols that merely repeat the tail of the period:
  // pre c (q c)^inf == pre (c q)^inf.
  while (!pre_.bits.empty() && pre_.bits.back() == per_.bits.back()) {
    pre_.bits.pop_back();
    std::rotate(per_.bits.begin(), per_.bits.end() - 1, per_.bits.end());
  }
}

Bit EPWord::at(uint64_t n) const {
  if (n < pre_.size()) return pre_[static_cast<std::size_t>(n)];
  return per_[static_cast<std::size_t>((n - pre_.size()) % per_.size())];
}

SymbolStream::SymbolStream(std::shared_ptr<const StreamRule> rule, uint64_t offset)
    : rule_(std::move(rule)), offset_(offset) {
  if (!rule_) throw std::invalid_argument("SymbolStream: null rule");
  if (offset_ > rule_->available_depth)
    throw DepthExhausted("stream '" + rule_->name + "': shift exceeds available depth");
}

Bit SymbolStream::at(uint64_t n) const {
  if (n >= available_depth())
    throw DepthExhausted("stream '" + rule_->name + "': index " + std::to_string(n) +
                         " beyond available depth " + std::to_string(available_depth()));
  return rule_->bit(offset_ + n);
}

uint64_t SymbolStream::available_depth() const { return rule_->available_depth - offset_; }

Bit Word::at(uint64_t n) const {
  if (is_eventually_periodic()) return ep().at(n);
  return stream().at(n);
}

uint64_t Word::depth_limit() const {
  if (is_eventually_periodic()) return UINT64_MAX;
  return stream().available_depth();
}

Bit symbol_at(const Word& w, uint64_t n) { return w.at(n); }

Word parse_word(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty word literal");
  if (s[0] == '@') {
    std::string name = s.substr(1);
    uint64_t off = 0;
    if (auto plus = name.find('+'); plus != std::string::npos) {
      off = std::stoull(name.substr(plus + 1));
      name = name.substr(0, plus);
    }
    return Word(SymbolStream(builtin_stream(name), off));
  }
  const auto open = s.find('(');
  if (open == std::string::npos) {
    // Bare BITS: finite word continued by zeros.
    return Word(EPWord(FiniteWord::from_string(s), FiniteWord::from_string("0")));
  }
  if (s.back() != ')' || s.find(')') != s.size() - 1)
    throw ParseError("malformed parentheses in word literal");
  const std::string pre = s.substr(0, open);
  const std::string per = s.substr(open + 1, s.size() - open - 2);
  if (per.empty()) throw ParseError("empty period");
  return Word(EPWord(FiniteWord::from_string(pre), FiniteWord::from_string(per)));
}

std::string format_word(const Word& w) {
  if (w.is_eventually_periodic()) {
    const EPWord& e = w.ep();
    return e.preperiod().str() + "(" + e.period().str() + ")";
  }
  const SymbolStream& s = w.stream();
  if (s.offset() == 0) return "@" + s.name();
  return "@" + s.name() + "+" + std::to_string(s.offset());
}

CompareResult lex_compare(const Word& u, const Word& v, std::optional<uint64_t> depth) {
  // Two views of the same stream at the same offset are equal by identity;
  // symbol-by-symbol comparison could never certify this.
  if (!u.is_eventually_periodic() && !v.is_eventually_periodic() &&
      u.stream().name() == v.stream().name() && u.stream().offset() == v.stream().offset()) {
    return {Order::EQ, 0};
  }
  uint64_t limit;
  bool exact = false;
  if (u.is_eventually_periodic() && v.is_eventually_periodic()) {
    const uint64_t lu = u.ep().period().size(), lv = v.ep().period().size();
    limit = u.ep().preperiod().size() + v.ep().preperiod().size() + std::lcm(lu, lv);
    exact = true;
    if (depth) limit = std::min(limit, *depth), exact = (limit >= u.ep().preperiod().size() +
                                                                      v.ep().preperiod().size() +
                                                                      std::lcm(lu, lv));
  } else {
    limit = std::min(u.depth_limit(), v.depth_limit());
    if (depth) limit = std::min(limit, *depth);
  }
  for (uint64_t k = 0; k < limit; ++k) {
    const Bit a = u.at(k), b = v.at(k);
    if (a != b) return {a < b ? Order::LT : Order::GT, k};
  }
  if (exact) return {Order::EQ, limit};
  return {Order::Unknown, limit};
}

Word shift(const Word& w, uint64_t n) {
  if (n == 0) return w;
  if (w.is_eventually_periodic()) {
    const EPWord& e = w.ep();
    const uint64_t m = e.preperiod().size(), d = e.period().size();
    if (n <= m) {
      std::vector<Bit> pre(e.preperiod().bits.begin() + static_cast<std::ptrdiff_t>(n),
                           e.preperiod().bits.end());
      return Word(EPWord(FiniteWord(std::move(pre)), e.period()));
    }
    const uint64_t rot = (n - m) % d;
    std::vector<Bit> per = e.period().bits;
    std::rotate(per.begin(), per.begin() + static_cast<std::ptrdiff_t>(rot), per.end());
    return Word(EPWord(FiniteWord(), FiniteWord(std::move(per))));
  }
  return Word(SymbolStream(w.stream().rule(), w.stream().offset() + n));
}

FiniteWord prefix(const Word& w, uint64_t len) {
  std::vector<Bit> b;
  b.reserve(static_cast<std::size_t>(len));
  for (uint64_t k = 0; k < len; ++k) b.push_back(w.at(k));
  return FiniteWord(std::move(b));
}

PrecisionReal distance(const Word& u, const Word& v, std::optional<uint64_t> depth) {
  const CompareResult c = lex_compare(u, v, depth);
  if (c.order == Order::EQ) return PrecisionReal::exact(Real(0));
  if (c.order == Order::Unknown)
    throw DepthExhausted("distance: words agree to depth " + std::to_string(c.decided_at));
  return PrecisionReal::exact(boost::multiprecision::ldexp(Real(1), -static_cast<long>(c.decided_at)));
}

namespace {

constexpr uint64_t kPrimeSieveDepth = 1000000;

std::shared_ptr<const StreamRule> make_prime_stream() {
  // Symbol n is 1 iff n+1 is prime; sieve covers n < 10^6.
  auto sieve = std::make_shared<std::vector<bool>>(kPrimeSieveDepth + 2, true);
  auto& p = *sieve;
  p[0] = p[1] = false;
  for (uint64_t i = 2; i * i <= kPrimeSieveDepth + 1; ++i) {
    if (!p[i]) continue;
    for (uint64_t j = i * i; j <= kPrimeSieveDepth + 1; j += i) p[j] = false;
  }
  auto rule = std::make_shared<StreamRule>();
  rule->name = "primes";
  rule->available_depth = kPrimeSieveDepth;
  rule->bit = [sieve](uint64_t n) -> Bit { return (*sieve)[n + 1] ? 1 : 0; };
  return rule;
}

std::map<std::string, std::shared_ptr<const StreamRule>>& registry() {
  static std::map<std::string, std::shared_ptr<const StreamRule>> reg = [] {
    std::map<std::string, std::shared_ptr<const StreamRule>> r;
    r["primes"] = make_prime_stream();
    return r;
  }();
  return reg;
}

}  // namespace

std::shared_ptr<const StreamRule> builtin_stream(const std::string& name) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw ParseError("unknown stream name: " + name);
  return it->second;
}

std::vector<std::string> builtin_stream_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

}  // namespace ovl
