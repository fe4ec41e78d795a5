// Command-line front end: JSON results on stdout, diagnostics on stderr.
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ovl/admissibility.hpp"
#include "ovl/dynamics.hpp"
#include "ovl/growth.hpp"
#include "ovl/projection.hpp"
#include "ovl/words.hpp"

using nlohmann::json;
using namespace ovl;

namespace {

constexpr int kSchemaVersion = 1;

json num_json(const PrecisionReal& x) {
  return json{{"value", x.value().str(30)}, {"error_bound", x.error_bound().str(3)}};
}

json witness_json(const Witness& w) {
  return json{{"on", w.on_alpha ? "alpha" : "beta"},
              {"shift_index", w.shift_index},
              {"detail", w.detail}};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Admissible: return "admissible";
    case Verdict::NotAdmissible: return "not_admissible";
    default: return "unknown";
  }
}

json admissibility_json(const AdmissibilityReport& rep) {
  json j{{"verdict", verdict_name(rep.verdict)},
         {"checked_depth", rep.checked_depth},
         {"alpha_exact", rep.alpha_exact},
         {"beta_exact", rep.beta_exact}};
  if (rep.witness) j["witness"] = witness_json(*rep.witness);
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

json root_json(const RootResult& res) {
  json j{{"status", res.status == RootStatus::Root ? "root" : "none_found"},
         {"exact_path", res.exact_path},
         {"scan_ceiling", res.scan_ceiling},
         {"min_abs_seen", res.min_abs_seen},
         {"warnings", res.warnings}};
  if (res.status == RootStatus::Root) {
    j["r"] = num_json(res.r);
    j["residual"] = num_json(res.residual);
  }
  if (!res.numerator.empty()) {
    json coeffs = json::array();
    for (const BigInt& c : res.numerator) coeffs.push_back(c.str());
    j["numerator"] = coeffs;
  }
  return j;
}

const char* growth_class_name(GrowthClass c) {
  switch (c) {
    case GrowthClass::Null: return "null";
    case GrowthClass::NonNull: return "non_null";
    default: return "unknown";
  }
}

json growth_json(const GrowthReport& rep) {
  json counts = json::array();
  for (const BigInt& c : rep.counts) counts.push_back(c.str());
  return json{{"mode", rep.mode == GrowthMode::Exact ? "exact" : "estimate"},
              {"counts", counts},
              {"rate", num_json(rep.rate)},
              {"classification", growth_class_name(rep.classification)},
              {"method_notes", rep.method_notes}};
}

// Reference values published alongside specific pairs; reported next to the
// computed results, never used by the computation itself.
json annotations_for(const std::string& alpha, const std::string& beta) {
  if (alpha == "@primes" && beta == "1(0)") {
    return json{{"reference", {{"a", "1.792568768"}, {"p", "0.4421413462"}}},
                {"note", "published approximate parameters of the prime-itinerary map"}};
  }
  if (alpha == "01(10)" && beta == "10(01)") {
    return json{{"reference", {{"growth_class", "null"}}},
                {"note", "published claim: the address space of this pair has growth rate 0"}};
  }
  return json();
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

struct ParsedPair {
  CriticalPair pair;
  std::string alpha_str, beta_str;
};

ParsedPair parse_pair_or_exit(const std::string& alpha, const std::string& beta) {
  try {
    CriticalPair pair(parse_word(alpha), parse_word(beta));
    std::string sa = format_word(pair.alpha), sb = format_word(pair.beta);
    return {std::move(pair), std::move(sa), std::move(sb)};
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(1);
  }
}

int run_check(const std::string& alpha, const std::string& beta, uint64_t depth) {
  const ParsedPair pp = parse_pair_or_exit(alpha, beta);
  const AdmissibilityReport rep = check_admissible(pp.pair, depth);
  json j{{"schema_version", kSchemaVersion},
         {"command", "check"},
         {"alpha", pp.alpha_str},
         {"beta", pp.beta_str},
         {"admissibility", admissibility_json(rep)}};
  emit(j);
  switch (rep.verdict) {
    case Verdict::Admissible: return 0;
    case Verdict::NotAdmissible: return 3;
    default: return 4;
  }
}

int run_solve(const std::string& alpha, const std::string& beta, double tol) {
  const ParsedPair pp = parse_pair_or_exit(alpha, beta);
  const RootResult res = smallest_root(pp.pair, Real(tol));
  json j{{"schema_version", kSchemaVersion},
         {"command", "solve"},
         {"alpha", pp.alpha_str},
         {"beta", pp.beta_str},
         {"root", root_json(res)}};
  const json ann = annotations_for(pp.alpha_str, pp.beta_str);
  if (!ann.is_null()) j["annotations"] = ann;
  emit(j);
  return res.status == RootStatus::Root ? 0 : 2;
}

const char* reconstruct_status_name(ReconstructStatus s) {
  switch (s) {
    case ReconstructStatus::Verified: return "verified";
    case ReconstructStatus::Mismatch: return "mismatch";
    case ReconstructStatus::NoRoot: return "no_root";
    case ReconstructStatus::NotAdmissible: return "not_admissible";
    default: return "inconclusive";
  }
}

int reconstruct_exit(ReconstructStatus s) {
  switch (s) {
    case ReconstructStatus::Verified: return 0;
    case ReconstructStatus::NoRoot: return 2;
    case ReconstructStatus::NotAdmissible: return 3;
    case ReconstructStatus::Inconclusive: return 4;
    default: return 5;
  }
}

json reconstruction_json(const ReconstructionReport& rep) {
  json j{{"status", reconstruct_status_name(rep.status)},
         {"admissibility", admissibility_json(rep.admissibility)},
         {"digits_used", rep.digits_used},
         {"warnings", rep.warnings}};
  if (rep.root.status == RootStatus::Root || !rep.root.warnings.empty())
    j["root"] = root_json(rep.root);
  if (rep.params) {
    j["r"] = num_json(rep.r);
    j["a"] = num_json(rep.params->a);
    j["p"] = num_json(rep.params->p);
    j["sign"] = rep.params->sign == Sign::Minus ? "minus" : "plus";
  }
  json rt{{"verdict", rep.round_trip.verdict == RoundTripVerdict::Verified     ? "verified"
           : rep.round_trip.verdict == RoundTripVerdict::Mismatch ? "mismatch"
                                                                  : "inconclusive"},
          {"verified_depth", rep.round_trip.verified_depth}};
  if (rep.round_trip.mismatch_index) rt["mismatch_index"] = *rep.round_trip.mismatch_index;
  if (!rep.round_trip.detail.empty()) rt["detail"] = rep.round_trip.detail;
  j["round_trip"] = rt;
  return j;
}

int run_reconstruct(const std::string& alpha, const std::string& beta, uint64_t verify_len,
                    const std::string& sign) {
  const ParsedPair pp = parse_pair_or_exit(alpha, beta);
  ReconstructOptions opts;
  opts.verify_len = verify_len;
  opts.sign = sign == "plus" ? Sign::Plus : Sign::Minus;
  const ReconstructionReport rep = reconstruct(pp.pair, opts);
  json j{{"schema_version", kSchemaVersion},
         {"command", "reconstruct"},
         {"alpha", pp.alpha_str},
         {"beta", pp.beta_str},
         {"reconstruction", reconstruction_json(rep)}};
  const json ann = annotations_for(pp.alpha_str, pp.beta_str);
  if (!ann.is_null()) j["annotations"] = ann;
  emit(j);
  return reconstruct_exit(rep.status);
}

int run_growth(const std::string& alpha, const std::string& beta, uint64_t len, bool estimate,
               uint64_t families_len) {
  const ParsedPair pp = parse_pair_or_exit(alpha, beta);
  const bool ep_pair =
      pp.pair.alpha.is_eventually_periodic() && pp.pair.beta.is_eventually_periodic();
  json j{{"schema_version", kSchemaVersion},
         {"command", "growth"},
         {"alpha", pp.alpha_str},
         {"beta", pp.beta_str}};
  if (!ep_pair && !estimate) {
    estimate = true;
    std::cerr << "note: stream pair; falling back to depth-limited estimate\n";
  }
  const GrowthReport rep =
      estimate ? estimate_growth(pp.pair, len) : classify_growth(pp.pair, len);
  j["growth"] = growth_json(rep);

  const FactorFamilies fam = forbidden_factor_families(pp.pair, families_len);
  json fa = json::array(), fb = json::array();
  for (const FiniteWord& w : fam.from_alpha) fa.push_back(w.str());
  for (const FiniteWord& w : fam.from_beta) fb.push_back(w.str());
  j["forbidden_factors"] = json{{"from_alpha", fa},
                                {"from_beta", fb},
                                {"alpha_family_finite", fam.alpha_family_finite},
                                {"beta_family_finite", fam.beta_family_finite},
                                {"up_to_length", families_len},
                                {"description", fam.description}};
  json ann = annotations_for(pp.alpha_str, pp.beta_str);
  if (!ann.is_null()) {
    if (ann.contains("reference") && ann["reference"].contains("growth_class")) {
      ann["computed_matches_reference"] =
          ann["reference"]["growth_class"] == growth_class_name(rep.classification);
    }
    j["annotations"] = ann;
  }
  emit(j);
  return 0;
}

int run_primes(uint64_t nmax) {
  const std::vector<Bit> dyn = primality_indicator(nmax);
  // Independent sieve for the comparison.
  std::vector<char> sieve(nmax + 1, 1);
  sieve[0] = 0;
  sieve[1] = 0;
  for (uint64_t i = 2; i * i <= nmax; ++i)
    if (sieve[i])
      for (uint64_t k = i * i; k <= nmax; k += i) sieve[k] = 0;

  std::vector<uint64_t> primes, disagreements;
  for (uint64_t n = 2; n <= nmax; ++n) {
    if (dyn[n]) primes.push_back(n);
    if (static_cast<char>(dyn[n]) != sieve[n]) disagreements.push_back(n);
  }
  json j{{"schema_version", kSchemaVersion},
         {"command", "primes"},
         {"nmax", nmax},
         {"primes", primes},
         {"count", primes.size()},
         {"sieve_agrees", disagreements.empty()},
         {"annotations", annotations_for("@primes", "1(0)")}};
  if (!disagreements.empty()) j["disagreements"] = disagreements;
  emit(j);
  return disagreements.empty() ? 0 : 5;
}

int run_plotdata(const std::string& alpha, const std::string& beta, int samples,
                 uint64_t orbit_len) {
  const ParsedPair pp = parse_pair_or_exit(alpha, beta);
  ReconstructOptions opts;
  opts.verify_len = std::max<uint64_t>(orbit_len + 2, 50);
  const ReconstructionReport rep = reconstruct(pp.pair, opts);
  if (!rep.params) {
    std::cerr << "error: reconstruction failed ("
              << reconstruct_status_name(rep.status) << ")\n";
    return reconstruct_exit(rep.status);
  }
  const OverlapParams& f = *rep.params;
  const double a = f.a.value().convert_to<double>();
  const double p = f.p.value().convert_to<double>();

  std::cout << "block,x,y,branch\n";
  std::cout.precision(17);
  for (int i = 0; i <= samples; ++i) {
    const double x = p * i / samples;
    std::cout << "branch0," << x << "," << a * x << ",0\n";
  }
  for (int i = 0; i <= samples; ++i) {
    const double x = p + (1.0 - p) * i / samples;
    std::cout << "branch1," << x << "," << a * x + 1.0 - a << ",1\n";
  }
  // Critical orbit; boundary hits follow the sign convention (the plot does
  // not need certified branch decisions).
  PrecisionReal x = f.p;
  for (uint64_t n = 0; n <= orbit_len; ++n) {
    const MapStep step = eval_map(f, x);
    std::cout << "orbit," << n << "," << x.value().convert_to<double>() << ","
              << int(step.symbol) << "\n";
    x = step.y;
  }
  return 0;
}

int run_search_null(unsigned max_period, unsigned max_pre, uint64_t limit) {
  // Enumerate small eventually periodic pairs, keep the admissible null ones.
  const auto enumerate_words = [&](Bit first, Bit second) {
    std::vector<EPWord> out;
    for (unsigned pre_len = 0; pre_len <= max_pre; ++pre_len) {
      for (unsigned per_len = 1; per_len <= max_period; ++per_len) {
        const unsigned total = pre_len + per_len;
        if (total < 2) continue;
        for (uint64_t code = 0; code < (uint64_t(1) << total); ++code) {
          std::vector<Bit> bits(total);
          for (unsigned i = 0; i < total; ++i) bits[i] = (code >> i) & 1u;
          if (bits[0] != first || bits[1] != second) continue;
          out.emplace_back(FiniteWord(std::vector<Bit>(bits.begin(), bits.begin() + pre_len)),
                           FiniteWord(std::vector<Bit>(bits.begin() + pre_len, bits.end())));
        }
      }
    }
    return out;
  };
  const std::vector<EPWord> alphas = enumerate_words(0, 1);
  const std::vector<EPWord> betas = enumerate_words(1, 0);

  json found = json::array();
  uint64_t examined = 0;
  std::vector<std::pair<std::string, std::string>> seen;
  for (const EPWord& wa : alphas) {
    for (const EPWord& wb : betas) {
      if (found.size() >= limit) break;
      ++examined;
      CriticalPair pair{Word(wa), Word(wb)};
      const std::string sa = format_word(pair.alpha), sb = format_word(pair.beta);
      bool dup = false;
      for (const auto& [ua, ub] : seen) dup = dup || (ua == sa && ub == sb);
      if (dup) continue;
      seen.emplace_back(sa, sb);
      if (check_admissible(pair).verdict != Verdict::Admissible) continue;
      const GrowthReport rep = classify_growth(pair, 12);
      if (rep.classification != GrowthClass::Null) continue;
      json counts = json::array();
      for (const BigInt& c : rep.counts) counts.push_back(c.str());
      found.push_back(json{{"alpha", sa}, {"beta", sb}, {"counts", counts}});
    }
  }
  emit(json{{"schema_version", kSchemaVersion},
            {"command", "search-null"},
            {"examined", examined},
            {"null_pairs", found}});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"critical itineraries of overlapping interval maps"};
  app.require_subcommand(1);

  std::string alpha, beta, sign = "minus";
  uint64_t depth = kDefaultStreamDepth;
  double tol = 1e-30;
  uint64_t verify_len = 200, growth_len = 14, families_len = 16, nmax = 200, orbit_len = 50;
  int samples = 256;
  bool estimate = false;
  unsigned max_period = 4, max_pre = 2;
  uint64_t limit = 100;

  auto* check = app.add_subcommand("check", "decide admissibility of a pair");
  check->add_option("alpha", alpha)->required();
  check->add_option("beta", beta)->required();
  check->add_option("--depth", depth, "shift indices checked for stream words");

  auto* solve = app.add_subcommand("solve", "smallest root of the projection difference");
  solve->add_option("alpha", alpha)->required();
  solve->add_option("beta", beta)->required();
  solve->add_option("--tol", tol, "enclosure width for the root");

  auto* rec = app.add_subcommand("reconstruct", "recover (a, p) and verify by iteration");
  rec->add_option("alpha", alpha)->required();
  rec->add_option("beta", beta)->required();
  rec->add_option("--verify-len", verify_len, "symbols regenerated and compared");
  rec->add_option("--sign", sign)->check(CLI::IsMember({"minus", "plus"}));

  auto* growth = app.add_subcommand("growth", "address-space growth rate and class");
  growth->add_option("alpha", alpha)->required();
  growth->add_option("beta", beta)->required();
  growth->add_option("--len", growth_len, "word lengths counted");
  growth->add_flag("--estimate", estimate, "depth-limited counting (required for streams)");
  growth->add_option("--families-len", families_len, "forbidden factors listed up to this length");

  auto* primes = app.add_subcommand("primes", "primality via the prime-itinerary map");
  primes->add_option("--nmax", nmax, "test integers up to nmax");

  auto* plot = app.add_subcommand("plotdata", "CSV of the reconstructed map and orbit");
  plot->add_option("alpha", alpha)->required();
  plot->add_option("beta", beta)->required();
  plot->add_option("--samples", samples, "points per branch");
  plot->add_option("--orbit-len", orbit_len, "critical orbit length");

  auto* search = app.add_subcommand("search-null", "enumerate small admissible null pairs");
  search->add_option("--max-period", max_period);
  search->add_option("--max-pre", max_pre);
  search->add_option("--limit", limit);

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(alpha, beta, depth);
    if (solve->parsed()) return run_solve(alpha, beta, tol);
    if (rec->parsed()) return run_reconstruct(alpha, beta, verify_len, sign);
    if (growth->parsed()) return run_growth(alpha, beta, growth_len, estimate, families_len);
    if (primes->parsed()) return run_primes(nmax);
    if (plot->parsed()) return run_plotdata(alpha, beta, samples, orbit_len);
    if (search->parsed()) return run_search_null(max_period, max_pre, limit);
  } catch (const DepthExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
