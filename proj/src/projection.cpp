#include "ovl/projection.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace ovl {

namespace {

void check_unit_interval(const PrecisionReal& x) {
  if (x.lower() < 0 || x.upper() >= 1)
    throw std::domain_error("projection: x must lie in [0,1)");
}

// Truncation depth so that x^{N+1} <= eps, from the upper end of x.
uint64_t truncation_depth(const Real& x_hi, const Real& eps) {
  if (x_hi <= 0) return 1;
  if (x_hi >= 1) throw std::domain_error("projection: x must be < 1");
  const Real n = boost::multiprecision::log(eps) / boost::multiprecision::log(x_hi);
  return n.convert_to<uint64_t>() + 2;
}

// P(x) + x^m Q(x) / (1 - x^d) for an EPWord with preperiod poly P and
// period poly Q: the value of sum w_k x^k without the (1-x) factor.
PrecisionReal ep_series(const EPWord& w, const PrecisionReal& x) {
  const auto& pre = w.preperiod().bits;
  const auto& per = w.period().bits;
  const PrecisionReal one = PrecisionReal::exact(with_digits(Real(1), x.precision_digits()));

  PrecisionReal q = PrecisionReal::exact(0.0);
  for (std::size_t k = per.size(); k-- > 0;)
    q = q * x + PrecisionReal::exact(static_cast<long>(per[k]));
  const PrecisionReal denom = one - pow_ui(x, static_cast<unsigned long>(per.size()));
  PrecisionReal acc = q / denom;  // periodic tail as seen from index m

  for (std::size_t k = pre.size(); k-- > 0;)
    acc = acc * x + PrecisionReal::exact(static_cast<long>(pre[k]));
  return acc;
}

}  // namespace

PrecisionReal project(const Word& w, const PrecisionReal& x, const Real& eps) {
  check_unit_interval(x);
  const PrecisionReal one = PrecisionReal::exact(with_digits(Real(1), x.precision_digits()));
  if (w.is_eventually_periodic()) {
    return (one - x) * ep_series(w.ep(), x);
  }
  const uint64_t n = truncation_depth(x.upper(), eps);
  if (n + 1 > w.depth_limit())
    throw DepthExhausted("project: stream depth insufficient for requested tolerance");
  PrecisionReal sum = PrecisionReal::exact(0.0);
  for (uint64_t k = n + 1; k-- > 0;)
    sum = sum * x + PrecisionReal::exact(static_cast<long>(w.at(k)));
  PrecisionReal res = (one - x) * sum;
  return PrecisionReal(res.value(), res.error_bound() + eps);
}

PrecisionReal project_ifs(const Word& w, const PrecisionReal& x, uint64_t n, double x0) {
  if (x.lower() <= 0 || x.upper() >= 1)
    throw std::domain_error("project_ifs: x must lie in (0,1)");
  if (x0 < 0 || x0 > 1) throw std::domain_error("project_ifs: x0 must lie in [0,1]");
  const PrecisionReal one = PrecisionReal::exact(with_digits(Real(1), x.precision_digits()));
  PrecisionReal y = PrecisionReal::exact(x0);
  for (uint64_t k = n + 1; k-- > 0;) {
    y = x * y;
    if (w.at(k)) y = y + (one - x);
  }
  return y;
}

PrecisionReal pair_difference(const CriticalPair& pair, const PrecisionReal& x, const Real& eps) {
  check_unit_interval(x);
  if (pair.alpha.is_eventually_periodic() && pair.beta.is_eventually_periodic()) {
    return ep_series(pair.alpha.ep(), x) - ep_series(pair.beta.ep(), x);
  }
  // Tail bound |sum_{k>N} (a_k - b_k) x^k| <= x^{N+1} / (1 - x).
  const Real one_minus = Real(1) - x.upper();
  const uint64_t n = truncation_depth(x.upper(), eps * one_minus);
  if (n + 1 > std::min(pair.alpha.depth_limit(), pair.beta.depth_limit()))
    throw DepthExhausted("pair_difference: stream depth insufficient near x -> 1");
  PrecisionReal sum = PrecisionReal::exact(0.0);
  for (uint64_t k = n + 1; k-- > 0;) {
    const long c = static_cast<long>(pair.alpha.at(k)) - static_cast<long>(pair.beta.at(k));
    sum = sum * x + PrecisionReal::exact(c);
  }
  return PrecisionReal(sum.value(), sum.error_bound() + eps);
}

namespace {

using Poly = std::vector<BigInt>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), BigInt(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Numerator and denominator of sum w_k x^k: (P(x)(1 - x^d) + x^m Q(x)) / (1 - x^d).
std::pair<Poly, Poly> ep_series_fraction(const EPWord& w) {
  const auto& pre = w.preperiod().bits;
  const auto& per = w.period().bits;
  Poly den(per.size() + 1, BigInt(0));
  den[0] = 1;
  den[per.size()] = -1;
  Poly num = mul(Poly(pre.begin(), pre.end()), den);
  if (num.size() < pre.size() + per.size()) num.resize(pre.size() + per.size(), BigInt(0));
  for (std::size_t j = 0; j < per.size(); ++j) num[pre.size() + j] += per[j];
  trim(num);
  return {num, den};
}

Rational value_at(const Poly& poly, const Rational& x) {
  Rational acc(0);
  for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + Rational(poly[k]);
  return acc;
}

}  // namespace

std::vector<BigInt> pair_numerator(const EPWord& alpha, const EPWord& beta) {
  const auto [na, da] = ep_series_fraction(alpha);
  const auto [nb, db] = ep_series_fraction(beta);
  return sub(mul(na, db), mul(nb, da));
}

int sign_at(const std::vector<BigInt>& poly, const Rational& x) {
  return value_at(poly, x).sign();
}

namespace {

// Plain double evaluation of G for scanning; only used to locate brackets.
double pair_difference_d(const CriticalPair& pair, double x, double eps) {
  const uint64_t limit = std::min(pair.alpha.depth_limit(), pair.beta.depth_limit());
  uint64_t n = static_cast<uint64_t>(std::ceil(std::log(eps * (1.0 - x)) / std::log(x))) + 1;
  if (n + 1 > limit) n = limit - 1;
  double sum = 0;
  for (uint64_t k = n + 1; k-- > 0;)
    sum = sum * x + (static_cast<double>(pair.alpha.at(k)) - static_cast<double>(pair.beta.at(k)));
  return sum;
}

Rational rational_from_double(double x, long scale = 1000000L) {
  return Rational(static_cast<long>(std::llround(x * static_cast<double>(scale))), scale);
}

long tolerance_bits(const Real& tol) {
  const Real b = -boost::multiprecision::log(tol) / boost::multiprecision::log(Real(2));
  return b.convert_to<long>() + 2;
}

void attach_common_warnings(RootResult& res, const Real& tol) {
  if (res.status == RootStatus::Root && res.r.value() < Real(0.5)) {
    res.warnings.push_back("r < 1/2: reconstructed slope a = 1/r exceeds 2");
  }
  if (res.status == RootStatus::NoneFound &&
      Real(res.min_abs_seen) < boost::multiprecision::sqrt(tol)) {
    res.warnings.push_back(
        "minimum |G| on the grid is below sqrt(tol): possible tangential root "
        "not detectable by sign scanning");
  }
}

RootResult smallest_root_exact(const CriticalPair& pair, const Real& tol, const RootOptions& opts,
                               unsigned digits) {
  RootResult res;
  res.exact_path = true;
  res.numerator = pair_numerator(pair.alpha.ep(), pair.beta.ep());
  res.scan_ceiling = 1.0 - opts.delta;
  if (res.numerator.empty()) {
    res.warnings.push_back("difference polynomial vanishes identically");
    return res;
  }
  const std::size_t da = pair.alpha.ep().period().size();
  const std::size_t db = pair.beta.ep().period().size();
  const auto g_of = [&](const Rational& t) {
    const double td = t.convert_to<double>();
    const double den = (1.0 - std::pow(td, static_cast<double>(da))) *
                       (1.0 - std::pow(td, static_cast<double>(db)));
    return value_at(res.numerator, t).convert_to<double>() / den;
  };

  const long steps = std::lround(1.0 / opts.grid);
  const Rational step(1, steps);
  const Rational ceiling = rational_from_double(1.0 - opts.delta);
  Rational tol_rat(BigInt(1), BigInt(1) << static_cast<unsigned>(tolerance_bits(tol)));

  double min_abs = std::numeric_limits<double>::infinity();
  int s_prev = sign_at(res.numerator, Rational(0));
  Rational t_prev(0);
  std::optional<std::pair<Rational, Rational>> bracket;
  std::optional<Rational> exact_hit;

  for (Rational t = step; t <= ceiling; t += step) {
    const int s = sign_at(res.numerator, t);
    min_abs = std::min(min_abs, std::abs(g_of(t)));
    if (s == 0) {
      exact_hit = t;
      break;
    }
    if (s_prev != 0 && s != s_prev) {
      bracket = {t_prev, t};
      break;
    }
    s_prev = s;
    t_prev = t;
  }
  res.min_abs_seen = min_abs;

  if (exact_hit) {
    res.status = RootStatus::Root;
    res.r = PrecisionReal::of_rational(*exact_hit, digits);
  } else if (bracket) {
    auto [lo, hi] = *bracket;
    const int s_lo = sign_at(res.numerator, lo);
    while (hi - lo > tol_rat) {
      const Rational mid = (lo + hi) / 2;
      const int sm = sign_at(res.numerator, mid);
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == s_lo) lo = mid;
      else hi = mid;
    }
    const PrecisionReal center = PrecisionReal::of_rational((lo + hi) / 2, digits);
    PrecisionGuard g(digits);
    const Real width = Real(Rational(hi - lo));  // full width absorbs rounding
    res.status = RootStatus::Root;
    res.r = PrecisionReal(center.value(), center.error_bound() + width);
  } else {
    res.status = RootStatus::NoneFound;
  }

  if (res.status == RootStatus::Root)
    res.residual = abs(pair_difference(pair, res.r, tol));
  attach_common_warnings(res, tol);
  return res;
}

RootResult smallest_root_numeric(const CriticalPair& pair, const Real& tol,
                                 const RootOptions& opts, unsigned digits) {
  RootResult res;
  res.scan_ceiling = 1.0 - opts.delta;
  PrecisionGuard guard(digits + 10);

  const Real eps_eval = tol / 1000;
  auto certified_sign = [&](const Real& t) -> int {
    const PrecisionReal g = pair_difference(pair, PrecisionReal::exact(t), eps_eval);
    if (boost::multiprecision::abs(g.value()) > g.error_bound()) return g.value() < 0 ? -1 : 1;
    return 0;  // undecidable at this tolerance
  };

  // G(0) = alpha_0 - beta_0.
  int s_prev = static_cast<int>(pair.alpha.at(0)) - static_cast<int>(pair.beta.at(0));
  if (s_prev == 0) s_prev = certified_sign(Real(0));
  double t_prev = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  std::optional<std::pair<double, double>> bracket;

  for (double t = opts.grid; t < 1.0 - opts.delta + opts.grid / 2; t += opts.grid) {
    if (t >= 1.0) break;
    const double gd = pair_difference_d(pair, t, 1e-9);
    min_abs = std::min(min_abs, std::abs(gd));
    int s;
    if (std::abs(gd) > 1e-7) s = gd < 0 ? -1 : 1;
    else s = certified_sign(with_digits(Real(t), digits));
    if (s == 0) continue;  // sign not certifiable here; keep scanning
    if (s_prev != 0 && s != s_prev) {
      bracket = {t_prev, t};
      break;
    }
    s_prev = s;
    t_prev = t;
  }
  res.min_abs_seen = min_abs;
  if (!bracket) {
    res.status = RootStatus::NoneFound;
    attach_common_warnings(res, tol);
    return res;
  }

  Real lo = with_digits(Real(bracket->first), digits);
  Real hi = with_digits(Real(bracket->second), digits);
  const int s_lo = s_prev;
  bool narrowed = true;
  while (hi - lo > tol && narrowed) {
    narrowed = false;
    const Real width = hi - lo;
    for (double frac : {0.5, 0.375, 0.625, 0.25, 0.75}) {
      const Real mid = lo + width * Real(frac);
      const int sm = certified_sign(mid);
      if (sm == 0) continue;
      if (sm == s_lo) lo = mid;
      else hi = mid;
      narrowed = true;
      break;
    }
  }
  if (hi - lo > tol)
    res.warnings.push_back("sign undecidable near the root; enclosure wider than requested");

  res.status = RootStatus::Root;
  res.r = PrecisionReal((lo + hi) / 2, hi - lo);
  res.residual = abs(pair_difference(pair, res.r, eps_eval));
  attach_common_warnings(res, tol);
  return res;
}

}  // namespace

RootResult smallest_root(const CriticalPair& pair, const Real& tol, RootOptions opts) {
  if (tol <= 0) throw std::invalid_argument("smallest_root: tol must be positive");
  const Real td = -boost::multiprecision::log10(tol);
  const unsigned digits =
      std::max<unsigned>(opts.digits, static_cast<unsigned>(td.convert_to<long>()) + 16);
  if (pair.alpha.is_eventually_periodic() && pair.beta.is_eventually_periodic())
    return smallest_root_exact(pair, tol, opts, digits);
  return smallest_root_numeric(pair, tol, opts, digits);
}

}  // namespace ovl
