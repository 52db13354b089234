#include "gwv/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace gwv {

namespace {

constexpr double kCondTol = 1e-12;

double scale3(double a, double b) { return std::max({1.0, std::abs(a), std::abs(b)}); }

// a >= b up to the scaled condition tolerance
bool geq(double a, double b) { return a - b >= -kCondTol * scale3(a, b); }

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

// x^e0 rendered for condition names; e0 is 1 or 2 in practice
std::string pow_name(const std::string& base, double e0) {
  if (e0 == 1.0) return base;
  return base + "^" + fmt("%g", e0);
}

int checked_m(const PairProfile& profile) {
  profile.validate();
  return static_cast<int>(profile.values.size());
}

double residual_at(const PairProfile& profile, int i) {
  const int m = static_cast<int>(profile.values.size());
  if (!profile.residuals.empty()) return profile.residuals[static_cast<std::size_t>(i)];
  if (i == m - 2) return profile.values[static_cast<std::size_t>(m - 1)];
  throw std::invalid_argument("split-form conditions need profile residuals (size m-1)");
}

int resolve_t(const BoundSpec& spec, int m, const char* who) {
  if (m < 2) throw std::invalid_argument(std::string(who) + ": split form needs at least two pair values");
  const int t = spec.t.value_or(m == 2 ? 0 : -1);
  if (t < 0)
    throw std::invalid_argument(std::string(who) +
                                ": split index t required for profiles with more than two values");
  if (t > m - 2) throw std::invalid_argument(std::string(who) + ": split index t above m-2");
  return t;
}

// sum_{j<=t} K^j x_j^e + K^(t+2) sum_{t<j<=m-2} x_j^e + K^(t+1) x_{m-1}^e
double split_bound(const std::vector<double>& x, double e, double big_k, int t) {
  const int m = static_cast<int>(x.size());
  double acc = 0.0;
  for (int j = 0; j <= t; ++j) acc += std::pow(big_k, j) * std::pow(x[static_cast<std::size_t>(j)], e);
  if (t < m - 1) {
    double mid = 0.0;
    for (int j = t + 1; j <= m - 2; ++j) mid += std::pow(x[static_cast<std::size_t>(j)], e);
    acc += std::pow(big_k, t + 2) * mid +
           std::pow(big_k, t + 1) * std::pow(x[static_cast<std::size_t>(m - 1)], e);
  }
  return acc;
}

BoundReport finish(const PairProfile& profile, double exponent, Direction direction, double bound,
                   std::vector<Precondition> pre) {
  BoundReport r;
  r.lhs = std::pow(profile.total, exponent);
  r.bound = bound;
  r.slack = r.lhs - r.bound;
  r.preconditions = std::move(pre);
  r.preconds_ok = std::all_of(r.preconditions.begin(), r.preconditions.end(),
                              [](const Precondition& p) { return p.ok; });
  const double tol = kCondTol * scale3(r.lhs, r.bound);
  r.satisfied = direction == Direction::monogamy ? r.slack >= -tol : r.slack <= tol;
  return r;
}

double e0_of(Direction direction) { return direction == Direction::monogamy ? 2.0 : 1.0; }

void check_k_family_spec(const BoundSpec& spec, const char* who) {
  if (spec.direction == Direction::monogamy) {
    if (!(spec.exponent >= 2.0))
      throw std::invalid_argument(std::string(who) + ": monogamy exponent must be >= 2");
  } else {
    if (!(spec.exponent > 0.0 && spec.exponent <= 1.0))
      throw std::invalid_argument(std::string(who) + ": polygamy exponent must be in (0,1]");
  }
  if (!(spec.k > 0.0 && spec.k <= 1.0))
    throw std::invalid_argument(std::string(who) + ": k must be in (0,1]");
}

std::string xname(int j) { return "x" + std::to_string(j); }
std::string rname(int j) { return "res" + std::to_string(j); }

}  // namespace

void PairProfile::validate() const {
  if (values.empty()) throw std::invalid_argument("pair profile: needs at least one value");
  for (double v : values)
    if (!(v >= 0.0)) throw std::invalid_argument("pair profile: values must be >= 0");
  if (!(total >= 0.0)) throw std::invalid_argument("pair profile: total must be >= 0");
  if (!residuals.empty()) {
    if (residuals.size() != values.size() - 1)
      throw std::invalid_argument("pair profile: residuals must have one entry per value but the last");
    for (double v : residuals)
      if (!(v >= 0.0)) throw std::invalid_argument("pair profile: residuals must be >= 0");
  }
}

int hamming_weight(unsigned long long j) { return std::popcount(j); }

double coeff_K(double k, double t) {
  if (!(k > 0.0)) throw std::invalid_argument("coeff_K: k must be > 0");
  if (!(t >= 0.0)) throw std::invalid_argument("coeff_K: t must be >= 0");
  return (std::pow(1.0 + k, t) - 1.0) / std::pow(k, t);
}

bool coeff_K_inequality_holds(char branch, double x, double k, double t) {
  switch (branch) {
    case 'a':
      if (!(0.0 <= x && x <= k && k <= 1.0 && k > 0.0 && t >= 1.0))
        throw std::domain_error("branch a needs 0 <= x <= k <= 1 (k > 0) and t >= 1");
      break;
    case 'b':
      if (!(x >= k && k >= 1.0 && 0.0 <= t && t <= 1.0))
        throw std::domain_error("branch b needs x >= k >= 1 and 0 <= t <= 1");
      break;
    case 'c':
      if (!(0.0 <= x && x <= k && k <= 1.0 && k > 0.0 && 0.0 <= t && t <= 1.0))
        throw std::domain_error("branch c needs 0 <= x <= k <= 1 (k > 0) and 0 <= t <= 1");
      break;
    default:
      throw std::invalid_argument("coeff_K_inequality_holds: branch must be a, b or c");
  }
  const double lhs = std::pow(1.0 + x, t);
  const double rhs = 1.0 + coeff_K(k, t) * std::pow(x, t);
  return branch == 'c' ? lhs <= rhs + kCondTol * scale3(lhs, rhs) : geq(lhs, rhs);
}

BoundReport eval_baseline(const PairProfile& profile, double exponent, Direction direction) {
  checked_m(profile);
  if (direction == Direction::monogamy && !(exponent >= 2.0))
    throw std::invalid_argument("baseline: monogamy exponent must be >= 2");
  if (direction == Direction::polygamy && !(exponent > 0.0 && exponent <= 1.0))
    throw std::invalid_argument("baseline: polygamy exponent must be in (0,1]");
  double bound = 0.0;
  for (double v : profile.values) bound += std::pow(v, exponent);
  return finish(profile, exponent, direction, bound, {});
}

BoundReport eval_baseline_tsplit(const PairProfile& profile, double gamma, double mu, int t) {
  const int m = checked_m(profile);
  if (!(mu >= 2.0)) throw std::invalid_argument("baseline-tsplit: mu must be >= 2");
  if (!(gamma >= 0.0 && gamma <= mu))
    throw std::invalid_argument("baseline-tsplit: exponent must be in [0, mu]");
  if (m < 2) throw std::invalid_argument("baseline-tsplit: split form needs at least two pair values");
  if (t < 0 || t > m - 2) throw std::invalid_argument("baseline-tsplit: split index t above m-2");

  std::vector<Precondition> pre;
  for (int i = 0; i <= m - 2; ++i) {
    const double xi = profile.values[static_cast<std::size_t>(i)];
    const double ri = residual_at(profile, i);
    if (i <= t)
      pre.push_back({xname(i) + " <= " + rname(i), geq(ri, xi)});
    else
      pre.push_back({xname(i) + " >= " + rname(i), geq(xi, ri)});
  }
  const double k1 = coeff_K(1.0, gamma / mu);  // 2^(gamma/mu) - 1
  return finish(profile, gamma, Direction::monogamy, split_bound(profile.values, gamma, k1, t),
                std::move(pre));
}

BoundReport eval_hamming(const PairProfile& profile, const BoundSpec& spec) {
  const int m = checked_m(profile);
  check_k_family_spec(spec, "hamming");
  const double e0 = e0_of(spec.direction);
  std::vector<Precondition> pre;
  for (int j = 0; j + 1 < m; ++j) {
    const double a = std::pow(profile.values[static_cast<std::size_t>(j)], e0);
    const double b = std::pow(profile.values[static_cast<std::size_t>(j + 1)], e0);
    pre.push_back({"k*" + pow_name(xname(j), e0) + " >= " + pow_name(xname(j + 1), e0),
                   geq(spec.k * a, b)});
  }
  const double big_k = coeff_K(spec.k, spec.exponent / e0);
  double bound = 0.0;
  for (int j = 0; j < m; ++j)
    bound += std::pow(big_k, hamming_weight(static_cast<unsigned long long>(j))) *
             std::pow(profile.values[static_cast<std::size_t>(j)], spec.exponent);
  return finish(profile, spec.exponent, spec.direction, bound, std::move(pre));
}

BoundReport eval_jpower(const PairProfile& profile, const BoundSpec& spec) {
  const int m = checked_m(profile);
  check_k_family_spec(spec, "jpower");
  const double e0 = e0_of(spec.direction);
  std::vector<Precondition> pre;
  for (int l = 0; l + 1 < m; ++l) {
    const double a = std::pow(profile.values[static_cast<std::size_t>(l)], e0);
    double tail = 0.0;
    for (int j = l + 1; j < m; ++j) tail += std::pow(profile.values[static_cast<std::size_t>(j)], e0);
    pre.push_back({"k*" + pow_name(xname(l), e0) + " >= sum_{j>" + std::to_string(l) + "} " +
                       pow_name("xj", e0),
                   geq(spec.k * a, tail)});
  }
  const double big_k = coeff_K(spec.k, spec.exponent / e0);
  double bound = 0.0;
  for (int j = 0; j < m; ++j)
    bound += std::pow(big_k, j) * std::pow(profile.values[static_cast<std::size_t>(j)], spec.exponent);
  return finish(profile, spec.exponent, spec.direction, bound, std::move(pre));
}

BoundReport eval_tsplit(const PairProfile& profile, const BoundSpec& spec) {
  const int m = checked_m(profile);
  check_k_family_spec(spec, "tsplit");
  const int t = resolve_t(spec, m, "tsplit");
  const double e0 = e0_of(spec.direction);
  std::vector<Precondition> pre;
  for (int i = 0; i <= m - 2; ++i) {
    const double a = std::pow(profile.values[static_cast<std::size_t>(i)], e0);
    const double r = std::pow(residual_at(profile, i), e0);
    if (i <= t)
      pre.push_back({"k*" + pow_name(xname(i), e0) + " >= " + pow_name(rname(i), e0),
                     geq(spec.k * a, r)});
    else
      pre.push_back({pow_name(xname(i), e0) + " <= k*" + pow_name(rname(i), e0),
                     geq(spec.k * r, a)});
  }
  const double big_k = coeff_K(spec.k, spec.exponent / e0);
  return finish(profile, spec.exponent, spec.direction,
                split_bound(profile.values, spec.exponent, big_k, t), std::move(pre));
}

BoundReport eval_gamma(const PairProfile& profile, const BoundSpec& spec) {
  const int m = checked_m(profile);
  if (spec.direction != Direction::monogamy)
    throw std::invalid_argument("gamma: this family is a monogamy bound");
  if (!(spec.mu_ref >= 2.0)) throw std::invalid_argument("gamma: mu_ref must be >= 2");
  if (!(spec.exponent >= 0.0 && spec.exponent <= spec.mu_ref))
    throw std::invalid_argument("gamma: exponent must be in [0, mu_ref]");
  if (!(spec.k >= 1.0)) throw std::invalid_argument("gamma: k must be >= 1");
  const int t = resolve_t(spec, m, "gamma");
  const double mu = spec.mu_ref;
  std::vector<Precondition> pre;
  for (int i = 0; i <= m - 2; ++i) {
    const double a = std::pow(profile.values[static_cast<std::size_t>(i)], mu);
    const double r = std::pow(residual_at(profile, i), mu);
    if (i <= t)
      pre.push_back({"k*" + pow_name(xname(i), mu) + " <= " + pow_name(rname(i), mu),
                     geq(r, spec.k * a)});
    else
      pre.push_back({pow_name(xname(i), mu) + " >= k*" + pow_name(rname(i), mu),
                     geq(a, spec.k * r)});
  }
  const double big_k = coeff_K(spec.k, spec.exponent / mu);
  return finish(profile, spec.exponent, Direction::monogamy,
                split_bound(profile.values, spec.exponent, big_k, t), std::move(pre));
}

BoundReport eval_bound(const PairProfile& profile, const BoundSpec& spec) {
  if (spec.family_tag == "baseline") return eval_baseline(profile, spec.exponent, spec.direction);
  if (spec.family_tag == "baseline-tsplit")
    return eval_baseline_tsplit(profile, spec.exponent, spec.mu_ref,
                                resolve_t(spec, checked_m(profile), "baseline-tsplit"));
  if (spec.family_tag == "hamming") return eval_hamming(profile, spec);
  if (spec.family_tag == "jpower") return eval_jpower(profile, spec);
  if (spec.family_tag == "tsplit") return eval_tsplit(profile, spec);
  if (spec.family_tag == "gamma") return eval_gamma(profile, spec);
  throw std::invalid_argument("unknown bound family tag: " + spec.family_tag);
}

namespace {

// Accumulates k constraints of the four algebraic shapes appearing in the
// family conditions, honoring zero pivots (0-vs-0 unconstrained; conditions no
// finite k can satisfy mark the interval degenerate-empty).
struct KAccum {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool empty = false;
  bool degenerate = false;
  std::string note;

  void impossible(const std::string& why) {
    empty = true;
    degenerate = true;
    if (!note.empty()) note += "; ";
    note += why;
  }
  // k*a >= b
  void geq_ka_b(double a, double b, const std::string& name) {
    if (a > 0.0)
      lo = std::max(lo, b / a);
    else if (b > 0.0)
      impossible(name + " has a zero pivot");
  }
  // k*a <= b  (always holds when a = 0)
  void leq_ka_b(double a, double b) {
    if (a > 0.0) hi = std::min(hi, b / a);
  }
  // a >= k*b  (always holds when b = 0)
  void geq_a_kb(double a, double b) {
    if (b > 0.0) hi = std::min(hi, a / b);
  }
  // a <= k*b
  void leq_a_kb(double a, double b, const std::string& name) {
    if (b > 0.0)
      lo = std::max(lo, a / b);
    else if (a > 0.0)
      impossible(name + " has a zero pivot");
  }
};

}  // namespace

KInterval feasible_k(const PairProfile& profile, const BoundSpec& spec) {
  const int m = checked_m(profile);
  const double e0 = e0_of(spec.direction);
  KAccum acc;

  auto xp = [&](int j, double e) { return std::pow(profile.values[static_cast<std::size_t>(j)], e); };

  if (spec.family_tag == "hamming") {
    for (int j = 0; j + 1 < m; ++j) acc.geq_ka_b(xp(j, e0), xp(j + 1, e0), "condition " + xname(j));
    acc.hi = std::min(acc.hi, 1.0);
  } else if (spec.family_tag == "jpower") {
    for (int l = 0; l + 1 < m; ++l) {
      double tail = 0.0;
      for (int j = l + 1; j < m; ++j) tail += xp(j, e0);
      acc.geq_ka_b(xp(l, e0), tail, "condition " + xname(l));
    }
    acc.hi = std::min(acc.hi, 1.0);
  } else if (spec.family_tag == "tsplit") {
    const int t = resolve_t(spec, m, "tsplit");
    for (int i = 0; i <= m - 2; ++i) {
      const double a = xp(i, e0);
      const double r = std::pow(residual_at(profile, i), e0);
      if (i <= t)
        acc.geq_ka_b(a, r, "condition " + xname(i));
      else
        acc.leq_a_kb(a, r, "condition " + xname(i));
    }
    acc.hi = std::min(acc.hi, 1.0);
  } else if (spec.family_tag == "gamma") {
    if (!(spec.mu_ref >= 2.0)) throw std::invalid_argument("gamma: mu_ref must be >= 2");
    const int t = resolve_t(spec, m, "gamma");
    const double mu = spec.mu_ref;
    for (int i = 0; i <= m - 2; ++i) {
      const double a = xp(i, mu);
      const double r = std::pow(residual_at(profile, i), mu);
      if (i <= t)
        acc.leq_ka_b(a, r);
      else
        acc.geq_a_kb(a, r);
    }
    acc.lo = std::max(acc.lo, 1.0);
  } else {
    throw std::invalid_argument("feasible_k: family " + spec.family_tag + " has no k parameter");
  }

  KInterval out;
  out.lo = acc.lo;
  out.hi = acc.hi;
  out.degenerate = acc.degenerate;
  out.note = acc.note;
  out.empty = acc.empty || acc.lo > acc.hi + 1e-15 * std::max(1.0, std::abs(acc.hi));
  return out;
}

}  // namespace gwv
