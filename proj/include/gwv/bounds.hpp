#pragma once

// Monogamy / polygamy bound families over pairwise-entanglement profiles.
//
// A profile holds the measure values of one anchored grouping: x_j is the
// entanglement between the anchor group and group j, `total` the entanglement
// between the anchor and everything else, and residuals[i] the entanglement
// between the anchor and the union of groups i+1..end (needed by split-form
// conditions). All evaluators are pure functions: they report the bound value,
// the left-hand side total^exponent, the signed slack, and per-condition
// verdicts. Bounds are computed even when conditions fail (parameter sweeps
// plot curves unconditionally); `preconds_ok` records the verdict.

#include <optional>
#include <string>
#include <vector>

#include "gwv/entanglement.hpp"

namespace gwv {

enum class Direction { monogamy, polygamy };

struct PairProfile {
  std::vector<double> values;     // x_j >= 0 for j = 0..m-1
  double total = 0.0;             // entanglement across anchor | all groups
  std::vector<double> residuals;  // empty, or size m-1 with residuals[i] the
                                  // entanglement across anchor | groups i+1..m-1
  Family family = Family::tsallis;
  Variant variant = Variant::standard;
  double parameter = 2.0;

  void validate() const;  // throws std::invalid_argument
};

struct BoundSpec {
  std::string family_tag;  // baseline | baseline-tsplit | hamming | jpower | tsplit | gamma
  Direction direction = Direction::monogamy;
  double k = 1.0;          // not used by baseline / baseline-tsplit
  double exponent = 2.0;   // beta (monogamy) / mu (polygamy) / gamma (interpolated families)
  double mu_ref = 0.0;     // reference exponent for gamma and baseline-tsplit
  std::optional<int> t;    // split index; defaults to 0 when the profile has two values
};

struct Precondition {
  std::string name;
  bool ok = false;
};

struct BoundReport {
  double lhs = 0.0;    // total^exponent
  double bound = 0.0;
  double slack = 0.0;  // lhs - bound (signed)
  std::vector<Precondition> preconditions;
  bool preconds_ok = true;
  bool satisfied = false;  // monogamy: lhs >= bound; polygamy: lhs <= bound
};

struct KInterval {
  double lo = 0.0;
  double hi = 0.0;  // may be +infinity (unbounded families)
  bool empty = false;
  bool degenerate = false;  // a condition had no admissible k (zero-value pivot)
  std::string note;
};

// Population count of the binary expansion of j. Used as the coefficient
// exponent in the hamming family; satisfies hamming_weight(j) <= j.
int hamming_weight(unsigned long long j);

// ((1+k)^t - 1) / k^t for k > 0, t >= 0. coeff_K(1, t) = 2^t - 1 exactly;
// nonincreasing in k for t >= 1 and nondecreasing for t <= 1.
double coeff_K(double k, double t);

// Scalar inequality underlying every weighted bound, by branch:
//   'a': 0 <= x <= k <= 1, t >= 1      : (1+x)^t >= 1 + coeff_K(k,t) x^t
//   'b': x >= k >= 1,      0 <= t <= 1 : (1+x)^t >= 1 + coeff_K(k,t) x^t
//   'c': 0 <= x <= k <= 1, 0 <= t <= 1 : (1+x)^t <= 1 + coeff_K(k,t) x^t
// Returns the verdict with tolerance 1e-12 (scaled); out-of-domain arguments
// throw std::domain_error.
bool coeff_K_inequality_holds(char branch, double x, double k, double t);

// Plain power-sum bound: total^exponent vs sum_j x_j^exponent.
// Monogamy requires exponent >= 2, polygamy exponent in (0,1].
BoundReport eval_baseline(const PairProfile& profile, double exponent, Direction direction);

// Prior-work split-form monogamy bound with fixed coefficient 2^(gamma/mu) - 1:
//   sum_{j<=t} K1^j x_j^g + K1^(t+2) sum_{t<j<=m-2} x_j^g + K1^(t+1) x_{m-1}^g,
// conditioned on x_i <= residual_i for i <= t and x_j >= residual_j for
// t < j <= m-2. gamma in [0, mu], mu >= 2.
BoundReport eval_baseline_tsplit(const PairProfile& profile, double gamma, double mu, int t);

// Weighted power-sum with coefficients K^(hamming_weight(j)); conditions
// k x_j^e0 >= x_{j+1}^e0 for consecutive pairs, e0 = 2 (monogamy) / 1 (polygamy).
BoundReport eval_hamming(const PairProfile& profile, const BoundSpec& spec);

// Weighted power-sum with coefficients K^j; tail conditions
// k x_l^e0 >= sum_{j>l} x_j^e0 for every l <= m-2.
BoundReport eval_jpower(const PairProfile& profile, const BoundSpec& spec);

// Split form: sum_{j<=t} K^j x_j^e + K^(t+2) sum_{t<j<=m-2} x_j^e + K^(t+1) x_{m-1}^e,
// conditioned on k x_i^e0 >= residual_i^e0 for i <= t and
// x_j^e0 <= k residual_j^e0 for t < j <= m-2. t = m-2 recovers sum K^j x_j^e.
BoundReport eval_tsplit(const PairProfile& profile, const BoundSpec& spec);

// Interpolated-exponent monogamy family with k >= 1 and K = coeff_K(k, gamma/mu_ref):
// same split shape as eval_tsplit but with reversed conditions,
// k x_i^mu <= residual_i^mu for i <= t and x_j^mu >= k residual_j^mu for
// t < j <= m-2. Two-value profiles give x_0^g + K x_1^g under x_1^mu >= k x_0^mu.
// gamma in [0, mu_ref], mu_ref >= 2.
BoundReport eval_gamma(const PairProfile& profile, const BoundSpec& spec);

// Dispatch on spec.family_tag.
BoundReport eval_bound(const PairProfile& profile, const BoundSpec& spec);

// Maximal k interval on which the family's conditions hold for this profile
// (k-parameterized families only). Zero pivots follow the condition algebra:
// 0-vs-0 comparisons are unconstrained; conditions no finite k can fix make
// the interval empty and set `degenerate`.
KInterval feasible_k(const PairProfile& profile, const BoundSpec& spec);

}  // namespace gwv
