#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gwv/bounds.hpp"

using namespace gwv;

namespace {

PairProfile profile_of(std::vector<double> values, double total,
                       std::vector<double> residuals = {}) {
  PairProfile p;
  p.values = std::move(values);
  p.total = total;
  p.residuals = std::move(residuals);
  return p;
}

BoundSpec spec_of(const std::string& tag, Direction dir, double k, double e, double mu_ref = 0.0,
                  std::optional<int> t = std::nullopt) {
  BoundSpec s;
  s.family_tag = tag;
  s.direction = dir;
  s.k = k;
  s.exponent = e;
  s.mu_ref = mu_ref;
  s.t = t;
  return s;
}

// example profile: tsallis-2 values of the three-qubit preset
PairProfile example1_profile() {
  PairProfile p = profile_of({1.0 / 18.0, 2.0 / 9.0}, 5.0 / 18.0);
  p.family = Family::tsallis;
  p.parameter = 2.0;
  return p;
}

// example profile: assisted tsallis-2 values of the four-qubit preset
PairProfile example2_profile() {
  PairProfile p = profile_of({0.25, 0.16}, 0.41);
  p.family = Family::tsallis;
  p.variant = Variant::assistance;
  p.parameter = 2.0;
  return p;
}

}  // namespace

TEST_CASE("hamming weight basics") {
  CHECK(hamming_weight(0) == 0);
  CHECK(hamming_weight(1) == 1);
  CHECK(hamming_weight(2) == 1);
  CHECK(hamming_weight(7) == 3);
  CHECK(hamming_weight(8) == 1);
  CHECK(hamming_weight(255) == 8);
  for (unsigned long long j = 1; j < 64; ++j)
    CHECK(hamming_weight(j) <= static_cast<int>(j));
  // the weight can exceed log2(j): these are the small counterexamples
  CHECK(hamming_weight(1) > std::log2(1.0));
  CHECK(hamming_weight(7) > std::log2(7.0));
}

TEST_CASE("interpolation coefficient closed forms and monotonicity") {
  for (double t : {0.0, 1.0, 2.0, 3.7}) {
    CHECK(std::abs(coeff_K(1.0, t) - (std::pow(2.0, t) - 1.0)) < 1e-12);
  }
  CHECK(std::abs(coeff_K(0.3, 1.0) - 1.0) < 1e-15);  // t = 1: identically 1
  CHECK(coeff_K(0.7, 0.0) == 0.0);
  // nonincreasing in k when t >= 1; nondecreasing when t <= 1
  for (double t : {1.5, 2.0, 3.0}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double k : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double cur = coeff_K(k, t);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }
  for (double t : {0.2, 0.5, 0.9}) {
    double prev = 0.0;
    for (double k : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const double cur = coeff_K(k, t);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
  CHECK(std::abs(coeff_K(0.5, 2.0) - 5.0) < 1e-12);  // (1.5^2 - 1) / 0.25
  CHECK_THROWS_AS(coeff_K(0.0, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(coeff_K(1.0, -0.5), std::invalid_argument);
}

TEST_CASE("scalar coefficient inequality holds on in-domain grids") {
  for (int ik = 1; ik <= 10; ++ik) {
    const double k = ik / 10.0;
    for (int ix = 0; ix <= 10; ++ix) {
      const double x = k * ix / 10.0;  // 0 <= x <= k
      for (double t : {1.0, 1.7, 2.0, 3.2}) CHECK(coeff_K_inequality_holds('a', x, k, t));
      for (double t : {0.0, 0.3, 0.8, 1.0}) CHECK(coeff_K_inequality_holds('c', x, k, t));
    }
  }
  for (double k : {1.0, 1.5, 4.0}) {
    for (double f : {1.0, 1.3, 2.5, 10.0}) {
      const double x = k * f;  // x >= k
      for (double t : {0.0, 0.4, 1.0}) CHECK(coeff_K_inequality_holds('b', x, k, t));
    }
  }
}

TEST_CASE("scalar coefficient inequality rejects out-of-domain arguments") {
  CHECK_THROWS_AS(coeff_K_inequality_holds('a', 0.8, 0.5, 2.0), std::domain_error);  // x > k
  CHECK_THROWS_AS(coeff_K_inequality_holds('a', 0.2, 0.5, 0.5), std::domain_error);  // t < 1
  CHECK_THROWS_AS(coeff_K_inequality_holds('b', 0.5, 1.5, 0.5), std::domain_error);  // x < k
  CHECK_THROWS_AS(coeff_K_inequality_holds('b', 2.0, 1.5, 1.5), std::domain_error);  // t > 1
  CHECK_THROWS_AS(coeff_K_inequality_holds('c', 0.2, 0.5, 1.5), std::domain_error);  // t > 1
  CHECK_THROWS_AS(coeff_K_inequality_holds('q', 0.2, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("plain power-sum bound") {
  const PairProfile p = profile_of({0.3, 0.2}, 0.6);
  const BoundReport mono = eval_baseline(p, 2.0, Direction::monogamy);
  CHECK(std::abs(mono.lhs - 0.36) < 1e-15);
  CHECK(std::abs(mono.bound - 0.13) < 1e-15);
  CHECK(std::abs(mono.slack - 0.23) < 1e-15);
  CHECK(mono.preconds_ok);  // unconditioned family
  CHECK(mono.satisfied);

  const BoundReport poly = eval_baseline(p, 0.5, Direction::polygamy);
  CHECK(std::abs(poly.bound - (std::sqrt(0.3) + std::sqrt(0.2))) < 1e-15);
  CHECK(poly.satisfied);

  CHECK_THROWS_AS(eval_baseline(p, 1.5, Direction::monogamy), std::invalid_argument);
  CHECK_THROWS_AS(eval_baseline(p, 1.5, Direction::polygamy), std::invalid_argument);
  CHECK_THROWS_AS(eval_baseline(p, 0.0, Direction::polygamy), std::invalid_argument);
}

TEST_CASE("split bound with t = m-2 reduces to the geometric coefficient sum") {
  PairProfile p = profile_of({0.5, 0.4, 0.3, 0.2}, 0.8, {0.55, 0.38, 0.2});
  const double k = 0.6, e = 2.5;
  const BoundSpec spec = spec_of("tsplit", Direction::monogamy, k, e, 0.0, 2);
  const BoundReport got = eval_bound(p, spec);
  const double big_k = coeff_K(k, e / 2.0);
  double want = 0.0;
  for (int j = 0; j < 4; ++j) want += std::pow(big_k, j) * std::pow(p.values[static_cast<std::size_t>(j)], e);
  CHECK(std::abs(got.bound - want) < 1e-12);

  // and the j-indexed power family gives the same coefficients by construction
  const BoundReport jp = eval_jpower(p, spec_of("jpower", Direction::monogamy, k, e));
  CHECK(std::abs(jp.bound - want) < 1e-12);
}

TEST_CASE("split bound with two values gives the pair form") {
  PairProfile p = example1_profile();
  const BoundSpec spec = spec_of("gamma", Direction::monogamy, 64.0, 2.0, 3.0);  // t defaults to 0
  const BoundReport got = eval_bound(p, spec);
  const double big_k = coeff_K(64.0, 2.0 / 3.0);
  CHECK(std::abs(got.bound - (std::pow(1.0 / 18.0, 2.0) + big_k * std::pow(2.0 / 9.0, 2.0))) <
        1e-13);
  CHECK(got.preconds_ok);  // 64 * (1/18)^3 == (2/9)^3 exactly
}

TEST_CASE("interpolated family recovers the plain sum at the reference exponent with k = 1") {
  PairProfile p = example1_profile();
  const BoundSpec spec = spec_of("gamma", Direction::monogamy, 1.0, 3.0, 3.0);
  const BoundReport got = eval_bound(p, spec);
  // K = coeff_K(1, 1) = 1: bound is the plain power sum at the reference exponent
  CHECK(std::abs(got.bound - (std::pow(1.0 / 18.0, 3.0) + std::pow(2.0 / 9.0, 3.0))) < 1e-15);
  CHECK(got.preconds_ok);
}

TEST_CASE("interpolated family is monogamy-only and validates its parameters") {
  PairProfile p = example1_profile();
  CHECK_THROWS_AS(eval_bound(p, spec_of("gamma", Direction::polygamy, 2.0, 0.5, 3.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_bound(p, spec_of("gamma", Direction::monogamy, 0.5, 2.0, 3.0)),
                  std::invalid_argument);  // k < 1
  CHECK_THROWS_AS(eval_bound(p, spec_of("gamma", Direction::monogamy, 2.0, 2.0, 1.5)),
                  std::invalid_argument);  // reference exponent < 2
  CHECK_THROWS_AS(eval_bound(p, spec_of("gamma", Direction::monogamy, 2.0, 3.5, 3.0)),
                  std::invalid_argument);  // exponent above reference
}

TEST_CASE("weighted families validate exponent and k ranges") {
  PairProfile p = example1_profile();
  CHECK_THROWS_AS(eval_bound(p, spec_of("hamming", Direction::monogamy, 0.5, 1.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_bound(p, spec_of("hamming", Direction::polygamy, 0.5, 1.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_bound(p, spec_of("jpower", Direction::monogamy, 1.5, 2.0)),
                  std::invalid_argument);  // k > 1
  CHECK_THROWS_AS(eval_bound(p, spec_of("nonsense", Direction::monogamy, 0.5, 2.0)),
                  std::invalid_argument);
}

TEST_CASE("hamming-exponent bound values and preconditions") {
  // monogamy, e0 = 2: conditions k x_j^2 >= x_{j+1}^2
  PairProfile p = profile_of({0.6, 0.3, 0.2}, 0.75);
  const double k = 0.5, e = 2.0;
  const BoundReport rep = eval_bound(p, spec_of("hamming", Direction::monogamy, k, e));
  const double big_k = coeff_K(k, 1.0);  // e/e0 = 1 -> K = 1
  CHECK(std::abs(big_k - 1.0) < 1e-15);
  const double want = 0.36 + std::pow(big_k, 1) * 0.09 + std::pow(big_k, 1) * 0.04;
  CHECK(std::abs(rep.bound - want) < 1e-14);
  REQUIRE(rep.preconditions.size() == 2);
  CHECK(rep.preconditions[0].ok);        // 0.5 * 0.36 >= 0.09
  CHECK(rep.preconditions[1].ok);        // 0.5 * 0.09 >= 0.04
  CHECK(rep.preconds_ok);
  CHECK(rep.satisfied);                  // 0.5625 >= 0.49

  // coefficient exponents follow the binary weight of the index
  PairProfile p4 = profile_of({0.5, 0.25, 0.12, 0.05}, 0.6);
  const BoundReport r4 = eval_bound(p4, spec_of("hamming", Direction::monogamy, 0.4, 3.0));
  const double kk = coeff_K(0.4, 1.5);
  const double w4 = std::pow(0.5, 3) + kk * std::pow(0.25, 3) + kk * std::pow(0.12, 3) +
                    kk * kk * std::pow(0.05, 3);
  CHECK(std::abs(r4.bound - w4) < 1e-13);

  // a failing chain condition flips the flag but the bound is still reported
  PairProfile bad = profile_of({0.2, 0.6}, 0.7);
  const BoundReport rb = eval_bound(bad, spec_of("hamming", Direction::monogamy, 0.5, 2.0));
  CHECK_FALSE(rb.preconds_ok);
  CHECK(rb.bound > 0.0);
}

TEST_CASE("tail-sum conditions of the index-exponent family") {
  // k x_l^2 >= sum_{j>l} x_j^2 is stronger than the consecutive condition
  PairProfile p = profile_of({0.6, 0.3, 0.2}, 0.75);
  const BoundReport ok = eval_bound(p, spec_of("jpower", Direction::monogamy, 0.5, 2.0));
  REQUIRE(ok.preconditions.size() == 2);
  CHECK(ok.preconditions[0].ok);   // 0.5*0.36 = 0.18 >= 0.09 + 0.04
  CHECK(ok.preconditions[1].ok);   // 0.5*0.09 >= 0.04
  const BoundReport tight = eval_bound(p, spec_of("jpower", Direction::monogamy, 0.3, 2.0));
  CHECK_FALSE(tight.preconds_ok);  // 0.3*0.36 = 0.108 < 0.13
}

TEST_CASE("split family condition directions") {
  // monogamy: k x_i^2 >= res_i^2 left of the split, x_j^2 <= k res_j^2 right of it
  PairProfile p = profile_of({0.6, 0.2, 0.3}, 0.75, {0.35, 0.3});
  const BoundReport rep = eval_bound(p, spec_of("tsplit", Direction::monogamy, 0.5, 2.0, 0.0, 0));
  REQUIRE(rep.preconditions.size() == 2);
  CHECK(rep.preconditions[0].ok);  // 0.5*0.36 = 0.18 >= 0.1225
  CHECK(rep.preconditions[1].ok);  // 0.04 <= 0.5*0.09
  // without stored residuals a three-value split profile cannot be conditioned
  PairProfile no_res = profile_of({0.6, 0.2, 0.3}, 0.75);
  CHECK_THROWS_AS(eval_bound(no_res, spec_of("tsplit", Direction::monogamy, 0.5, 2.0, 0.0, 0)),
                  std::invalid_argument);
  // two-value profiles derive the single residual from the last value
  PairProfile two = profile_of({0.5, 0.4}, 0.7);
  CHECK_NOTHROW(eval_bound(two, spec_of("tsplit", Direction::monogamy, 0.9, 2.0)));
  // split index required for m > 2 and bounded by m-2
  CHECK_THROWS_AS(eval_bound(p, spec_of("tsplit", Direction::monogamy, 0.5, 2.0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(eval_bound(p, spec_of("tsplit", Direction::monogamy, 0.5, 2.0, 0.0, 2)),
                  std::invalid_argument);
}

TEST_CASE("feasible k intervals on the worked-example profiles") {
  // interpolated family on the three-qubit preset: [1, 64] exactly
  PairProfile p1 = example1_profile();
  const KInterval gi = feasible_k(p1, spec_of("gamma", Direction::monogamy, 1.0, 2.0, 3.0));
  CHECK_FALSE(gi.empty);
  CHECK(std::abs(gi.lo - 1.0) < 1e-12);
  CHECK(std::abs(gi.hi - 64.0) < 1e-9);

  // hamming family on the assisted four-qubit profile: [0.64, 1]
  PairProfile p2 = example2_profile();
  const KInterval hi = feasible_k(p2, spec_of("hamming", Direction::polygamy, 1.0, 1.0));
  CHECK_FALSE(hi.empty);
  CHECK(std::abs(hi.lo - 0.64) < 1e-12);
  CHECK(std::abs(hi.hi - 1.0) < 1e-15);
}

TEST_CASE("feasible k zero-pivot algebra") {
  // last value zero: the chain condition k*x0^2 >= 0 never constrains
  const KInterval free_k = feasible_k(profile_of({0.5, 0.0}, 0.5),
                                      spec_of("hamming", Direction::monogamy, 1.0, 2.0));
  CHECK_FALSE(free_k.empty);
  CHECK(free_k.lo == 0.0);
  CHECK(free_k.hi == 1.0);

  // zero pivot with nonzero follower: no finite k works
  const KInterval dead = feasible_k(profile_of({0.0, 0.5}, 0.5),
                                    spec_of("hamming", Direction::monogamy, 1.0, 2.0));
  CHECK(dead.empty);
  CHECK(dead.degenerate);

  // conditions that cross make the interval empty without a degenerate pivot
  const KInterval crossed = feasible_k(profile_of({0.3, 0.4, 0.29}, 0.6, {0.5, 0.29}),
                                       spec_of("tsplit", Direction::monogamy, 0.5, 2.0, 0.0, 0));
  // k >= (0.5/0.3)^2 > 1 collides with the (0,1] clamp
  CHECK(crossed.empty);

  const BoundSpec no_k = spec_of("baseline", Direction::monogamy, 1.0, 2.0);
  CHECK_THROWS_AS(feasible_k(profile_of({0.3}, 0.5), no_k), std::invalid_argument);
}

TEST_CASE("interpolated family feasible interval clamps at 1 and can be unbounded") {
  // x1^3 >= k x0^3 with x0 = 0: any k >= 1 works, upper end unbounded
  PairProfile p = profile_of({0.0, 0.3}, 0.4);
  const KInterval ki = feasible_k(p, spec_of("gamma", Direction::monogamy, 1.0, 2.0, 3.0));
  CHECK_FALSE(ki.empty);
  CHECK(ki.lo == 1.0);
  CHECK(std::isinf(ki.hi));
}

TEST_CASE("report satisfaction respects the direction sign") {
  PairProfile p = example2_profile();  // total 0.41 vs sum 0.41: equality
  const BoundReport poly = eval_bound(p, spec_of("baseline", Direction::polygamy, 1.0, 1.0));
  CHECK(std::abs(poly.lhs - 0.41) < 1e-15);
  CHECK(std::abs(poly.bound - 0.41) < 1e-15);
  CHECK(poly.satisfied);  // equality counts for both directions

  PairProfile strict = profile_of({0.3, 0.2}, 0.6);
  const BoundReport mono = eval_bound(strict, spec_of("baseline", Direction::monogamy, 1.0, 2.0));
  CHECK(mono.satisfied);
  const BoundReport flip = eval_bound(strict, spec_of("baseline", Direction::polygamy, 1.0, 1.0));
  CHECK_FALSE(flip.satisfied);  // 0.6 > 0.5
}
