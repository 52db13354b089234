#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gwv/qcore.hpp"
#include "gwv/states.hpp"

using namespace gwv;

namespace {

GWVSpec random_spec(int n, int d, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  GWVSpec s;
  s.n = n;
  s.d = d;
  s.p = p;
  s.a = Matrix(n, d - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < d; ++j) s.a(i, j) = Complex(g(rng), g(rng));
  s.a /= s.a.norm();
  return s;
}

}  // namespace

TEST_CASE("three-qubit one-excitation state lands on the right amplitudes") {
  GWVSpec s;
  s.n = 3;
  s.d = 2;
  s.p = 1.0;
  s.a = Matrix(3, 1);
  const double r6 = 1.0 / std::sqrt(6.0);
  s.a << r6, r6, 2.0 * r6;
  const Vector psi = build_gwv(s);
  REQUIRE(psi.size() == 8);
  CHECK(std::abs(psi[4] - r6) < 1e-15);        // subsystem 0 excited -> |100>
  CHECK(std::abs(psi[2] - r6) < 1e-15);        // subsystem 1 excited -> |010>
  CHECK(std::abs(psi[1] - 2.0 * r6) < 1e-15);  // subsystem 2 excited -> |001>
  CHECK(std::abs(psi[0]) < 1e-15);             // no vacuum component at p = 1
  CHECK(std::abs(psi.norm() - 1.0) < 1e-14);
}

TEST_CASE("four-qubit preset amplitudes follow subsystem order") {
  GWVSpec s;
  s.n = 4;
  s.d = 2;
  s.p = 1.0;
  s.a = Matrix(4, 1);
  s.a << std::sqrt(0.5), 0.5, 0.4, 0.3;
  const Vector psi = build_gwv(s);
  REQUIRE(psi.size() == 16);
  CHECK(std::abs(psi[8] - std::sqrt(0.5)) < 1e-15);  // |1000>
  CHECK(std::abs(psi[4] - 0.5) < 1e-15);             // |0100>
  CHECK(std::abs(psi[2] - 0.4) < 1e-15);             // |0010>
  CHECK(std::abs(psi[1] - 0.3) < 1e-15);             // |0001>
}

TEST_CASE("vacuum branch carries weight sqrt(1-p)") {
  GWVSpec s = random_spec(3, 2, 0.36, 7);
  const Vector psi = build_gwv(s);
  CHECK(std::abs(psi[0] - 0.8) < 1e-14);
  CHECK(std::abs(std::abs(psi[4]) - 0.6 * std::abs(s.a(0, 0))) < 1e-14);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-13);
}

TEST_CASE("qutrit excitation levels use the right digits") {
  GWVSpec s;
  s.n = 2;
  s.d = 3;
  s.p = 1.0;
  s.a = Matrix(2, 2);
  s.a << 0.5, 0.5, 0.5, 0.5;
  const Vector psi = build_gwv(s);
  REQUIRE(psi.size() == 9);
  CHECK(std::abs(psi[3] - 0.5) < 1e-15);  // subsystem 0 at level 1 -> |10>
  CHECK(std::abs(psi[6] - 0.5) < 1e-15);  // subsystem 0 at level 2 -> |20>
  CHECK(std::abs(psi[1] - 0.5) < 1e-15);  // subsystem 1 at level 1 -> |01>
  CHECK(std::abs(psi[2] - 0.5) < 1e-15);  // subsystem 1 at level 2 -> |02>
}

TEST_CASE("spec validation rejects malformed inputs") {
  GWVSpec s = random_spec(3, 2, 0.5, 9);
  GWVSpec bad = s;
  bad.p = 1.5;
  CHECK_THROWS_AS(build_gwv(bad), std::invalid_argument);
  bad = s;
  bad.a *= 2.0;  // norm off
  CHECK_THROWS_AS(build_gwv(bad), std::invalid_argument);
  bad = s;
  bad.a = Matrix::Ones(3, 2) / std::sqrt(6.0);  // wrong column count for d=2
  CHECK_THROWS_AS(build_gwv(bad), std::invalid_argument);
  bad = s;
  bad.n = 1;
  CHECK_THROWS_AS(build_gwv(bad), std::invalid_argument);
}

TEST_CASE("reduce agrees with the partial trace of the projector") {
  const GWVSpec s = random_spec(4, 3, 0.7, 21);
  const Vector psi = build_gwv(s);
  const DimList dims = dims_of(s);
  const Matrix rho = psi * psi.adjoint();
  for (const std::vector<int>& keep : {std::vector<int>{1, 3}, {0}, {2, 0}}) {
    DimList sub({2});
    const Matrix got = reduce(psi, dims, keep, &sub);
    const Matrix want = partial_trace(rho, dims, keep);
    CHECK((got - want).norm() < 1e-13);
    REQUIRE(sub.size() == static_cast<int>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) CHECK(sub[static_cast<int>(i)] == 3);
  }
}

TEST_CASE("every reduction of a one-excitation-plus-vacuum state has rank at most 2") {
  const GWVSpec s = random_spec(5, 3, 0.7, 33);
  const Vector psi = build_gwv(s);
  const DimList dims = dims_of(s);
  for (const std::vector<int>& keep : {std::vector<int>{0, 1}, {1, 2, 3}, {4}, {0, 2, 4}}) {
    DimList sub({2});
    const Matrix rho = reduce(psi, dims, keep, &sub);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    int above = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()[i] > 1e-10) ++above;
    CHECK(above <= 2);
  }
}

TEST_CASE("three-qubit reduction of the four-qubit preset has the known two-branch form") {
  GWVSpec s;
  s.n = 4;
  s.d = 2;
  s.p = 1.0;
  s.a = Matrix(4, 1);
  s.a << std::sqrt(0.5), 0.5, 0.4, 0.3;
  const Vector psi = build_gwv(s);
  DimList sub({2});
  const Matrix rho = reduce(psi, dims_of(s), {0, 1, 2}, &sub);
  Vector phi = Vector::Zero(8);
  phi[4] = std::sqrt(0.5);  // |100>
  phi[2] = 0.5;             // |010>
  phi[1] = 0.4;             // |001>
  Matrix want = phi * phi.adjoint();
  want(0, 0) += 0.09;  // weight of the traced-out excitation
  CHECK((rho - want).norm() < 1e-14);
}

TEST_CASE("coarse grain merges digits in group order") {
  GWVSpec s;
  s.n = 3;
  s.d = 2;
  s.p = 1.0;
  s.a = Matrix(3, 1);
  const double r6 = 1.0 / std::sqrt(6.0);
  s.a << r6, r6, 2.0 * r6;
  const Vector psi = build_gwv(s);
  const DimList dims = dims_of(s);

  DimList merged({2});
  const Vector v = coarse_grain(psi, dims, {{0, 1}, {2}}, &merged);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0] == 4);
  CHECK(merged[1] == 2);
  // identity regrouping of digit significance: amplitudes stay in place
  CHECK((v - psi).norm() < 1e-15);

  DimList swapped({2});
  const Vector w = coarse_grain(psi, dims, {{2}, {0, 1}}, &swapped);
  CHECK(swapped[0] == 2);
  CHECK(swapped[1] == 4);
  CHECK(std::abs(w[2] - r6) < 1e-15);        // |100> -> digits (0, 2)
  CHECK(std::abs(w[1] - r6) < 1e-15);        // |010> -> digits (0, 1)
  CHECK(std::abs(w[4] - 2.0 * r6) < 1e-15);  // |001> -> digits (1, 0)
}

TEST_CASE("coarse grain on matrices matches the vector version") {
  const GWVSpec s = random_spec(3, 2, 0.8, 41);
  const Vector psi = build_gwv(s);
  const DimList dims = dims_of(s);
  DimList d1({2}), d2({2});
  const Vector v = coarse_grain(psi, dims, {{1}, {0, 2}}, &d1);
  const Matrix m = coarse_grain(Matrix(psi * psi.adjoint()), dims, {{1}, {0, 2}}, &d2);
  CHECK((m - v * v.adjoint()).norm() < 1e-14);
  CHECK(d1.total() == d2.total());
}

TEST_CASE("coarse grain requires a disjoint cover") {
  const GWVSpec s = random_spec(3, 2, 1.0, 5);
  const Vector psi = build_gwv(s);
  const DimList dims = dims_of(s);
  DimList out({2});
  CHECK_THROWS_AS(coarse_grain(psi, dims, {{0, 1}}, &out), std::invalid_argument);        // no cover
  CHECK_THROWS_AS(coarse_grain(psi, dims, {{0, 1}, {1, 2}}, &out), std::invalid_argument);  // overlap
}

TEST_CASE("partition validation") {
  Partition part;
  part.groups = {{0}, {1}, {2}};
  CHECK_NOTHROW(part.validate(4));  // partial cover is allowed
  part.groups = {{0}, {1}, {1}};
  CHECK_THROWS_AS(part.validate(4), std::invalid_argument);
  part.groups = {{0}, {4}};
  CHECK_THROWS_AS(part.validate(4), std::invalid_argument);
  part.groups = {{0}};
  CHECK_THROWS_AS(part.validate(4), std::invalid_argument);
  part.groups = {{0}, {1}, {2}, {3}};
  part.t = 0;
  CHECK_NOTHROW(part.validate(4));
  part.t = 1;  // needs r >= t + 3
  CHECK_THROWS_AS(part.validate(4), std::invalid_argument);
  part.groups = {{0}, {1}, {2}};
  part.t = 0;  // only two partner groups: no split index allowed
  CHECK_THROWS_AS(part.validate(4), std::invalid_argument);
}
