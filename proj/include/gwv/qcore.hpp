#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <numeric>
#include <vector>

#include "gwv/types.hpp"

namespace gwv {

// Kronecker product, evaluated. Works for vectors and matrices of any scalar.
template <typename DA, typename DB>
auto tensor_product(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using ScalarA = typename DA::Scalar;
  using ScalarB = typename DB::Scalar;
  using Scalar = decltype(ScalarA{} * ScalarB{});
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::kroneckerProduct(a.derived(), b.derived());
  return out;
}

namespace detail {

// Composite-index offsets contributed by a subset of subsystems.
// For subsystem s, stride(s) = prod of dims of all subsystems after s.
// offsets[c] = composite index when the subset's digits spell c (mixed radix in
// the order the subset lists them) and every other digit is 0.
inline std::vector<long> subset_offsets(const DimList& dims, const std::vector<int>& subset) {
  std::vector<long> strides(static_cast<std::size_t>(dims.size()), 1);
  for (int s = dims.size() - 2; s >= 0; --s) {
    strides[static_cast<std::size_t>(s)] =
        strides[static_cast<std::size_t>(s) + 1] * dims[s + 1];
  }
  long count = 1;
  for (int s : subset) count *= dims[s];
  std::vector<long> offsets(static_cast<std::size_t>(count), 0);
  long repeat = count;
  for (int s : subset) {
    repeat /= dims[s];
    long block = repeat * dims[s];
    for (long c = 0; c < count; ++c) {
      long digit = (c % block) / repeat;
      offsets[static_cast<std::size_t>(c)] += digit * strides[static_cast<std::size_t>(s)];
    }
  }
  return offsets;
}

inline void check_subset(const DimList& dims, const std::vector<int>& subset,
                         const char* who) {
  if (subset.empty()) throw std::invalid_argument(std::string(who) + ": empty subsystem set");
  std::vector<bool> seen(static_cast<std::size_t>(dims.size()), false);
  for (int s : subset) {
    if (s < 0 || s >= dims.size())
      throw std::invalid_argument(std::string(who) + ": subsystem index out of range");
    if (seen[static_cast<std::size_t>(s)])
      throw std::invalid_argument(std::string(who) + ": duplicate subsystem index");
    seen[static_cast<std::size_t>(s)] = true;
  }
}

}  // namespace detail

// Trace out all subsystems not listed in `keep`. The output orders subsystems
// as `keep` lists them (so keep = {2,0} puts former subsystem 2 first).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> partial_trace(
    const Eigen::MatrixBase<Derived>& rho, const DimList& dims, const std::vector<int>& keep) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw std::invalid_argument("partial_trace: matrix size does not match dims");
  detail::check_subset(dims, keep, "partial_trace");

  std::vector<int> traced;
  {
    std::vector<bool> kept(static_cast<std::size_t>(dims.size()), false);
    for (int s : keep) kept[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s < dims.size(); ++s)
      if (!kept[static_cast<std::size_t>(s)]) traced.push_back(s);
  }

  const std::vector<long> koff = detail::subset_offsets(dims, keep);
  std::vector<long> toff;
  if (traced.empty()) {
    toff = {0};
  } else {
    toff = detail::subset_offsets(dims, traced);
  }

  const long dk = static_cast<long>(koff.size());
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> out(dk, dk);
  for (long a = 0; a < dk; ++a) {
    for (long b = 0; b < dk; ++b) {
      typename Derived::Scalar acc{};
      for (long t : toff) acc += rho(koff[static_cast<std::size_t>(a)] + t,
                                     koff[static_cast<std::size_t>(b)] + t);
      out(a, b) = acc;
    }
  }
  return out;
}

// Sum of the p-th powers of the eigenvalues of a Hermitian PSD matrix.
// Eigenvalues in (-1e-10, 0) are clamped to 0; below that is an error.
double spectral_power_trace(const Matrix& rho, double p);

}  // namespace gwv
