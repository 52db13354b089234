#include "gwv/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gwv/qcore.hpp"

namespace gwv {

void GWVSpec::validate() const {
  if (n < 2) throw std::invalid_argument("GWVSpec: need at least 2 subsystems");
  if (d < 2) throw std::invalid_argument("GWVSpec: local dimension must be >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("GWVSpec: branch weight p must lie in [0,1]");
  if (a.rows() != n || a.cols() != d - 1)
    throw std::invalid_argument("GWVSpec: coefficient matrix must be n x (d-1)");
  if (std::abs(a.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("GWVSpec: coefficients must have unit Frobenius norm");
}

DimList dims_of(const GWVSpec& spec) {
  return DimList(std::vector<int>(static_cast<std::size_t>(spec.n), spec.d));
}

Vector build_gwv(const GWVSpec& spec) {
  spec.validate();
  const DimList dims = dims_of(spec);
  Vector psi = Vector::Zero(dims.total());
  // stride of subsystem s (subsystem 0 most significant)
  long stride = 1;
  std::vector<long> strides(static_cast<std::size_t>(spec.n));
  for (int s = spec.n - 1; s >= 0; --s) {
    strides[static_cast<std::size_t>(s)] = stride;
    stride *= spec.d;
  }
  const double wp = std::sqrt(spec.p);
  for (int s = 0; s < spec.n; ++s)
    for (int i = 0; i < spec.d - 1; ++i)
      psi[strides[static_cast<std::size_t>(s)] * (i + 1)] = wp * spec.a(s, i);
  psi[0] = std::sqrt(1.0 - spec.p);
  return psi;
}

std::vector<int> Partition::members() const {
  std::vector<int> all;
  for (const auto& g : groups) all.insert(all.end(), g.begin(), g.end());
  return all;
}

void Partition::validate(int n) const {
  if (groups.size() < 2) throw std::invalid_argument("Partition: need an anchor group and at least one partner");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("Partition: empty group");
    for (int s : g) {
      if (s < 0 || s >= n) throw std::invalid_argument("Partition: subsystem index out of range");
      if (seen[static_cast<std::size_t>(s)]) throw std::invalid_argument("Partition: groups must be disjoint");
      seen[static_cast<std::size_t>(s)] = true;
    }
  }
  if (t) {
    if (r() < 3) throw std::invalid_argument("Partition: split index requires at least 3 partner groups");
    if (*t < 0 || *t > r() - 3) throw std::invalid_argument("Partition: split index out of range");
  }
}

namespace {

// For each composite index of `dims`, the composite index after regrouping.
std::vector<long> regroup_map(const DimList& dims, const std::vector<std::vector<int>>& groups,
                              DimList* out_dims) {
  std::vector<bool> seen(static_cast<std::size_t>(dims.size()), false);
  std::vector<int> flat;
  std::vector<int> gdims;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("coarse_grain: empty group");
    long gd = 1;
    for (int s : g) {
      if (s < 0 || s >= dims.size()) throw std::invalid_argument("coarse_grain: subsystem index out of range");
      if (seen[static_cast<std::size_t>(s)]) throw std::invalid_argument("coarse_grain: groups must be disjoint");
      seen[static_cast<std::size_t>(s)] = true;
      flat.push_back(s);
      gd *= dims[s];
    }
    if (gd > std::numeric_limits<int>::max())
      throw std::invalid_argument("coarse_grain: composite group dimension overflow");
    gdims.push_back(static_cast<int>(gd));
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("coarse_grain: groups must cover every subsystem");

  if (out_dims) *out_dims = DimList(gdims);

  // Output index = mixed-radix combination of the original digits read in the
  // flattened group order; equivalently a permutation of digit significance.
  std::vector<long> in_strides(static_cast<std::size_t>(dims.size()), 1);
  for (int s = dims.size() - 2; s >= 0; --s)
    in_strides[static_cast<std::size_t>(s)] = in_strides[static_cast<std::size_t>(s) + 1] * dims[s + 1];
  std::vector<long> out_strides(flat.size(), 1);
  for (int i = static_cast<int>(flat.size()) - 2; i >= 0; --i)
    out_strides[static_cast<std::size_t>(i)] =
        out_strides[static_cast<std::size_t>(i) + 1] * dims[flat[static_cast<std::size_t>(i) + 1]];

  const long total = dims.total();
  std::vector<long> map(static_cast<std::size_t>(total));
  for (long idx = 0; idx < total; ++idx) {
    long out = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      int s = flat[i];
      long digit = (idx / in_strides[static_cast<std::size_t>(s)]) % dims[s];
      out += digit * out_strides[i];
    }
    map[static_cast<std::size_t>(idx)] = out;
  }
  return map;
}

}  // namespace

Vector coarse_grain(const Vector& psi, const DimList& dims,
                    const std::vector<std::vector<int>>& groups, DimList* out_dims) {
  if (psi.size() != dims.total()) throw std::invalid_argument("coarse_grain: state size does not match dims");
  const auto map = regroup_map(dims, groups, out_dims);
  Vector out = Vector::Zero(psi.size());
  for (long idx = 0; idx < psi.size(); ++idx) out[map[static_cast<std::size_t>(idx)]] = psi[idx];
  return out;
}

Matrix coarse_grain(const Matrix& rho, const DimList& dims,
                    const std::vector<std::vector<int>>& groups, DimList* out_dims) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw std::invalid_argument("coarse_grain: matrix size does not match dims");
  const auto map = regroup_map(dims, groups, out_dims);
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (long i = 0; i < rho.rows(); ++i)
    for (long j = 0; j < rho.cols(); ++j)
      out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) = rho(i, j);
  return out;
}

Matrix reduce(const Vector& psi, const DimList& dims, const std::vector<int>& keep,
              DimList* out_dims) {
  if (psi.size() != dims.total()) throw std::invalid_argument("reduce: state size does not match dims");
  detail::check_subset(dims, keep, "reduce");

  std::vector<int> traced;
  {
    std::vector<bool> kept(static_cast<std::size_t>(dims.size()), false);
    for (int s : keep) kept[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s < dims.size(); ++s)
      if (!kept[static_cast<std::size_t>(s)]) traced.push_back(s);
  }

  const auto koff = detail::subset_offsets(dims, keep);
  std::vector<long> toff = traced.empty() ? std::vector<long>{0}
                                          : detail::subset_offsets(dims, traced);

  // rho = M M^dagger with M(a, t) = psi(offset_keep[a] + offset_traced[t])
  Matrix m(static_cast<long>(koff.size()), static_cast<long>(toff.size()));
  for (std::size_t a = 0; a < koff.size(); ++a)
    for (std::size_t t = 0; t < toff.size(); ++t) m(static_cast<long>(a), static_cast<long>(t)) = psi[koff[a] + toff[t]];

  if (out_dims) {
    std::vector<int> kd;
    kd.reserve(keep.size());
    for (int s : keep) kd.push_back(dims[s]);
    *out_dims = DimList(kd);
  }
  return m * m.adjoint();
}

}  // namespace gwv
