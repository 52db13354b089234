#pragma once

#include <optional>
#include <vector>

#include "gwv/types.hpp"

namespace gwv {

// Superposition of a one-excitation (W-class) branch over n qudits and the
// vacuum: sqrt(p) * sum_{s,i} a(s,i) |0..i_s..0> + sqrt(1-p) |0...0>,
// where subsystem s carries level i+1 (i = 0..d-2) and all others are 0.
// Rows of `a` index subsystems, columns index excitation levels 1..d-1.
struct GWVSpec {
  int n = 0;
  int d = 2;
  double p = 1.0;
  Matrix a;  // n x (d-1), Frobenius norm 1

  void validate() const;
};

DimList dims_of(const GWVSpec& spec);

// Amplitude vector of the specified state, dim d^n, unit norm.
Vector build_gwv(const GWVSpec& spec);

// Ordered grouping [P, P0, ..., P_{r-1}] of a subset of subsystems (0-based).
// groups[0] is the anchor side of every bipartite cut; the remaining r groups
// are the partners. Optional split index t for the split-form bounds.
struct Partition {
  std::vector<std::vector<int>> groups;
  std::optional<int> t;

  int r() const { return static_cast<int>(groups.size()) - 1; }
  std::vector<int> members() const;  // union of all groups, in group order
  void validate(int n) const;
};

// Merge each group into one composite subsystem, in group order. The groups
// must cover every subsystem exactly once.
Vector coarse_grain(const Vector& psi, const DimList& dims,
                    const std::vector<std::vector<int>>& groups, DimList* out_dims);
Matrix coarse_grain(const Matrix& rho, const DimList& dims,
                    const std::vector<std::vector<int>>& groups, DimList* out_dims);

// Density matrix of the kept subsystems (in the order `keep` lists them) after
// tracing out the rest of a pure state.
Matrix reduce(const Vector& psi, const DimList& dims, const std::vector<int>& keep,
              DimList* out_dims);

}  // namespace gwv
