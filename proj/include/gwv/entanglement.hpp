#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gwv/types.hpp"

namespace gwv {

enum class Family { tsallis, renyi };
enum class Variant { standard, assistance };

struct MeasureParams {
  Family family = Family::tsallis;
  double parameter = 2.0;  // q for tsallis, alpha for renyi
  Variant variant = Variant::standard;
};

// Convex-roof optimizer knobs. Deterministic for a fixed seed: restart i draws
// from a generator seeded by (seed, i), and the result is the best over the
// first `restarts` restarts, so estimates are monotone in the restart count.
struct ConvexRoofConfig {
  int ancilla_size = 0;  // decomposition cardinality; 0 means rank^2
  int restarts = 16;
  int max_iters = 2000;
  double tol = 1e-8;
  std::uint64_t seed = 20260819;
};

// Parameter intervals inside which the analytic kernels represent the measures.
double tsallis_q_min();            // (5 - sqrt(13)) / 2
double tsallis_q_max();            // (5 + sqrt(13)) / 2
double renyi_alpha_min();          // (sqrt(7) - 1) / 2
double renyi_alpha_assist_max();   // (sqrt(13) - 1) / 2

// True iff the parameter lies in the validity interval for (family, variant).
// The assistance intervals exclude tsallis q in (2,3) and renyi alpha above
// (sqrt(13)-1)/2. `why`, if non-null, receives a printable interval on failure.
bool parameter_in_validity_range(Family family, Variant variant, double parameter,
                                 std::string* why = nullptr);

// Analytic kernels mapping squared concurrence to the measure value.
double g_q(double q, double x);       // tsallis; g_2(x) = x/2
double f_alpha(double alpha, double x);  // renyi, log base 2; f_2(x) = log2(2/(2-x))

// Concurrence of a pure state across cut (subsystems in `cut`) vs the rest:
// sqrt(2 (1 - tr rho_A^2)).
double pure_concurrence(const Vector& psi, const DimList& dims, const std::vector<int>& cut);

// Two-qubit mixed-state concurrence, closed form.
double wootters_concurrence(const Matrix& rho);

// Convex-roof concurrence of a mixed state by optimization over purification
// isometries (see ConvexRoofConfig). For every decomposition of a W-class plus
// vacuum reduction the average concurrence is the same, so the optimizer is
// exact on that input class; elsewhere it is an upper bound on the infimum.
double convex_roof_concurrence(const Matrix& rho, const DimList& dims,
                               const std::vector<int>& cut, const ConvexRoofConfig& cfg = {});

// Entanglement across the cut per the analytic kernels: pure states exactly,
// two-qubit mixed states via the closed-form concurrence, anything else via the
// convex-roof concurrence. The assistance variant returns the same value as the
// standard one (the analytic shortcut this toolkit verifies) and is only
// served inside its narrower validity interval; outside it throws.
double measure(const Vector& psi, const DimList& dims, const std::vector<int>& cut,
               const MeasureParams& mp);
double measure(const Matrix& rho, const DimList& dims, const std::vector<int>& cut,
               const MeasureParams& mp, const ConvexRoofConfig& cfg = {});

// Direct decomposition-average optimization of the measure itself (no analytic
// shortcut): minimizes for the standard variant, maximizes for assistance.
// Independent oracle for `measure`.
double convex_roof_measure(const Matrix& rho, const DimList& dims, const std::vector<int>& cut,
                           const MeasureParams& mp, const ConvexRoofConfig& cfg = {});

}  // namespace gwv
