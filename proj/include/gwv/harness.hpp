#pragma once

// Scenario orchestration: named presets and JSON scenario files in,
// bound-report rows, CSV/table text, figure datasets, and fuzz campaigns out.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gwv/bounds.hpp"
#include "gwv/states.hpp"

namespace gwv {

struct SweepGrid {
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
  std::vector<double> ks;  // overrides spec.k per k-parameterized family; may be empty

  // Inclusive exponent grid from..to; throws std::invalid_argument on an
  // empty or backwards grid.
  std::vector<double> points() const;
};

struct Scenario {
  std::string name;
  GWVSpec state;
  Partition partition;  // groups[0] is the anchor side of every cut
  MeasureParams measure;
  std::vector<BoundSpec> bound_specs;
  std::optional<SweepGrid> sweep;  // absent: evaluate each spec at its own exponent/k

  void validate() const;
};

// Named scenario presets (example1..example4): state, partition, measure, and
// the bound curves of the matching worked example.
Scenario preset_scenario(const std::string& name);

// JSON scenario documents, schema "gwv-scenario/1". Subsystem labels in the
// JSON are 1-based; parse errors and schema violations throw
// std::invalid_argument.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);

struct ReportRow {
  std::string family_tag;
  double q_or_alpha = 0.0;
  double exponent = 0.0;
  std::optional<double> k;  // absent for families without a k parameter
  std::optional<int> t;     // absent for families without a split index
  BoundReport report;
};

// Measure profile of the scenario's partition: total, pair values, residuals.
PairProfile build_profile(const Scenario& scenario);

// One row per bound spec x k override x sweep exponent, in that nesting order.
std::vector<ReportRow> run_verify(const Scenario& scenario);

// Feasible-k interval of one spec evaluated on the scenario's profile.
KInterval feasible_k_interval(const Scenario& scenario, const BoundSpec& spec);

// CSV with header family_tag,q_or_alpha,exponent,k,t,lhs,bound,slack,preconds_ok;
// 12 significant digits, LF line endings, empty fields for absent k/t.
// Throws std::invalid_argument on an empty row list.
std::string to_csv(const std::vector<ReportRow>& rows);
std::string to_table(const std::vector<ReportRow>& rows);

struct FigureBundle {
  int index = 0;
  Scenario scenario;
  std::vector<ReportRow> rows;
  std::string csv;
  std::string gnuplot;   // companion plot script reading the CSV
  std::string basename;  // e.g. "fig1"
};

// Figure datasets 1..4 with each figure's default axis; the overload with
// axis arguments substitutes a custom exponent grid.
FigureBundle make_figure(int which);
FigureBundle make_figure(int which, double from, double to, double step);

// Pointwise curve orderings of a figure dataset: for monogamy figures
// lhs >= each bound, bounds ordered tightest-first, all >= 0; for polygamy
// figures lhs <= each bound, bounds ordered tightest-first. Rows with failing
// preconditions are exempt. On failure, *why names the first offending point.
bool check_figure_orderings(const FigureBundle& figure, double tol, std::string* why = nullptr);

struct FuzzOptions {
  int n_states = 1000;
  std::uint64_t seed = 20260819;
};

struct FuzzSummary {
  long states = 0;
  long evaluations = 0;  // precondition-passing bound instances checked
  long skipped = 0;      // empty feasible intervals / failed preconditions
  long violations = 0;   // margin below -1e-9
  double worst_margin = 0.0;
  std::string worst_note;  // coordinates of the worst-margin instance
  std::string to_string() const;
};

// Random GWV states (n in 3..5, d in 2..3, random vacuum weight), random
// anchored partitions, every k-parameterized bound family in both directions
// and both measure families, k drawn from the computed feasible interval.
FuzzSummary run_fuzz(const FuzzOptions& options);

}  // namespace gwv
