// Command-line front end: evaluate bound scenarios, emit figure datasets,
// print feasible-k intervals, run fuzz campaigns, and show the worked examples.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gwv/bounds.hpp"
#include "gwv/entanglement.hpp"
#include "gwv/harness.hpp"
#include "gwv/states.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + out_path);
  out << text;
}

int cmd_verify(const std::string& path, const std::string& format, const std::string& out_path) {
  const gwv::Scenario sc = gwv::scenario_from_json(slurp(path));
  const std::vector<gwv::ReportRow> rows = gwv::run_verify(sc);
  emit(format == "table" ? gwv::to_table(rows) : gwv::to_csv(rows), out_path);
  int bad = 0;
  for (const auto& r : rows)
    if (r.report.preconds_ok && !r.report.satisfied) ++bad;
  if (bad > 0) {
    std::cerr << bad << " row(s) violate their inequality despite passing preconditions\n";
    return 1;
  }
  return 0;
}

int cmd_feasible(const std::string& path) {
  const gwv::Scenario sc = gwv::scenario_from_json(slurp(path));
  for (const gwv::BoundSpec& spec : sc.bound_specs) {
    std::cout << spec.family_tag << " ("
              << (spec.direction == gwv::Direction::monogamy ? "monogamy" : "polygamy") << ")";
    if (spec.family_tag == "baseline" || spec.family_tag == "baseline-tsplit") {
      std::cout << ": no k parameter\n";
      continue;
    }
    const gwv::KInterval ki = gwv::feasible_k_interval(sc, spec);
    if (ki.empty) {
      std::cout << ": empty";
    } else {
      std::cout << ": k in [" << ki.lo << ", ";
      if (std::isinf(ki.hi))
        std::cout << "inf)";
      else
        std::cout << ki.hi << "]";
    }
    if (!ki.note.empty()) std::cout << "  (" << ki.note << ")";
    std::cout << "\n";
  }
  return 0;
}

int cmd_figure(int index, std::optional<double> from, std::optional<double> to,
               std::optional<double> step, const std::string& out_dir) {
  gwv::FigureBundle fig = (from && to && step) ? gwv::make_figure(index, *from, *to, *step)
                                               : gwv::make_figure(index);
  namespace fs = std::filesystem;
  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  const fs::path csv_path = dir / (fig.basename + ".csv");
  const fs::path gp_path = dir / (fig.basename + ".gnuplot");
  emit(fig.csv, csv_path.string());
  emit(fig.gnuplot, gp_path.string());
  std::string why;
  const bool ok = gwv::check_figure_orderings(fig, 1e-9, &why);
  std::cout << "wrote " << csv_path.string() << " (" << fig.rows.size() << " rows) and "
            << gp_path.string() << "\n";
  if (!ok) {
    std::cerr << "curve ordering check failed: " << why << "\n";
    return 1;
  }
  std::cout << "curve orderings verified (tolerance 1e-9)\n";
  return 0;
}

int cmd_fuzz(int n_states, std::uint64_t seed) {
  gwv::FuzzOptions opt;
  opt.n_states = n_states;
  opt.seed = seed;
  const gwv::FuzzSummary sum = gwv::run_fuzz(opt);
  std::cout << sum.to_string() << "\n";
  return sum.violations > 0 ? 1 : 0;
}

struct ExampleRow {
  std::string label;
  double computed;
  double reference;
  double tol;  // <= 0: informational only, no verdict
};

int report_rows(const std::vector<ExampleRow>& rows) {
  int bad = 0;
  for (const ExampleRow& r : rows) {
    const double delta = r.computed - r.reference;
    char line[256];
    if (r.tol > 0.0) {
      const bool ok = std::abs(delta) <= r.tol;
      if (!ok) ++bad;
      std::snprintf(line, sizeof line, "  %-34s computed %.12g  reference %.12g  delta %9.2e  %s\n",
                    r.label.c_str(), r.computed, r.reference, delta, ok ? "ok" : "MISMATCH");
    } else {
      std::snprintf(line, sizeof line,
                    "  %-34s computed %.12g  reported value %.12g  (informational)\n",
                    r.label.c_str(), r.computed, r.reference);
    }
    std::cout << line;
  }
  return bad;
}

int cmd_example(int index) {
  using namespace gwv;
  const std::string preset = "example" + std::to_string(index);
  const Scenario sc = preset_scenario(preset);
  const Vector psi = build_gwv(sc.state);
  const DimList dims = dims_of(sc.state);

  auto pair_rho = [&](int a, int b) {
    DimList sub({2, 2});
    return reduce(psi, dims, {a, b}, &sub);
  };
  auto measure_pair = [&](int a, int b, const MeasureParams& mp) {
    DimList sub({2, 2});
    const Matrix rho = reduce(psi, dims, {a, b}, &sub);
    return measure(rho, sub, {0}, mp);
  };

  std::cout << "scenario " << preset << ": n=" << sc.state.n << " qubits, anchor = subsystem 1, "
            << (sc.measure.family == Family::tsallis ? "tsallis q=" : "renyi alpha=")
            << sc.measure.parameter
            << (sc.measure.variant == Variant::assistance ? " (assistance)" : " (standard)")
            << "\n";

  std::vector<ExampleRow> rows;
  int bad = 0;
  if (index == 1) {
    const MeasureParams mp = sc.measure;
    rows = {
        {"concurrence 1|23", pure_concurrence(psi, dims, {0}), std::sqrt(5.0) / 3.0, 1e-10},
        {"concurrence 1-2", wootters_concurrence(pair_rho(0, 1)), 1.0 / 3.0, 1e-10},
        {"concurrence 1-3", wootters_concurrence(pair_rho(0, 2)), 2.0 / 3.0, 1e-10},
        {"entanglement 1|23", measure(psi, dims, {0}, mp), 5.0 / 18.0, 1e-10},
        {"entanglement 1-2", measure_pair(0, 1, mp), 1.0 / 18.0, 1e-10},
        {"entanglement 1-3", measure_pair(0, 2, mp), 2.0 / 9.0, 1e-10},
    };
    bad += report_rows(rows);
    BoundSpec gamma = sc.bound_specs[0];
    const KInterval ki = feasible_k_interval(sc, gamma);
    bad += report_rows({{"feasible k lower (interpolated)", ki.lo, 1.0, 1e-10},
                        {"feasible k upper (interpolated)", ki.hi, 64.0, 1e-8}});
  } else if (index == 2) {
    const MeasureParams mp = sc.measure;
    // The scenario's partition covers subsystems 1-3 only, so the anchor-side
    // total is taken on the reduction with subsystem 4 traced out.
    const PairProfile profile = build_profile(sc);
    rows = {
        {"concurrence 1-2", wootters_concurrence(pair_rho(0, 1)), std::sqrt(2.0) / 2.0, 1e-10},
        {"concurrence 1-3", wootters_concurrence(pair_rho(0, 2)), 2.0 * std::sqrt(2.0) / 5.0, 1e-10},
        {"assisted entanglement 1|23", profile.total, 0.41, 1e-10},
        {"assisted entanglement 1-2", measure_pair(0, 1, mp), 0.25, 1e-10},
        {"assisted entanglement 1-3", measure_pair(0, 2, mp), 0.16, 1e-10},
    };
    bad += report_rows(rows);
    const KInterval ki = feasible_k_interval(sc, sc.bound_specs[0]);
    bad += report_rows({{"feasible k lower (hamming)", ki.lo, 0.64, 1e-10},
                        {"feasible k upper (hamming)", ki.hi, 1.0, 1e-10}});
  } else if (index == 3) {
    const MeasureParams mp = sc.measure;
    rows = {
        {"concurrence 1-2", wootters_concurrence(pair_rho(0, 1)), 2.0 / 3.0, 1e-10},
        {"concurrence 1-3", wootters_concurrence(pair_rho(0, 2)), 1.0 / 3.0, 1e-10},
        {"entanglement 1|23", measure(psi, dims, {0}, mp), std::log2(18.0 / 13.0), 1e-10},
        {"entanglement 1-2", measure_pair(0, 1, mp), std::log2(9.0 / 7.0), 1e-10},
        {"entanglement 1-3", measure_pair(0, 2, mp), std::log2(18.0 / 17.0), 1e-10},
    };
    bad += report_rows(rows);
    const KInterval ki = feasible_k_interval(sc, sc.bound_specs[0]);
    // The reported working point k = 0.52 lies above the tightest admissible
    // lower end the pairwise conditions give; both are shown for comparison.
    report_rows({{"feasible k lower (hamming)", ki.lo, 0.52, 0.0}});
  } else if (index == 4) {
    const MeasureParams mp = sc.measure;
    rows = {
        {"assisted entanglement 1-2", measure_pair(0, 1, mp), 0.549339, 5e-6},
        {"assisted entanglement 1-3", measure_pair(0, 2, mp), 0.372954, 5e-6},
    };
    bad += report_rows(rows);
    const KInterval ki = feasible_k_interval(sc, sc.bound_specs[0]);
    bad += report_rows({{"feasible k lower (hamming)", ki.lo, 0.6789, 1e-3}});
    report_rows({{"feasible k lower, 2-decimal check", ki.lo, 0.68, 0.0}});
  } else {
    throw std::invalid_argument("example index must be 1..4");
  }
  if (bad > 0) {
    std::cerr << bad << " value(s) deviate from the reference\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification toolkit for multiqubit entanglement bound families"};
  app.require_subcommand(1);
  app.fallthrough();  // let --out / --format appear after the subcommand too

  std::string out_path;
  std::string format = "csv";
  app.add_option("--out", out_path, "output file (verify) or directory (figure)");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"csv", "table"}));

  auto* verify = app.add_subcommand("verify", "evaluate every bound row of a scenario file");
  std::string verify_path;
  verify->add_option("scenario", verify_path, "scenario JSON file")->required();

  auto* feasible = app.add_subcommand("feasible-k", "print admissible k intervals for a scenario");
  std::string feasible_path;
  feasible->add_option("scenario", feasible_path, "scenario JSON file")->required();

  auto* figure = app.add_subcommand("figure", "emit a figure dataset (CSV + gnuplot script)");
  int fig_index = 1;
  double fig_from = 0.0, fig_to = 0.0, fig_step = 0.0;
  figure->add_option("index", fig_index, "figure number")->required()->check(CLI::Range(1, 4));
  auto* opt_from = figure->add_option("--from", fig_from, "sweep start");
  auto* opt_to = figure->add_option("--to", fig_to, "sweep end");
  auto* opt_step = figure->add_option("--step", fig_step, "sweep step");
  opt_from->needs(opt_to, opt_step);
  opt_to->needs(opt_from, opt_step);
  opt_step->needs(opt_from, opt_to);

  auto* fuzz = app.add_subcommand("fuzz", "random-state verification campaign");
  int n_states = 1000;
  std::uint64_t seed = 20260819ULL;
  fuzz->add_option("--states", n_states, "number of random states")->check(CLI::PositiveNumber);
  fuzz->add_option("--seed", seed, "campaign seed");

  auto* example = app.add_subcommand("example", "recompute a worked example and compare");
  int ex_index = 1;
  example->add_option("index", ex_index, "example number")->required()->check(CLI::Range(1, 4));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*verify) return cmd_verify(verify_path, format, out_path);
    if (*feasible) return cmd_feasible(feasible_path);
    if (*figure)
      return cmd_figure(fig_index,
                        opt_from->count() ? std::optional<double>(fig_from) : std::nullopt,
                        opt_to->count() ? std::optional<double>(fig_to) : std::nullopt,
                        opt_step->count() ? std::optional<double>(fig_step) : std::nullopt,
                        out_path);
    if (*fuzz) return cmd_fuzz(n_states, seed);
    if (*example) return cmd_example(ex_index);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const gwv::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
