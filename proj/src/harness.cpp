#include "gwv/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gwv {

namespace {

std::string num12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<double> SweepGrid::points() const {
  if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be > 0");
  if (to < from - 1e-12) throw std::invalid_argument("sweep: exponent grid is empty");
  std::vector<double> out;
  const long n = std::lround(std::floor((to - from) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(from + step * static_cast<double>(i));
  if (!out.empty() && std::abs(out.back() - to) < step * 1e-6) out.back() = to;
  return out;
}

void Scenario::validate() const {
  state.validate();
  partition.validate(state.n);
  if (sweep) sweep->points();
}

namespace {

GWVSpec preset_state(const std::string& name) {
  GWVSpec s;
  const double r6 = 1.0 / std::sqrt(6.0);
  if (name == "example1") {
    s.n = 3;
    s.d = 2;
    s.p = 1.0;
    s.a = Matrix(3, 1);
    s.a << r6, r6, 2.0 * r6;
  } else if (name == "example2" || name == "example4") {
    s.n = 4;
    s.d = 2;
    s.p = 1.0;
    s.a = Matrix(4, 1);
    s.a << std::sqrt(0.5), 0.5, 0.4, 0.3;
  } else if (name == "example3") {
    s.n = 3;
    s.d = 2;
    s.p = 1.0;
    s.a = Matrix(3, 1);
    s.a << r6, 2.0 * r6, r6;
  } else {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return s;
}

}  // namespace

Scenario preset_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  sc.state = preset_state(name);
  sc.partition.groups = {{0}, {1}, {2}};
  if (name == "example1") {
    sc.measure = {Family::tsallis, 2.0, Variant::standard};
    sc.bound_specs = {{"gamma", Direction::monogamy, 64.0, 3.0, 3.0, 0},
                      {"baseline-tsplit", Direction::monogamy, 1.0, 3.0, 3.0, 0}};
    sc.sweep = SweepGrid{0.0, 3.0, 0.05, {64.0, 10.0}};
  } else if (name == "example2") {
    sc.measure = {Family::tsallis, 2.0, Variant::assistance};
    sc.bound_specs = {{"hamming", Direction::polygamy, 0.64, 1.0, 0.0, std::nullopt},
                      {"baseline", Direction::polygamy, 1.0, 1.0, 0.0, std::nullopt}};
    sc.sweep = SweepGrid{0.01, 1.0, 0.01, {0.64, 1.0}};
  } else if (name == "example3") {
    sc.measure = {Family::renyi, 2.0, Variant::standard};
    sc.bound_specs = {{"hamming", Direction::monogamy, 0.52, 2.0, 0.0, std::nullopt},
                      {"baseline", Direction::monogamy, 1.0, 2.0, 0.0, std::nullopt}};
    sc.sweep = SweepGrid{2.0, 6.0, 0.05, {0.52}};
  } else {  // example4
    sc.measure = {Family::renyi, 1.2, Variant::assistance};
    sc.bound_specs = {{"hamming", Direction::polygamy, 1.0, 1.0, 0.0, std::nullopt},
                      {"baseline", Direction::polygamy, 1.0, 1.0, 0.0, std::nullopt}};
    sc.sweep = SweepGrid{0.01, 1.0, 0.01, {0.7, 0.8, 1.0}};
  }
  return sc;
}

namespace {

using nlohmann::json;

Family family_from(const std::string& s) {
  if (s == "tsallis") return Family::tsallis;
  if (s == "renyi") return Family::renyi;
  throw std::invalid_argument("scenario: unknown measure family '" + s + "'");
}

Variant variant_from(const std::string& s) {
  if (s == "standard") return Variant::standard;
  if (s == "assistance") return Variant::assistance;
  throw std::invalid_argument("scenario: unknown measure variant '" + s + "'");
}

Direction direction_from(const std::string& s) {
  if (s == "monogamy") return Direction::monogamy;
  if (s == "polygamy") return Direction::polygamy;
  throw std::invalid_argument("scenario: unknown direction '" + s + "'");
}

Complex parse_amp(const json& v) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2) return Complex(v[0].get<double>(), v[1].get<double>());
  throw std::invalid_argument("scenario: amplitudes must be numbers or [re, im] pairs");
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
  try {
    if (j.value("schema", "") != "gwv-scenario/1")
      throw std::invalid_argument("scenario: schema field must be \"gwv-scenario/1\"");
    Scenario sc;
    sc.name = j.value("name", "");
    const json& st = j.at("state");
    if (st.contains("preset")) {
      const Scenario base = preset_scenario(st.at("preset").get<std::string>());
      sc = base;
      if (!j.value("name", "").empty()) sc.name = j.at("name").get<std::string>();
    } else {
      GWVSpec g;
      g.n = st.at("n").get<int>();
      g.d = st.at("d").get<int>();
      g.p = st.value("p", 1.0);
      const json& rows = st.at("coeffs");
      if (static_cast<int>(rows.size()) != g.n)
        throw std::invalid_argument("scenario: coeffs needs one row per subsystem");
      g.a = Matrix::Zero(g.n, std::max(1, g.d - 1));
      for (int s = 0; s < g.n; ++s) {
        const json& row = rows[static_cast<std::size_t>(s)];
        if (static_cast<int>(row.size()) != g.d - 1)
          throw std::invalid_argument("scenario: each coeff row needs d-1 entries");
        for (int i = 0; i + 1 < g.d; ++i)
          g.a(s, i) = parse_amp(row[static_cast<std::size_t>(i)]);
      }
      sc.state = g;
    }
    if (j.contains("partition")) {
      sc.partition.groups.clear();
      sc.partition.t.reset();
      for (const json& grp : j.at("partition").at("groups")) {
        std::vector<int> g;
        for (const json& lbl : grp) {
          const int one_based = lbl.get<int>();
          if (one_based < 1) throw std::invalid_argument("scenario: subsystem labels are 1-based");
          g.push_back(one_based - 1);
        }
        sc.partition.groups.push_back(std::move(g));
      }
      if (j.at("partition").contains("t")) sc.partition.t = j.at("partition").at("t").get<int>();
    }
    if (j.contains("measure")) {
      const json& m = j.at("measure");
      sc.measure.family = family_from(m.value("family", "tsallis"));
      sc.measure.parameter = m.value("parameter", 2.0);
      sc.measure.variant = variant_from(m.value("variant", "standard"));
    }
    if (j.contains("bounds")) {
      sc.bound_specs.clear();
      for (const json& b : j.at("bounds")) {
        BoundSpec spec;
        spec.family_tag = b.at("family").get<std::string>();
        spec.direction = direction_from(b.value("direction", "monogamy"));
        spec.k = b.value("k", 1.0);
        spec.exponent =
            b.value("exponent", spec.direction == Direction::monogamy ? 2.0 : 1.0);
        spec.mu_ref = b.value("mu_ref", 0.0);
        if (b.contains("t")) spec.t = b.at("t").get<int>();
        sc.bound_specs.push_back(std::move(spec));
      }
    }
    if (j.contains("sweep")) {
      SweepGrid g;
      const json& s = j.at("sweep");
      g.from = s.at("exponent_from").get<double>();
      g.to = s.at("exponent_to").get<double>();
      g.step = s.value("step", 0.05);
      if (s.contains("k_values"))
        for (const json& kv : s.at("k_values")) g.ks.push_back(kv.get<double>());
      sc.sweep = g;
    } else if (!j.at("state").contains("preset")) {
      sc.sweep.reset();
    }
    sc.validate();
    return sc;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("scenario JSON: ") + e.what());
  }
}

std::string scenario_to_json(const Scenario& sc) {
  json j;
  j["schema"] = "gwv-scenario/1";
  if (!sc.name.empty()) j["name"] = sc.name;
  json st;
  st["n"] = sc.state.n;
  st["d"] = sc.state.d;
  st["p"] = sc.state.p;
  json rows = json::array();
  for (int s = 0; s < sc.state.n; ++s) {
    json row = json::array();
    for (int i = 0; i + 1 < sc.state.d; ++i) {
      const Complex a = sc.state.a(s, i);
      if (a.imag() == 0.0)
        row.push_back(a.real());
      else
        row.push_back(json::array({a.real(), a.imag()}));
    }
    rows.push_back(std::move(row));
  }
  st["coeffs"] = std::move(rows);
  j["state"] = std::move(st);
  json part;
  part["groups"] = json::array();
  for (const auto& g : sc.partition.groups) {
    json grp = json::array();
    for (int s : g) grp.push_back(s + 1);
    part["groups"].push_back(std::move(grp));
  }
  if (sc.partition.t) part["t"] = *sc.partition.t;
  j["partition"] = std::move(part);
  j["measure"] = {{"family", sc.measure.family == Family::tsallis ? "tsallis" : "renyi"},
                  {"parameter", sc.measure.parameter},
                  {"variant", sc.measure.variant == Variant::standard ? "standard" : "assistance"}};
  json bounds = json::array();
  for (const BoundSpec& b : sc.bound_specs) {
    json spec;
    spec["family"] = b.family_tag;
    spec["direction"] = b.direction == Direction::monogamy ? "monogamy" : "polygamy";
    spec["k"] = b.k;
    spec["exponent"] = b.exponent;
    if (b.mu_ref != 0.0) spec["mu_ref"] = b.mu_ref;
    if (b.t) spec["t"] = *b.t;
    bounds.push_back(std::move(spec));
  }
  j["bounds"] = std::move(bounds);
  if (sc.sweep) {
    json s;
    s["exponent_from"] = sc.sweep->from;
    s["exponent_to"] = sc.sweep->to;
    s["step"] = sc.sweep->step;
    if (!sc.sweep->ks.empty()) s["k_values"] = sc.sweep->ks;
    j["sweep"] = std::move(s);
  }
  return j.dump(2) + "\n";
}

namespace {

std::vector<int> concat_groups(const std::vector<std::vector<int>>& groups, int first, int last) {
  std::vector<int> out;
  for (int g = first; g <= last; ++g) out.insert(out.end(), groups[g].begin(), groups[g].end());
  return out;
}

}  // namespace

PairProfile build_profile(const Scenario& sc) {
  sc.validate();
  const DimList dims = dims_of(sc.state);
  const Vector psi = build_gwv(sc.state);
  const auto& groups = sc.partition.groups;
  const int r = static_cast<int>(groups.size());
  const int anchor_size = static_cast<int>(groups[0].size());

  auto cut_measure = [&](const std::vector<int>& extra_keep) {
    std::vector<int> keep = groups[0];
    keep.insert(keep.end(), extra_keep.begin(), extra_keep.end());
    if (static_cast<int>(keep.size()) == dims.size())
      return measure(psi, dims, groups[0], sc.measure);  // full cover: pure state
    DimList sub({2, 2});
    const Matrix rho = reduce(psi, dims, keep, &sub);
    std::vector<int> cut(static_cast<std::size_t>(anchor_size));
    std::iota(cut.begin(), cut.end(), 0);
    return measure(rho, sub, cut, sc.measure);
  };

  PairProfile profile;
  profile.family = sc.measure.family;
  profile.variant = sc.measure.variant;
  profile.parameter = sc.measure.parameter;
  profile.total = cut_measure(concat_groups(groups, 1, r - 1));
  for (int g = 1; g < r; ++g) profile.values.push_back(cut_measure(groups[g]));
  const int m = r - 1;
  for (int i = 0; i + 1 < m; ++i)
    profile.residuals.push_back(cut_measure(concat_groups(groups, i + 2, r - 1)));
  return profile;
}

namespace {

bool has_k_parameter(const std::string& family_tag) {
  return family_tag != "baseline" && family_tag != "baseline-tsplit";
}

bool has_split_index(const std::string& family_tag) {
  return family_tag == "tsplit" || family_tag == "gamma" || family_tag == "baseline-tsplit";
}

}  // namespace

std::vector<ReportRow> run_verify(const Scenario& sc) {
  const PairProfile profile = build_profile(sc);
  const std::vector<double> exps = sc.sweep ? sc.sweep->points() : std::vector<double>{};
  std::vector<ReportRow> rows;
  for (const BoundSpec& base_spec : sc.bound_specs) {
    std::vector<double> ks = {base_spec.k};
    if (has_k_parameter(base_spec.family_tag) && sc.sweep && !sc.sweep->ks.empty())
      ks = sc.sweep->ks;
    for (double k : ks) {
      const std::vector<double> es = sc.sweep ? exps : std::vector<double>{base_spec.exponent};
      for (double e : es) {
        BoundSpec spec = base_spec;
        spec.k = k;
        spec.exponent = e;
        ReportRow row;
        row.family_tag = spec.family_tag;
        row.q_or_alpha = profile.parameter;
        row.exponent = e;
        row.report = eval_bound(profile, spec);
        if (has_k_parameter(spec.family_tag)) row.k = k;
        if (has_split_index(spec.family_tag)) row.t = spec.t ? *spec.t : 0;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

KInterval feasible_k_interval(const Scenario& sc, const BoundSpec& spec) {
  return feasible_k(build_profile(sc), spec);
}

std::string to_csv(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no report rows to emit");
  std::string out = "family_tag,q_or_alpha,exponent,k,t,lhs,bound,slack,preconds_ok\n";
  for (const ReportRow& r : rows) {
    out += r.family_tag;
    out += ',';
    out += num12(r.q_or_alpha);
    out += ',';
    out += num12(r.exponent);
    out += ',';
    if (r.k) out += num12(*r.k);
    out += ',';
    if (r.t) out += std::to_string(*r.t);
    out += ',';
    out += num12(r.report.lhs);
    out += ',';
    out += num12(r.report.bound);
    out += ',';
    out += num12(r.report.slack);
    out += ',';
    out += r.report.preconds_ok ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string to_table(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("no report rows to emit");
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %10s %10s %8s %3s %16s %16s %13s %8s %9s\n", "family",
                "q_or_alpha", "exponent", "k", "t", "lhs", "bound", "slack", "preconds",
                "satisfied");
  os << line;
  for (const ReportRow& r : rows) {
    const std::string ks = r.k ? num12(*r.k) : "-";
    const std::string ts = r.t ? std::to_string(*r.t) : "-";
    std::snprintf(line, sizeof line, "%-16s %10.5g %10.5g %8s %3s %16.10g %16.10g %13.4g %8s %9s\n",
                  r.family_tag.c_str(), r.q_or_alpha, r.exponent, ks.c_str(), ts.c_str(),
                  r.report.lhs, r.report.bound, r.report.slack, r.report.preconds_ok ? "ok" : "FAIL",
                  r.report.satisfied ? "yes" : "NO");
    os << line;
  }
  return os.str();
}

namespace {

struct Curve {
  std::string family;
  double k;  // < 0 when the family has no k parameter
  std::string title;
};

// Curves in tightest-first order; mirrors each figure's legend.
std::vector<Curve> figure_curves(int which) {
  switch (which) {
    case 1:
      return {{"gamma", 64.0, "k=64"},
              {"gamma", 10.0, "k=10"},
              {"baseline-tsplit", -1.0, "k=1 baseline"}};
    case 2:
      return {{"hamming", 0.64, "k=0.64"},
              {"hamming", 1.0, "k=1"},
              {"baseline", -1.0, "power-sum baseline"}};
    case 3:
      return {{"hamming", 0.52, "k=0.52"}, {"baseline", -1.0, "power-sum baseline"}};
    case 4:
      return {{"hamming", 0.7, "k=0.7"},
              {"hamming", 0.8, "k=0.8"},
              {"hamming", 1.0, "k=1"},
              {"baseline", -1.0, "power-sum baseline"}};
    default:
      throw std::invalid_argument("figure index must be 1..4");
  }
}

bool figure_is_monogamy(int which) { return which == 1 || which == 3; }

const char* figure_xlabel(int which) {
  static const char* labels[4] = {"gamma", "mu", "beta", "mu"};
  return labels[which - 1];
}

std::string curve_filter(const Curve& c) {
  std::string f = "stringcolumn(1) eq '" + c.family + "'";
  if (c.k >= 0.0) f += " && abs($4-" + num12(c.k) + ")<1e-9";
  return f;
}

std::string gnuplot_script(int which, const std::string& basename) {
  const auto curves = figure_curves(which);
  const bool mono = figure_is_monogamy(which);
  std::ostringstream os;
  os << "# companion plot script for " << basename << ".csv\n"
     << "set datafile separator ','\n"
     << "set xlabel '" << figure_xlabel(which) << "'\n"
     << "set ylabel '" << (mono ? "lower bound" : "upper bound") << "'\n"
     << "set key " << (mono ? "top left" : "top right") << "\n";
  const std::string f = "'" + basename + ".csv'";
  bool first = true;
  os << "plot ";
  if (mono) {
    os << f << " using 3:(" << curve_filter(curves[0]) << " ? $6 : 1/0) with lines lw 2 title 'exact value'";
    first = false;
  }
  for (const Curve& c : curves) {
    if (!first) os << ", \\\n     ";
    os << f << " using 3:(" << curve_filter(c) << " ? $7 : 1/0) with lines title '" << c.title << "'";
    first = false;
  }
  os << "\n";
  return os.str();
}

}  // namespace

FigureBundle make_figure(int which) {
  switch (which) {
    case 1:
      return make_figure(1, 0.0, 3.0, 0.05);
    case 2:
      return make_figure(2, 0.01, 1.0, 0.01);
    case 3:
      return make_figure(3, 2.0, 6.0, 0.05);
    case 4:
      return make_figure(4, 0.01, 1.0, 0.01);
    default:
      throw std::invalid_argument("figure index must be 1..4");
  }
}

FigureBundle make_figure(int which, double from, double to, double step) {
  if (which < 1 || which > 4) throw std::invalid_argument("figure index must be 1..4");
  static const char* preset_names[4] = {"example1", "example2", "example3", "example4"};
  FigureBundle fig;
  fig.index = which;
  fig.basename = "fig" + std::to_string(which);
  fig.scenario = preset_scenario(preset_names[which - 1]);
  fig.scenario.sweep->from = from;
  fig.scenario.sweep->to = to;
  fig.scenario.sweep->step = step;
  fig.rows = run_verify(fig.scenario);
  fig.csv = to_csv(fig.rows);
  fig.gnuplot = gnuplot_script(which, fig.basename);
  return fig;
}

bool check_figure_orderings(const FigureBundle& fig, double tol, std::string* why) {
  const auto curves = figure_curves(fig.index);
  const bool mono = figure_is_monogamy(fig.index);
  auto fail = [&](double e, const std::string& msg) {
    if (why) *why = fig.basename + " at exponent " + num12(e) + ": " + msg;
    return false;
  };
  std::map<double, std::vector<const ReportRow*>> by_exponent;
  for (const ReportRow& r : fig.rows) by_exponent[r.exponent].push_back(&r);
  for (const auto& [e, rows] : by_exponent) {
    std::vector<const ReportRow*> ordered;
    for (const Curve& c : curves) {
      const ReportRow* found = nullptr;
      for (const ReportRow* r : rows) {
        const bool k_match =
            (c.k < 0.0 && !r->k) || (c.k >= 0.0 && r->k && std::abs(*r->k - c.k) < 1e-12);
        if (r->family_tag == c.family && k_match) {
          found = r;
          break;
        }
      }
      if (!found) return fail(e, "missing curve " + c.family + "/" + c.title);
      ordered.push_back(found);
    }
    double prev = ordered[0]->report.lhs;  // every row shares the lhs
    for (const ReportRow* r : ordered) {
      if (!r->report.preconds_ok) continue;  // conditions do not hold: curve exempt here
      const double b = r->report.bound;
      if (mono ? b > prev + tol : b < prev - tol)
        return fail(e, "curve " + r->family_tag + " breaks the ordering (" + num12(b) +
                           " vs " + num12(prev) + ")");
      prev = b;
    }
    if (mono)
      for (const ReportRow* r : ordered)
        if (r->report.preconds_ok && r->report.bound < -tol) return fail(e, "negative bound");
  }
  return true;
}

namespace {

struct Rand {
  std::mt19937_64 rng;
  explicit Rand(std::uint64_t s) : rng(s) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
  int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }
  double gauss() { return std::normal_distribution<double>(0.0, 1.0)(rng); }
};

GWVSpec random_state(Rand& rd) {
  GWVSpec g;
  g.n = rd.uniform_int(3, 5);
  g.d = rd.uniform_int(2, 3);
  g.p = rd.uniform_int(0, 9) == 0 ? 1.0 : rd.uniform(0.0, 1.0);
  g.a = Matrix(g.n, g.d - 1);
  for (int s = 0; s < g.n; ++s)
    for (int i = 0; i + 1 < g.d; ++i) g.a(s, i) = Complex(rd.gauss(), rd.gauss());
  g.a /= g.a.norm();
  return g;
}

Partition random_partition(Rand& rd, int n) {
  const int su = rd.uniform_int(3, n);
  std::vector<int> subset(static_cast<std::size_t>(n));
  std::iota(subset.begin(), subset.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(subset[static_cast<std::size_t>(i)], subset[static_cast<std::size_t>(rd.uniform_int(0, i))]);
  subset.resize(static_cast<std::size_t>(su));
  const int r = rd.uniform_int(3, su);
  std::vector<int> cuts = {0};
  std::vector<int> pool;
  for (int i = 1; i < su; ++i) pool.push_back(i);
  for (int i = static_cast<int>(pool.size()) - 1; i > 0; --i)
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(rd.uniform_int(0, i))]);
  pool.resize(static_cast<std::size_t>(r - 1));
  std::sort(pool.begin(), pool.end());
  cuts.insert(cuts.end(), pool.begin(), pool.end());
  cuts.push_back(su);
  Partition part;
  for (int g = 0; g + 1 < static_cast<int>(cuts.size()); ++g)
    part.groups.emplace_back(subset.begin() + cuts[static_cast<std::size_t>(g)],
                             subset.begin() + cuts[static_cast<std::size_t>(g + 1)]);
  return part;
}

// Draw a measure parameter from the validity interval, avoiding the
// removable singularity at 1 and snapping to interval endpoints now and then.
double draw_parameter(Rand& rd, Family fam, Variant var) {
  std::vector<std::pair<double, double>> segs;
  if (fam == Family::tsallis) {
    const double lo = tsallis_q_min(), hi = tsallis_q_max();
    if (var == Variant::standard)
      segs = {{lo, 0.9}, {1.1, hi}};
    else
      segs = {{lo, 0.9}, {1.1, 2.0}, {3.0, hi}};
  } else {
    const double lo = renyi_alpha_min();
    if (var == Variant::standard)
      segs = {{lo, 0.9}, {1.1, 4.0}};
    else
      segs = {{lo, 0.9}, {1.1, renyi_alpha_assist_max()}};
  }
  const auto seg = segs[static_cast<std::size_t>(rd.uniform_int(0, static_cast<int>(segs.size()) - 1))];
  const int snap = rd.uniform_int(0, 7);
  if (snap == 0) return seg.first;
  if (snap == 1) return seg.second;
  return rd.uniform(seg.first, seg.second);
}

}  // namespace

std::string FuzzSummary::to_string() const {
  std::ostringstream os;
  os << "fuzz: states=" << states << " evaluations=" << evaluations << " skipped=" << skipped
     << " violations=" << violations << " worst_margin=" << num12(worst_margin);
  if (!worst_note.empty()) os << "\n  worst: " << worst_note;
  return os.str();
}

FuzzSummary run_fuzz(const FuzzOptions& opt) {
  FuzzSummary sum;
  sum.worst_margin = std::numeric_limits<double>::infinity();
  for (int is = 0; is < opt.n_states; ++is) {
    Rand rd(opt.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(is + 1));
    Scenario sc;
    sc.name = "fuzz-" + std::to_string(is);
    sc.state = random_state(rd);
    sc.partition = random_partition(rd, sc.state.n);
    ++sum.states;
    const int m = static_cast<int>(sc.partition.groups.size()) - 1;

    const std::pair<Family, Variant> configs[4] = {{Family::tsallis, Variant::standard},
                                                   {Family::tsallis, Variant::assistance},
                                                   {Family::renyi, Variant::standard},
                                                   {Family::renyi, Variant::assistance}};
    for (const auto& [fam, var] : configs) {
      sc.measure = {fam, draw_parameter(rd, fam, var), var};
      const PairProfile profile = build_profile(sc);
      const Direction dir = var == Variant::standard ? Direction::monogamy : Direction::polygamy;
      const double e_edge = dir == Direction::monogamy ? 2.0 : 1.0;
      const double e_main =
          dir == Direction::monogamy ? 2.0 + rd.uniform(0.0, 2.0) : rd.uniform(0.2, 1.0);

      std::vector<BoundSpec> fams;
      {
        BoundSpec b;
        b.direction = dir;
        for (const char* tag : {"hamming", "jpower", "tsplit"}) {
          b.family_tag = tag;
          fams.push_back(b);
        }
        if (fam == Family::tsallis && var == Variant::standard) {
          b.family_tag = "gamma";
          b.mu_ref = 2.0 + rd.uniform(0.0, 2.0);
          fams.push_back(b);
        }
      }
      for (BoundSpec spec : fams) {
        const bool split = has_split_index(spec.family_tag);
        const double e_gamma = spec.family_tag == "gamma" ? spec.mu_ref * rd.uniform(0.0, 1.0) : 0.0;
        std::vector<int> ts = split ? std::vector<int>{0, m - 2} : std::vector<int>{-1};
        if (split && ts[0] == ts[1]) ts.pop_back();
        for (int t : ts) {
          if (split) spec.t = t;
          const KInterval ki = feasible_k(profile, spec);
          if (ki.empty) {
            ++sum.skipped;
            continue;
          }
          double lo = ki.lo, hi = ki.hi;
          if (spec.family_tag == "gamma") {
            if (std::isinf(hi)) hi = std::max(2.0 * lo, 10.0);
          } else {
            lo = std::max(lo, 1e-6);
          }
          if (lo > hi) {
            ++sum.skipped;
            continue;
          }
          const double kcand[3] = {lo, hi, 0.5 * (lo + hi)};
          const double exps[2] = {e_edge, spec.family_tag == "gamma" ? e_gamma : e_main};
          for (double k : kcand) {
            for (double e : exps) {
              spec.k = k;
              spec.exponent = spec.family_tag == "gamma" ? std::min(e, spec.mu_ref) : e;
              const BoundReport rep = eval_bound(profile, spec);
              if (!rep.preconds_ok) {
                ++sum.skipped;
                continue;
              }
              ++sum.evaluations;
              const double margin = dir == Direction::monogamy ? rep.slack : -rep.slack;
              if (margin < sum.worst_margin) {
                sum.worst_margin = margin;
                char note[256];
                std::snprintf(note, sizeof note,
                              "state=%d family=%s %s %s param=%.6g k=%.6g exponent=%.6g t=%d",
                              is, spec.family_tag.c_str(),
                              fam == Family::tsallis ? "tsallis" : "renyi",
                              dir == Direction::monogamy ? "monogamy" : "polygamy",
                              sc.measure.parameter, k, spec.exponent, split ? t : -1);
                sum.worst_note = note;
              }
              if (margin < -1e-9) ++sum.violations;
            }
          }
        }
      }
    }
  }
  if (!std::isfinite(sum.worst_margin)) sum.worst_margin = 0.0;
  return sum;
}

}  // namespace gwv
