// curvinv command line: invariant tables, convergence studies, cross-ratio
// reports and tetrahedron-surface data, driven by flags and/or a flat
// key = value config file. Talks to the library through the C API only.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curvinv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

[[noreturn]] void fail_status(curvinv_status st, const std::string& who) {
  int code = kExitNumerical;
  switch (st) {
    case CURVINV_ERR_INVALID_ARGUMENT:
    case CURVINV_ERR_UNKNOWN_CURVE:
    case CURVINV_ERR_INVALID_PARAMS:
    case CURVINV_ERR_IO:
      code = kExitConfig;
      break;
    default:
      break;
  }
  fail(code, who + ": " + curvinv_status_name(st) + " (" + curvinv_last_error() + ")");
}

void check(curvinv_status st, const std::string& who) {
  if (st != CURVINV_OK) fail_status(st, who);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---- config file: "key = value" lines grouped under [section] headers ----

using Config = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(kExitConfig, "cannot open config file: " + path);
  Config cfg;
  std::string line, section;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(kExitConfig, "config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    cfg[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

std::vector<double> parse_doubles(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(kExitConfig, "cannot parse number '" + item + "' in " + what);
    }
  }
  return out;
}

// ---- shared run options (flags override config) ----

struct RunOptions {
  std::string config_path;
  std::string curve_name;
  std::string curve_params;
  std::string polyline;
  std::string domain;
  std::string format;   // csv|json
  std::string out_path;
  std::string which;
  std::string s_range;
  std::string points;
  double s0 = std::numeric_limits<double>::quiet_NaN();
  double tol = std::numeric_limits<double>::quiet_NaN();
  double omega_start = -1.0, omega_ratio = -1.0;
  double epsilon_start = -1.0, epsilon_ratio = -1.0;
  double shared_ratio = -1.0;
  int omega_count = -1, epsilon_count = -1, shared_count = -1;
  int rows = -1;
  int grid = -1;
  long long seed = -1;
  bool random_points = false;

  Config cfg;

  std::string str(const std::string& flag_value, const std::string& key,
                  const std::string& fallback) const {
    if (!flag_value.empty()) return flag_value;
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
  }
  double num(double flag_value, const std::string& key, double fallback) const {
    if (flag_value == flag_value && flag_value != -1.0) return flag_value;  // set
    auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    return parse_doubles(it->second, key).at(0);
  }
};

struct CurveHandle {
  curvinv_curve* curve = nullptr;
  ~CurveHandle() { curvinv_curve_free(curve); }
};
struct MapHandle {
  curvinv_arclength* map = nullptr;
  ~MapHandle() { curvinv_arclength_free(map); }
};
struct ReportHandle {
  curvinv_report* report = nullptr;
  ~ReportHandle() { curvinv_report_free(report); }
};
struct StringHandle {
  char* s = nullptr;
  ~StringHandle() { curvinv_string_free(s); }
};

void build_curve(const RunOptions& opt, CurveHandle& out) {
  std::string polyline = opt.str(opt.polyline, "curve.polyline", "");
  if (!polyline.empty()) {
    check(curvinv_curve_polyline_csv(polyline.c_str(), &out.curve), "polyline");
  } else {
    std::string name = opt.str(opt.curve_name, "curve.name", "");
    if (name.empty())
      fail(kExitConfig, "no curve given (use --curve/--params or a config [curve] section)");
    std::string params = opt.str(opt.curve_params, "curve.params", "");
    std::vector<double> p = parse_doubles(params, "curve params");
    check(curvinv_curve_catalog(name.c_str(), p.data(), p.size(), &out.curve),
          "curve catalog");
  }
  std::string domain = opt.str(opt.domain, "curve.domain", "");
  if (!domain.empty()) {
    std::vector<double> d = parse_doubles(domain, "curve domain");
    if (d.size() != 2) fail(kExitConfig, "curve domain needs two numbers lo,hi");
    curvinv_curve* restricted = nullptr;
    check(curvinv_curve_with_domain(out.curve, d[0], d[1], &restricted), "curve domain");
    curvinv_curve_free(out.curve);
    out.curve = restricted;
  }
}

std::vector<double> build_schedule(const RunOptions& opt, bool omega_based) {
  const char* kind = omega_based ? "omega" : "epsilon";
  double start = omega_based
                     ? opt.num(opt.omega_start, "schedule.omega_start", 0.2)
                     : opt.num(opt.epsilon_start, "schedule.epsilon_start", 0.1);
  double ratio = omega_based ? opt.omega_ratio : opt.epsilon_ratio;
  if (ratio == -1.0) ratio = opt.shared_ratio;
  ratio = opt.num(ratio, std::string("schedule.") + kind + "_ratio", 2.0);
  int count = omega_based ? opt.omega_count : opt.epsilon_count;
  if (count == -1) count = opt.shared_count;
  if (count == -1) {
    auto it = opt.cfg.find(std::string("schedule.") + kind + "_count");
    count = it == opt.cfg.end() ? 5 : static_cast<int>(parse_doubles(it->second, "count")[0]);
  }
  if (!(start > 0.0) || !(ratio > 1.0) || count < 1)
    fail(kExitConfig, std::string("bad ") + kind + " schedule (need start > 0, ratio > 1, count >= 1)");
  std::vector<double> steps(count);
  for (int i = 0; i < count; ++i) steps[i] = start / std::pow(ratio, i);
  return steps;
}

void write_output(const RunOptions& opt, const std::string& content) {
  std::string path = opt.str(opt.out_path, "run.out", "");
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kExitConfig, "cannot open output path: " + path);
  out << content;
  if (!out) fail(kExitConfig, "failed writing output: " + path);
}

// ---- subcommands ----

int cmd_invariants(const RunOptions& opt) {
  CurveHandle curve;
  build_curve(opt, curve);
  MapHandle map;
  check(curvinv_arclength_build(curve.curve, opt.num(opt.tol, "run.tol", 1e-10), &map.map),
        "arclength");

  double lo = 0.0, hi = 0.0;
  std::string range = opt.str(opt.s_range, "run.s_range", "");
  if (!range.empty()) {
    std::vector<double> d = parse_doubles(range, "s range");
    if (d.size() != 2) fail(kExitConfig, "s range needs two numbers lo,hi");
    lo = d[0];
    hi = d[1];
  } else {
    lo = 0.0;
    hi = curvinv_arclength_total(map.map);
  }
  int rows = opt.rows != -1 ? opt.rows : 5;
  if (auto it = opt.cfg.find("run.rows"); opt.rows == -1 && it != opt.cfg.end())
    rows = static_cast<int>(parse_doubles(it->second, "rows")[0]);
  if (rows < 1) fail(kExitConfig, "rows must be >= 1");

  bool json = opt.str(opt.format, "run.format", "csv") == "json";
  std::string csv = "s,kappa,tau,dkappa,nu,sqrt_nu,Q,T,P,status\n";
  std::string jout = "[\n";
  for (int i = 0; i < rows; ++i) {
    double s = rows == 1 ? lo : lo + (hi - lo) * i / (rows - 1);
    curvinv_frenet_data fr{};
    curvinv_conformal_data cs{};
    curvinv_status st_f = curvinv_frenet(curve.curve, map.map, s, &fr);
    curvinv_status st_c = st_f == CURVINV_OK
                              ? curvinv_conformal(curve.curve, map.map, s, &cs)
                              : st_f;
    std::string status = st_c == CURVINV_OK ? "ok" : curvinv_status_name(st_c);
    bool have_frenet = st_f == CURVINV_OK;
    bool have_conformal = st_c == CURVINV_OK;
    auto cell = [](bool have, double v) { return have ? fmt17(v) : std::string(); };
    csv += fmt17(s) + "," + cell(have_frenet, fr.kappa) + "," + cell(have_frenet, fr.tau) +
           "," + cell(have_frenet, fr.dkappa1) + "," + cell(have_conformal, cs.nu) + "," +
           cell(have_conformal, cs.f) + "," + cell(have_conformal, cs.Q) + "," +
           cell(have_conformal, cs.T) + "," + cell(have_conformal, cs.P) + "," + status +
           "\n";
    auto jcell = [](bool have, double v) { return have ? fmt17(v) : std::string("null"); };
    jout += std::string("  {\"s\": ") + fmt17(s) +
            ", \"kappa\": " + jcell(have_frenet, fr.kappa) +
            ", \"tau\": " + jcell(have_frenet, fr.tau) +
            ", \"dkappa\": " + jcell(have_frenet, fr.dkappa1) +
            ", \"nu\": " + jcell(have_conformal, cs.nu) +
            ", \"sqrt_nu\": " + jcell(have_conformal, cs.f) +
            ", \"Q\": " + jcell(have_conformal, cs.Q) +
            ", \"T\": " + jcell(have_conformal, cs.T) +
            ", \"P\": " + jcell(have_conformal, cs.P) + ", \"status\": \"" + status +
            "\"}" + (i + 1 < rows ? ",\n" : "\n");
  }
  jout += "]\n";
  write_output(opt, json ? jout : csv);
  return kExitOk;
}

int cmd_converge(const RunOptions& opt) {
  std::string which = opt.str(opt.which, "run.which", "");
  curvinv_estimator est;
  bool omega_based = false;
  if (which == "nu") est = CURVINV_EST_NU;
  else if (which == "P") { est = CURVINV_EST_P; omega_based = true; }
  else if (which == "T2beta") { est = CURVINV_EST_T2_BETA; omega_based = true; }
  else if (which == "T2gamma") est = CURVINV_EST_T2_GAMMA;
  else if (which == "Q") { est = CURVINV_EST_Q; omega_based = true; }
  else if (which == "kappa") est = CURVINV_EST_KAPPA;
  else if (which == "tau") est = CURVINV_EST_TAU;
  else fail(kExitConfig, "--which must be one of nu|P|T2beta|T2gamma|Q|kappa|tau");

  CurveHandle curve;
  build_curve(opt, curve);
  MapHandle map;
  check(curvinv_arclength_build(curve.curve, opt.num(opt.tol, "run.tol", 1e-10), &map.map),
        "arclength");
  double s0 = opt.num(opt.s0, "run.s0", 0.5 * curvinv_arclength_total(map.map));
  std::vector<double> steps = build_schedule(opt, omega_based);

  ReportHandle rep;
  check(curvinv_estimate(curve.curve, map.map, s0, est, steps.data(), steps.size(),
                         &rep.report),
        "estimate " + which);
  bool json = opt.str(opt.format, "run.format", "csv") == "json";
  StringHandle rendered;
  check(curvinv_report_render(rep.report, json ? 1 : 0, &rendered.s), "render report");
  write_output(opt, rendered.s);

  std::cerr << which << ": extrapolated=" << fmt17(curvinv_report_extrapolated(rep.report))
            << " reference=" << fmt17(curvinv_report_reference(rep.report))
            << " rel_error=" << fmt17(curvinv_report_rel_error(rep.report))
            << " fitted_order=" << fmt17(curvinv_report_fitted_order(rep.report)) << "\n";
  return kExitOk;
}

int cmd_crossratio(const RunOptions& opt) {
  double pts[12];
  std::string text = opt.str(opt.points, "points.list", "");
  long long seed = opt.seed != -1 ? opt.seed : 1;
  if (auto it = opt.cfg.find("run.seed"); opt.seed == -1 && it != opt.cfg.end())
    seed = static_cast<long long>(parse_doubles(it->second, "seed")[0]);
  if (opt.random_points || (text.empty() && opt.cfg.count("points.random"))) {
    // seeded quadruple in the unit box, kept away from coincidence
    unsigned long long state = static_cast<unsigned long long>(seed);
    auto next = [&state]() {
      state += 0x9e3779b97f4a7c15ull;
      unsigned long long z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      z ^= z >> 31;
      return static_cast<double>(z >> 11) * (1.0 / 9007199254740992.0) * 2.0 - 1.0;
    };
    for (double& c : pts) c = next();
  } else if (!text.empty()) {
    std::string flat = text;
    for (char& c : flat)
      if (c == ';') c = ',';
    std::vector<double> v = parse_doubles(flat, "--points");
    if (v.size() != 12)
      fail(kExitConfig, "--points needs 4 points: x,y,z;x,y,z;x,y,z;x,y,z");
    std::copy(v.begin(), v.end(), pts);
  } else {
    fail(kExitConfig, "crossratio needs --points or --random-points");
  }

  bool json = opt.str(opt.format, "run.format", "json") == "json";
  StringHandle rendered;
  check(curvinv_crossratio_report(pts, json ? 1 : 0, &rendered.s), "crossratio");
  write_output(opt, rendered.s);

  double dev = 0.0;
  check(curvinv_crossratio_mobius_deviation(pts, static_cast<unsigned long long>(seed),
                                            10, &dev),
        "mobius check");
  std::cerr << "mobius_invariance_max_deviation=" << fmt17(dev) << " (10 maps, seed "
            << seed << ")\n";
  return kExitOk;
}

int cmd_tetrahedron(const RunOptions& opt) {
  int grid = opt.grid != -1 ? opt.grid : 50;
  if (auto it = opt.cfg.find("run.grid"); opt.grid == -1 && it != opt.cfg.end())
    grid = static_cast<int>(parse_doubles(it->second, "grid")[0]);
  StringHandle csv;
  check(curvinv_tetrahedron_csv(grid, &csv.s), "tetrahedron");
  write_output(opt, csv.s);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  RunOptions opt;
  CLI::App app{"conformal invariants of space curves (kappa/tau, omega, Q, T, P, "
               "cross ratios) and their inscribed-polygon estimators"};
  app.require_subcommand(1);

  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "config file (key = value with [sections])");
    cmd->add_option("--curve", opt.curve_name, "catalog curve: helix | torus_knot | trig_poly");
    cmd->add_option("--params", opt.curve_params, "comma-separated curve parameters");
    cmd->add_option("--polyline", opt.polyline, "CSV polyline path (three columns)");
    cmd->add_option("--domain", opt.domain, "parameter domain override lo,hi");
    cmd->add_option("--format", opt.format, "csv | json");
    cmd->add_option("--out", opt.out_path, "output path (default stdout)");
    cmd->add_option("--seed", opt.seed, "seed for randomized checks");
    cmd->add_option("--tol", opt.tol, "arclength/quadrature tolerance (default 1e-10)");
  };

  CLI::App* inv = app.add_subcommand("invariants", "table of s, kappa, tau, nu, Q, T, P");
  add_common(inv);
  inv->add_option("--s-range", opt.s_range, "arclength range lo,hi (default full curve)");
  inv->add_option("--rows", opt.rows, "number of table rows");

  CLI::App* conv = app.add_subcommand("converge", "estimator convergence study");
  add_common(conv);
  conv->add_option("--which", opt.which, "nu | P | T2beta | T2gamma | Q | kappa | tau");
  conv->add_option("--s0", opt.s0, "expansion point (arclength; default mid-curve)");
  conv->add_option("--omega-start", opt.omega_start, "largest conformal step");
  conv->add_option("--omega-ratio", opt.omega_ratio, "schedule ratio (> 1)");
  conv->add_option("--omega-count", opt.omega_count, "schedule length");
  conv->add_option("--epsilon-start", opt.epsilon_start, "largest metric step");
  conv->add_option("--epsilon-ratio", opt.epsilon_ratio, "schedule ratio (> 1)");
  conv->add_option("--epsilon-count", opt.epsilon_count, "schedule length");
  conv->add_option("--ratio", opt.shared_ratio, "ratio for either schedule");
  conv->add_option("--count", opt.shared_count, "count for either schedule");

  CLI::App* cr = app.add_subcommand("crossratio", "cross ratios and crossing angles of 4 points");
  add_common(cr);
  cr->add_option("--points", opt.points, "four points x,y,z;x,y,z;x,y,z;x,y,z");
  cr->add_flag("--random-points", opt.random_points, "seeded random quadruple");

  CLI::App* tet = app.add_subcommand("tetrahedron", "rounded-tetrahedron surface samples");
  add_common(tet);
  tet->add_option("--grid", opt.grid, "grid resolution (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!opt.config_path.empty()) opt.cfg = load_config(opt.config_path);
    if (inv->parsed()) return cmd_invariants(opt);
    if (conv->parsed()) return cmd_converge(opt);
    if (cr->parsed()) return cmd_crossratio(opt);
    if (tet->parsed()) return cmd_tetrahedron(opt);
    fail(kExitConfig, "no subcommand");
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
