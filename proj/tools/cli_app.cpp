#include "cli_app.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "solgeom/curves.hpp"
#include "solgeom/triangles.hpp"
#include "solgeom/verify.hpp"

namespace solgeom::cli {
namespace {

using nlohmann::json;

struct GlobalOptions {
  std::string format = "json";
  double tol = kTheoremTol;
  std::uint64_t seed = 1;
  bool degrees = false;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string_view::npos ? std::string() : std::string(s.substr(b, e - b + 1));
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json point_json(const SolPoint& p) { return json::array({p.x, p.y, p.z}); }
json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

class Writer {
 public:
  Writer(const GlobalOptions& g, std::ostream& out) : g_(g), out_(out) {}

  bool csv() const { return g_.format == "csv"; }
  double angle(double rad) const { return g_.degrees ? rad * 180.0 / std::numbers::pi : rad; }
  std::string angle_unit() const { return g_.degrees ? "deg" : "rad"; }

  void envelope(const std::string& command, json input, json results) const {
    json env;
    env["command"] = command;
    env["input"] = std::move(input);
    env["results"] = std::move(results);
    env["version"] = std::string(kVersion);
    env["tolerances"] = {{"tol", g_.tol},
                         {"coplanar", kCoplanarTol},
                         {"distinct_vertex", kDistinctVertexTol},
                         {"parallel", kParallelTol}};
    env["angle_unit"] = angle_unit();
    out_ << env.dump(2) << "\n";
  }

  void csv_row(const std::vector<std::string>& cells) const {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out_ << (i ? "," : "") << cells[i];
    }
    out_ << "\n";
  }

 private:
  const GlobalOptions& g_;
  std::ostream& out_;
};

// ----- subcommands ----------------------------------------------------------

int cmd_triangle(const Writer& w, const std::vector<std::string>& verts) {
  const Triangle tri{parse_triple(verts[0]), parse_triple(verts[1]), parse_triple(verts[2])};
  const TriangleReport r = report(tri);

  if (w.csv()) {
    std::vector<std::string> head, row;
    auto add = [&](const std::string& k, const std::string& v) {
      head.push_back(k);
      row.push_back(v);
    };
    const std::pair<const char*, SolPoint> verts_named[] = {{"a1", tri.a1}, {"a2", tri.a2}, {"a3", tri.a3}};
    for (const auto& [name, p] : verts_named) {
      add(std::string(name) + "_x", fmt(p.x));
      add(std::string(name) + "_y", fmt(p.y));
      add(std::string(name) + "_z", fmt(p.z));
    }
    add("omega1", fmt(w.angle(r.angles.omega1)));
    add("omega2", fmt(w.angle(r.angles.omega2)));
    add("omega3", fmt(w.angle(r.angles.omega3)));
    add("angle_sum", fmt(w.angle(r.angle_sum)));
    add("excess", fmt(w.angle(r.excess)));
    add("coplanar", r.coplanarity.coplanar ? "true" : "false");
    add("coplanarity_residual", fmt(r.coplanarity.residual));
    add("coordinate_planar", r.coordinate_planar ? "true" : "false");
    add("near_degenerate", r.near_degenerate ? "true" : "false");
    add("d12", fmt(r.sides[0]));
    add("d23", fmt(r.sides[1]));
    add("d13", fmt(r.sides[2]));
    w.csv_row(head);
    w.csv_row(row);
    return kExitOk;
  }

  const TangentSet& t = r.tangents;
  const VertexImages& im = r.images;
  json res = {
      {"normalized", {{"a1", point_json(r.normalized.a1)}, {"a2", point_json(r.normalized.a2)},
                      {"a3", point_json(r.normalized.a3)}}},
      {"images", {{"a1_2", point_json(im.a1_2)}, {"a3_2", point_json(im.a3_2)}, {"a1_3", point_json(im.a1_3)},
                  {"a2_3", point_json(im.a2_3)}, {"a2_0", point_json(im.a2_0)}, {"a3_0", point_json(im.a3_0)}}},
      {"tangents", {{"t13", vec_json(t.t13)}, {"t12", vec_json(t.t12)}, {"t23", vec_json(t.t23)},
                    {"t32", vec_json(t.t32)}, {"t30", vec_json(t.t30)}, {"t20", vec_json(t.t20)}}},
      {"omega1", w.angle(r.angles.omega1)},
      {"omega2", w.angle(r.angles.omega2)},
      {"omega3", w.angle(r.angles.omega3)},
      {"angle_sum", w.angle(r.angle_sum)},
      {"excess", w.angle(r.excess)},
      {"coplanar", r.coplanarity.coplanar},
      {"coplanarity_residual", r.coplanarity.residual},
      {"coordinate_planar", r.coordinate_planar},
      {"near_degenerate", r.near_degenerate},
      {"sides", {{"d12", r.sides[0]}, {"d23", r.sides[1]}, {"d13", r.sides[2]}}},
  };
  w.envelope("triangle", {{"a1", point_json(tri.a1)}, {"a2", point_json(tri.a2)}, {"a3", point_json(tri.a3)}},
             std::move(res));
  return kExitOk;
}

int emit_rows(const Writer& w, const std::string& command, json input, const std::vector<verify::SweepRow>& rows,
              bool rounded) {
  auto shown = [&](double v) { return rounded ? verify::round_to(v, 5) : v; };
  if (w.csv()) {
    w.csv_row({"value", "omega1", "omega2", "omega3", "sum"});
    for (const auto& r : rows) {
      w.csv_row({fmt(r.value), fmt(shown(w.angle(r.angles.omega1))), fmt(shown(w.angle(r.angles.omega2))),
                 fmt(shown(w.angle(r.angles.omega3))), fmt(shown(w.angle(r.sum)))});
    }
    return kExitOk;
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"value", r.value},
                   {"label", r.label},
                   {"omega1", shown(w.angle(r.angles.omega1))},
                   {"omega2", shown(w.angle(r.angles.omega2))},
                   {"omega3", shown(w.angle(r.angles.omega3))},
                   {"sum", shown(w.angle(r.sum))},
                   {"degenerate", r.degenerate}});
  }
  w.envelope(command, std::move(input), {{"rows", std::move(arr)}});
  return kExitOk;
}

int cmd_tables(const Writer& w, int which, bool rounded) {
  if (which != 1 && which != 2) {
    throw InvalidInput("tables: expected 1 or 2");
  }
  const verify::SweepSpec spec = which == 1 ? verify::table1_spec() : verify::table2_spec();
  return emit_rows(w, "tables", {{"table", which}, {"rounded", rounded}}, verify::table_sweep(spec), rounded);
}

int cmd_sweep(const Writer& w, const std::string& a1, const std::string& a2, const std::string& a3,
              const std::string& free, const std::string& values, bool rounded) {
  verify::SweepSpec spec;
  spec.a1 = parse_triple(a1);
  spec.a2 = parse_triple(a2);
  spec.a3_template = parse_triple(a3);
  if (free == "x") {
    spec.free_axis = verify::Axis::x;
  } else if (free == "y") {
    spec.free_axis = verify::Axis::y;
  } else if (free == "z") {
    spec.free_axis = verify::Axis::z;
  } else {
    throw InvalidInput("sweep: --free must be x, y or z");
  }
  spec.values = parse_list(values);
  json input = {{"a1", point_json(spec.a1)}, {"a2", point_json(spec.a2)}, {"a3", point_json(spec.a3_template)},
                {"free", free}, {"values", spec.values}};
  return emit_rows(w, "sweep", std::move(input), verify::table_sweep(spec), rounded);
}

int cmd_curve(const Writer& w, double phi, double theta, double t, int n) {
  const CurveParams p = CurveParams::checked(phi, theta, t);
  const auto pts = sample_curve(p, n);
  if (w.csv()) {
    w.csv_row({"i", "t", "x", "y", "z"});
    for (int i = 0; i < n; ++i) {
      const double ti = (i == n - 1) ? p.t : p.t * static_cast<double>(i) / (n - 1);
      const SolPoint& s = pts[static_cast<std::size_t>(i)];
      w.csv_row({std::to_string(i), fmt(ti), fmt(s.x), fmt(s.y), fmt(s.z)});
    }
    return kExitOk;
  }
  json arr = json::array();
  for (const SolPoint& s : pts) {
    arr.push_back(point_json(s));
  }
  w.envelope("curve", {{"phi", phi}, {"theta", theta}, {"t", t}, {"n", n}},
             {{"points", std::move(arr)}, {"endpoint", point_json(pts.back())}});
  return kExitOk;
}

int cmd_params(const Writer& w, const SolPoint& p) {
  if (p.is_finite() && p == SolPoint::origin()) {
    throw DegenerateInput("params: the origin has no translation curve");
  }
  const EndpointSolution s = solve_endpoint(p);
  const std::string branch(to_string(s.branch));
  if (w.csv()) {
    w.csv_row({"phi", "theta", "t", "case", "distance", "residual"});
    w.csv_row({fmt(w.angle(s.params.dir.phi)), fmt(w.angle(s.params.dir.theta)), fmt(s.params.t), branch,
               fmt(s.params.t), fmt(s.residual)});
    return kExitOk;
  }
  w.envelope("params", {{"point", point_json(p)}},
             {{"phi", w.angle(s.params.dir.phi)},
              {"theta", w.angle(s.params.dir.theta)},
              {"t", s.params.t},
              {"case", branch},
              {"distance", s.params.t},
              {"residual", s.residual}});
  return kExitOk;
}

int cmd_distance(const Writer& w, const SolPoint& p, const SolPoint& q) {
  const double d = translation_distance(p, q);
  if (w.csv()) {
    w.csv_row({"distance"});
    w.csv_row({fmt(d)});
    return kExitOk;
  }
  w.envelope("distance", {{"p", point_json(p)}, {"q", point_json(q)}}, {{"distance", d}});
  return kExitOk;
}

const std::vector<std::string> kSuites = {"theorem",    "planar",      "antipodality", "round_trip",
                                          "ode_oracle", "brute_force", "unit_speed",   "distance_symmetry"};

int cmd_verify(const Writer& w, const GlobalOptions& g, std::uint64_t trials, std::vector<std::string> suites,
               std::ostream& err) {
  if (trials < 1) {
    throw InvalidInput("verify: --trials must be >= 1");
  }
  if (suites.empty() || std::find(suites.begin(), suites.end(), "all") != suites.end()) {
    suites = kSuites;
  }
  for (const auto& s : suites) {
    if (std::find(kSuites.begin(), kSuites.end(), s) == kSuites.end()) {
      throw InvalidInput("verify: unknown suite '" + s + "'");
    }
  }

  json results = json::array();
  std::vector<std::vector<std::string>> csv_rows;
  std::uint64_t total_violations = 0;

  auto record = [&](const verify::PropertyCheck& c, json extra) {
    json j = {{"suite", c.name},         {"trials", c.trials},         {"seed", c.seed},
              {"tolerance", c.tolerance}, {"max_error", c.max_error}, {"violations", c.violations}};
    if (c.first_failure) {
      j["first_failure"] = {{"trial", *c.first_failure}, {"input", c.first_failure_input}};
      err << c.name << ": violation at trial " << *c.first_failure << ": " << c.first_failure_input << "\n";
    }
    j.update(extra);
    results.push_back(j);
    csv_rows.push_back({c.name, std::to_string(c.trials), std::to_string(c.seed), fmt(c.tolerance), fmt(c.max_error),
                        std::to_string(c.violations)});
    total_violations += c.violations;
  };

  for (const auto& s : suites) {
    if (s == "theorem") {
      const verify::ScanResult r = verify::theorem_scan(trials, g.seed, {}, g.tol);
      verify::PropertyCheck c{"theorem", r.trials, r.seed, g.tol, std::max(0.0, -r.min_excess), r.violations,
                              r.first_violation, {}};
      if (r.first_violation_triangle) {
        const Triangle& t = *r.first_violation_triangle;
        c.first_failure_input = to_string(t.a1) + " " + to_string(t.a2) + " " + to_string(t.a3);
      }
      record(c, {{"min_sum", r.min_sum}, {"max_sum", r.max_sum}, {"min_excess", r.min_excess}});
    } else if (s == "planar") {
      record(verify::planar_suite(trials, g.seed, g.tol), json::object());
    } else if (s == "antipodality") {
      record(verify::antipodality_suite(trials, g.seed, g.tol), json::object());
    } else if (s == "round_trip") {
      record(verify::round_trip_suite(trials, g.seed, g.tol), json::object());
    } else if (s == "ode_oracle") {
      record(verify::ode_suite(trials, g.seed), json::object());
    } else if (s == "brute_force") {
      record(verify::brute_force_suite(trials, g.seed), json::object());
    } else if (s == "unit_speed") {
      record(verify::unit_speed_suite(trials, g.seed), json::object());
    } else if (s == "distance_symmetry") {
      record(verify::distance_symmetry_suite(trials, g.seed, g.tol), json::object());
    }
  }

  if (w.csv()) {
    w.csv_row({"suite", "trials", "seed", "tolerance", "max_error", "violations"});
    for (const auto& row : csv_rows) {
      w.csv_row(row);
    }
  } else {
    w.envelope("verify", {{"trials", trials}, {"seed", g.seed}, {"suites", suites}},
               {{"suites", std::move(results)}, {"violations", total_violations}});
  }
  return total_violations == 0 ? kExitOk : kExitViolation;
}

}  // namespace

// ----- parsing --------------------------------------------------------------

double parse_real(std::string_view text) {
  const std::string s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const double num = parse_real(std::string_view(s).substr(0, slash));
    const double den = parse_real(std::string_view(s).substr(slash + 1));
    if (den == 0.0) {
      throw InvalidInput("malformed number '" + s + "': zero denominator");
    }
    return num / den;
  }
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw InvalidInput("malformed number '" + s + "'");
  }
  return v;
}

SolPoint parse_triple(std::string_view text) {
  const std::vector<double> v = parse_list(text);
  if (v.size() != 3) {
    throw InvalidInput("expected a coordinate triple x,y,z but got '" + std::string(text) + "'");
  }
  return {v[0], v[1], v[2]};
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  GlobalOptions g;
  CLI::App app{"Translation-curve geometry in Sol: triangles, tables, curves and property checks", "solgeom"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol", g.tol, "Display/check tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for property scans");
  app.add_flag("--degrees", g.degrees, "Display angles in degrees");

  std::vector<std::string> tri_verts;
  auto* tri = app.add_subcommand("triangle", "Interior angles and diagnostics of a translation triangle");
  tri->add_option("vertices", tri_verts, "Three vertices as x,y,z")->expected(3)->required();

  int which = 0;
  bool rounded = false;
  auto* tables = app.add_subcommand("tables", "Print the reference angle sweeps");
  tables->add_option("which", which, "Table number (1 or 2)")->required();
  tables->add_flag("--rounded", rounded, "Round angles to 5 decimals");

  std::string phi_s, theta_s, t_s;
  int n = 50;
  auto* curve = app.add_subcommand("curve", "Sample a translation curve from the origin");
  curve->add_option("phi", phi_s, "Azimuth, -pi <= phi <= pi")->required();
  curve->add_option("theta", theta_s, "Elevation, -pi/2 <= theta <= pi/2")->required();
  curve->add_option("t", t_s, "Arc length, t >= 0")->required();
  curve->add_option("-n,--samples", n, "Number of samples (>= 2)");

  std::string px, py, pz;
  auto* params = app.add_subcommand("params", "Curve parameters and distance from the origin to a point");
  params->add_option("x", px)->required();
  params->add_option("y", py)->required();
  params->add_option("z", pz)->required();

  std::string dp, dq;
  auto* distance = app.add_subcommand("distance", "Translation distance between two points");
  distance->add_option("p", dp, "x,y,z")->required();
  distance->add_option("q", dq, "x,y,z")->required();

  std::string sa1 = "0,0,0", sa2, sa3, sfree, svalues;
  auto* sweep = app.add_subcommand("sweep", "Angles while one coordinate of A3 varies");
  sweep->add_option("--a1", sa1, "First vertex x,y,z");
  sweep->add_option("--a2", sa2, "Second vertex x,y,z")->required();
  sweep->add_option("--a3", sa3, "Third vertex template x,y,z")->required();
  sweep->add_option("--free", sfree, "Free coordinate of A3 (x, y or z)")->required();
  sweep->add_option("--values", svalues, "Comma-separated values")->required();
  sweep->add_flag("--rounded", rounded, "Round angles to 5 decimals");

  std::uint64_t trials = 1000;
  std::vector<std::string> suites;
  auto* ver = app.add_subcommand("verify", "Run seeded property suites");
  ver->add_option("--trials", trials, "Trials per suite");
  ver->add_option("--suite", suites, "Suites to run (default all)")->delimiter(',');

  for (auto* sub : {tri, tables, curve, params, distance, sweep, ver}) {
    sub->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const Writer w(g, out);
  try {
    if (*tri) return cmd_triangle(w, tri_verts);
    if (*tables) return cmd_tables(w, which, rounded);
    if (*curve) {
      if (n < 2) throw InvalidInput("curve: --samples must be >= 2");
      return cmd_curve(w, parse_real(phi_s), parse_real(theta_s), parse_real(t_s), n);
    }
    if (*params) return cmd_params(w, {parse_real(px), parse_real(py), parse_real(pz)});
    if (*distance) return cmd_distance(w, parse_triple(dp), parse_triple(dq));
    if (*sweep) return cmd_sweep(w, sa1, sa2, sa3, sfree, svalues, rounded);
    if (*ver) return cmd_verify(w, g, trials, suites, err);
  } catch (const DegenerateInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace solgeom::cli
