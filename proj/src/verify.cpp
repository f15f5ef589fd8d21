#include "solgeom/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace solgeom::verify {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform in (0, hi]; the half-open draw is flipped so zero cannot occur.
double uniform_positive(std::mt19937_64& rng, double hi) { return hi - uniform(rng, 0.0, hi); }

double nonzero_uniform(std::mt19937_64& rng, double lo, double hi) {
  double v = 0.0;
  while (v == 0.0) {
    v = uniform(rng, lo, hi);
  }
  return v;
}

std::string describe_point(const SolPoint& p) { return to_string(p); }

std::string describe_triangle(const Triangle& t) {
  return to_string(t.a1) + " " + to_string(t.a2) + " " + to_string(t.a3);
}

std::string describe_params(const CurveParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "phi=" << p.dir.phi << " theta=" << p.dir.theta << " t=" << p.t;
  return os.str();
}

double max_norm(const SolPoint& p) { return std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)}); }

// ----- brute-force inverse -------------------------------------------------

// Unknowns for the search: phi always, theta only off the base plane. The arc
// length follows from the target: z = t sin(theta), or the planar norm when z = 0.
struct SearchProblem {
  SolPoint target;

  bool planar() const { return target.z == 0.0; }

  std::optional<CurveParams> params_at(double phi, double theta) const {
    if (planar()) {
      return CurveParams{{phi, 0.0}, std::hypot(target.x, target.y)};
    }
    const double s = std::sin(theta);
    if (s == 0.0 || std::signbit(s) != std::signbit(target.z)) {
      return std::nullopt;
    }
    return CurveParams{{phi, theta}, target.z / s};
  }

  double residual(double phi, double theta) const {
    const auto p = params_at(phi, theta);
    if (!p) {
      return kInf;
    }
    return coord_distance(curve_point(*p), target);
  }

  Eigen::Vector2d error_xy(double phi, double theta) const {
    const SolPoint q = curve_point(*params_at(phi, theta));
    return {q.x - target.x, q.y - target.y};
  }
};

// Keeps theta in the half-range selected by sign(z); a step past the pole is
// reflected (theta -> ±pi - theta, phi -> phi + pi), which is the same curve.
void fold_angles(const SearchProblem& prob, double& phi, double& theta) {
  if (prob.planar()) {
    theta = 0.0;
  } else {
    const double sgn = std::copysign(1.0, prob.target.z);
    if (sgn * theta > kHalfPi) {
      theta = sgn * kPi - theta;
      phi += kPi;
    }
    if (sgn * theta <= 0.0) {
      theta = sgn * 1e-12;
    }
  }
  phi = wrap_angle(phi);
}

// Levenberg-Marquardt on the (x, y) residual with a central-difference
// Jacobian. z is matched exactly by construction of t.
double polish(const SearchProblem& prob, double& phi, double& theta) {
  const int n = prob.planar() ? 1 : 2;
  double res = prob.residual(phi, theta);
  double lambda = 1e-6;
  const double scale = std::max(1.0, max_norm(prob.target));
  for (int iter = 0; iter < 200 && res > 1e-15 * scale; ++iter) {
    const Eigen::Vector2d f = prob.error_xy(phi, theta);
    Eigen::Matrix2d jac = Eigen::Matrix2d::Zero();
    constexpr double h = 1e-7;
    for (int k = 0; k < n; ++k) {
      const double dp = (k == 0) ? h : 0.0;
      const double dt = (k == 1) ? h : 0.0;
      const bool plus_ok = prob.params_at(phi + dp, theta + dt).has_value();
      const bool minus_ok = prob.params_at(phi - dp, theta - dt).has_value();
      // One-sided next to theta = 0, where t = z / sin(theta) is undefined.
      if (plus_ok && minus_ok) {
        jac.col(k) = (prob.error_xy(phi + dp, theta + dt) - prob.error_xy(phi - dp, theta - dt)) / (2.0 * h);
      } else if (plus_ok) {
        jac.col(k) = (prob.error_xy(phi + dp, theta + dt) - f) / h;
      } else {
        jac.col(k) = (f - prob.error_xy(phi - dp, theta - dt)) / h;
      }
    }
    const Eigen::Matrix2d jtj = jac.transpose() * jac;
    const Eigen::Vector2d g = jac.transpose() * f;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::Matrix2d a = jtj;
      for (int k = 0; k < n; ++k) {
        a(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      }
      if (n == 1) {
        a(1, 1) = 1.0;
      }
      const Eigen::Vector2d step = a.ldlt().solve(-g);
      double cand_phi = phi + step(0);
      double cand_theta = theta + (n == 2 ? step(1) : 0.0);
      fold_angles(prob, cand_phi, cand_theta);
      const double cand_res = prob.residual(cand_phi, cand_theta);
      if (cand_res < res) {
        phi = cand_phi;
        theta = cand_theta;
        res = cand_res;
        lambda = std::max(lambda / 10.0, 1e-15);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) {
      break;
    }
  }
  return res;
}

// ----- parallel harness ----------------------------------------------------

double safe_trial(const TrialFn& fn, std::mt19937_64& rng, std::string* describe) {
  try {
    const double e = fn(rng, describe);
    return std::isnan(e) ? kInf : e;
  } catch (const std::exception& ex) {
    if (describe != nullptr) {
      *describe += std::string(" [threw: ") + ex.what() + "]";
    }
    return kInf;
  }
}

void fill_first_failure(PropertyCheck& check, const TrialFn& fn) {
  if (!check.first_failure) {
    return;
  }
  auto rng = trial_engine(check.seed, *check.first_failure);
  std::string text;
  safe_trial(fn, rng, &text);
  check.first_failure_input = text;
}

}  // namespace

// ----- oracles --------------------------------------------------------------

SolPoint ode_oracle_curve(const Direction& dir, double t_end, int steps) {
  if (steps < 100) {
    throw InvalidInput("ode_oracle_curve: steps must be >= 100");
  }
  const Vec3 uvw = dir.unit_tangent();
  const double u = uvw.x(), v = uvw.y(), w = uvw.z();
  auto rhs = [&](const Vec3& s) { return Vec3(u * std::exp(-s.z()), v * std::exp(s.z()), w); };

  const double h = t_end / steps;
  Vec3 s = Vec3::Zero();
  for (int i = 0; i < steps; ++i) {
    const Vec3 k1 = rhs(s);
    const Vec3 k2 = rhs(s + 0.5 * h * k1);
    const Vec3 k3 = rhs(s + 0.5 * h * k2);
    const Vec3 k4 = rhs(s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return {s.x(), s.y(), s.z()};
}

BruteForceResult brute_force_params(const SolPoint& p, int grid) {
  if (!p.is_finite() || p == SolPoint::origin()) {
    throw InvalidInput("brute_force_params: endpoint must be finite and not the origin");
  }
  grid = std::max(grid, 8);
  const SearchProblem prob{p};
  const int n_phi = grid;
  const int n_theta = prob.planar() ? 1 : grid / 2;
  const double sgn = std::copysign(1.0, p.z);

  struct Seed {
    double res, phi, theta;
  };
  std::vector<Seed> seeds;
  seeds.reserve(static_cast<std::size_t>(n_phi * n_theta));
  for (int i = 1; i <= n_phi; ++i) {
    const double phi = -kPi + 2.0 * kPi * i / n_phi;
    for (int j = 1; j <= n_theta; ++j) {
      const double theta = prob.planar() ? 0.0 : (j == n_theta ? sgn * kHalfPi : sgn * kHalfPi * j / n_theta);
      seeds.push_back({prob.residual(phi, theta), phi, theta});
    }
  }
  const std::size_t keep = std::min<std::size_t>(4, seeds.size());
  std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(keep), seeds.end(),
                    [](const Seed& a, const Seed& b) { return a.res < b.res; });

  BruteForceResult best;
  best.residual = kInf;
  for (std::size_t k = 0; k < keep; ++k) {
    double phi = seeds[k].phi;
    double theta = seeds[k].theta;
    const double res = polish(prob, phi, theta);
    if (res < best.residual) {
      best.residual = res;
      best.params = *prob.params_at(phi, theta);
    }
  }
  if (best.params.dir.is_vertical()) {
    best.params.dir.phi = 0.0;
  }
  best.converged = best.residual <= 1e-10 * std::max(1.0, max_norm(p));
  return best;
}

double params_distance(const CurveParams& a, const CurveParams& b) {
  const bool vertical = std::abs(std::cos(a.dir.theta)) < 1e-12 && std::abs(std::cos(b.dir.theta)) < 1e-12;
  const double dphi = vertical ? 0.0 : std::abs(wrap_angle(a.dir.phi - b.dir.phi));
  return std::max({dphi, std::abs(a.dir.theta - b.dir.theta), std::abs(a.t - b.t)});
}

// ----- sweeps ---------------------------------------------------------------

void SweepSpec::validate() const {
  if (values.empty()) {
    throw InvalidInput("sweep: value list is empty");
  }
  if (!labels.empty() && labels.size() != values.size()) {
    throw InvalidInput("sweep: labels must match values one-to-one");
  }
}

Triangle SweepSpec::triangle_for(double value) const {
  SolPoint a3 = a3_template;
  switch (free_axis) {
    case Axis::x: a3.x = value; break;
    case Axis::y: a3.y = value; break;
    case Axis::z: a3.z = value; break;
  }
  return {a1, a2, a3};
}

namespace {

const std::vector<double> kTableValues = {-10.0, -2.0, -1.0, 0.01, 0.1, 0.5, 0.75, 1.5, 2.0, 5.0, 10.0};
const std::vector<std::string> kTableLabels = {"-10", "-2", "-1", "1/100", "1/10", "1/2",
                                               "3/4", "3/2", "2",  "5",     "10"};

}  // namespace

SweepSpec table1_spec() {
  return {SolPoint::origin(), {-1.0, 1.0, 1.0}, {0.5, 5.0, 0.0}, Axis::z, kTableValues, kTableLabels};
}

SweepSpec table2_spec() {
  return {SolPoint::origin(), {-1.0, 1.0, 1.0}, {0.5, 0.0, 0.5}, Axis::y, kTableValues, kTableLabels};
}

std::vector<SweepRow> table_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows;
  rows.reserve(spec.values.size());
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    SweepRow row;
    row.value = spec.values[i];
    row.label = spec.labels.empty() ? std::string() : spec.labels[i];
    try {
      row.angles = interior_angles(spec.triangle_for(row.value));
      row.sum = row.angles.sum();
    } catch (const DegenerateInput&) {
      row.degenerate = true;
      row.angles = {std::nan(""), std::nan(""), std::nan("")};
      row.sum = std::nan("");
    }
    rows.push_back(row);
  }
  return rows;
}

double round_to(double v, int decimals) {
  const double f = std::pow(10.0, decimals);
  return std::round(v * f) / f;
}

// ----- random inputs --------------------------------------------------------

std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(seed + trial);
}

Triangle random_triangle(std::mt19937_64& rng, const Box& box) {
  auto draw = [&] {
    return SolPoint{uniform(rng, box.lo, box.hi), uniform(rng, box.lo, box.hi), uniform(rng, box.lo, box.hi)};
  };
  Triangle t{draw(), draw(), draw()};
  while (coord_distance(t.a1, t.a2) < 1e-6 || coord_distance(t.a2, t.a3) < 1e-6 ||
         coord_distance(t.a1, t.a3) < 1e-6) {
    t = {draw(), draw(), draw()};
  }
  return t;
}

Triangle random_planar_triangle(std::mt19937_64& rng, Axis axis, bool through_origin, const Box& box) {
  const double level = through_origin ? 0.0 : uniform(rng, box.lo, box.hi);
  auto draw = [&] {
    SolPoint p{uniform(rng, box.lo, box.hi), uniform(rng, box.lo, box.hi), uniform(rng, box.lo, box.hi)};
    switch (axis) {
      case Axis::x: p.x = level; break;
      case Axis::y: p.y = level; break;
      case Axis::z: p.z = level; break;
    }
    return p;
  };
  Triangle t{draw(), draw(), draw()};
  while (coord_distance(t.a1, t.a2) < 1e-6 || coord_distance(t.a2, t.a3) < 1e-6 ||
         coord_distance(t.a1, t.a3) < 1e-6) {
    t = {draw(), draw(), draw()};
  }
  return t;
}

CurveParams random_params(std::mt19937_64& rng, EndpointCase branch, double t_max) {
  const double t = uniform_positive(rng, t_max);
  switch (branch) {
    case EndpointCase::generic: {
      double phi = uniform(rng, -kPi, kPi);
      while (phi == 0.0 || phi == -kPi) {
        phi = uniform(rng, -kPi, kPi);
      }
      return {{phi, nonzero_uniform(rng, -kHalfPi, kHalfPi)}, t};
    }
    case EndpointCase::y_zero: {
      const double phi = (rng() & 1U) ? kPi : 0.0;
      return {{phi, nonzero_uniform(rng, -kHalfPi, kHalfPi)}, t};
    }
    case EndpointCase::z_zero: {
      const double phi = wrap_angle(uniform(rng, -kPi, kPi));
      return {{phi, 0.0}, t};
    }
    case EndpointCase::axis:
      return {{0.0, (rng() & 1U) ? kHalfPi : -kHalfPi}, t};
  }
  return {};
}

SolPoint random_endpoint(std::mt19937_64& rng, EndpointCase branch, const Box& box) {
  const double x = nonzero_uniform(rng, box.lo, box.hi);
  const double y = nonzero_uniform(rng, box.lo, box.hi);
  const double z = nonzero_uniform(rng, box.lo, box.hi);
  switch (branch) {
    case EndpointCase::generic: return {x, y, z};
    case EndpointCase::y_zero: return {x, 0.0, z};
    case EndpointCase::z_zero: return {x, y, 0.0};
    case EndpointCase::axis: return {0.0, 0.0, z};
  }
  return {x, y, z};
}

// ----- scans ----------------------------------------------------------------

namespace {

struct ScanTrial {
  Triangle tri;
  double sum;
};

ScanTrial scan_trial(std::uint64_t seed, std::uint64_t i, const Box& box) {
  auto rng = trial_engine(seed, i);
  const Triangle tri = random_triangle(rng, box);
  return {tri, angle_sum(tri)};
}

ScanResult finish_scan(std::uint64_t trials, std::uint64_t seed, const Box& box, double min_sum,
                       double max_sum, std::uint64_t violations, std::uint64_t first) {
  ScanResult r;
  r.trials = trials;
  r.seed = seed;
  r.min_sum = min_sum;
  r.max_sum = max_sum;
  r.min_excess = min_sum - kPi;
  r.violations = violations;
  if (violations > 0) {
    r.first_violation = first;
    r.first_violation_triangle = scan_trial(seed, first, box).tri;
  }
  return r;
}

}  // namespace

ScanResult theorem_scan(std::uint64_t trials, std::uint64_t seed, const Box& box, double tol) {
  if (trials < 1) {
    throw InvalidInput("theorem_scan: trials must be >= 1");
  }
  double min_sum = kInf;
  double max_sum = -kInf;
  std::uint64_t violations = 0;
  std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(min : min_sum, first) reduction(max : max_sum) \
    reduction(+ : violations)
  for (std::int64_t i = 0; i < n; ++i) {
    const double s = scan_trial(seed, static_cast<std::uint64_t>(i), box).sum;
    min_sum = std::min(min_sum, s);
    max_sum = std::max(max_sum, s);
    if (!(s >= kPi - tol)) {
      ++violations;
      first = std::min(first, static_cast<std::uint64_t>(i));
    }
  }
  return finish_scan(trials, seed, box, min_sum, max_sum, violations, first);
}

ScanResult theorem_scan_serial(std::uint64_t trials, std::uint64_t seed, const Box& box, double tol) {
  if (trials < 1) {
    throw InvalidInput("theorem_scan: trials must be >= 1");
  }
  double min_sum = kInf;
  double max_sum = -kInf;
  std::uint64_t violations = 0;
  std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 0; i < trials; ++i) {
    const double s = scan_trial(seed, i, box).sum;
    min_sum = std::min(min_sum, s);
    max_sum = std::max(max_sum, s);
    if (!(s >= kPi - tol)) {
      ++violations;
      first = std::min(first, i);
    }
  }
  return finish_scan(trials, seed, box, min_sum, max_sum, violations, first);
}

PropertyCheck run_property(std::string name, std::uint64_t trials, std::uint64_t seed, double tol,
                           const TrialFn& fn) {
  double max_error = 0.0;
  std::uint64_t violations = 0;
  std::uint64_t first = std::numeric_limits<std::uint64_t>::max();
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 16) reduction(max : max_error) reduction(+ : violations) \
    reduction(min : first)
  for (std::int64_t i = 0; i < n; ++i) {
    auto rng = trial_engine(seed, static_cast<std::uint64_t>(i));
    const double e = safe_trial(fn, rng, nullptr);
    max_error = std::max(max_error, e);
    if (!(e <= tol)) {
      ++violations;
      first = std::min(first, static_cast<std::uint64_t>(i));
    }
  }
  PropertyCheck check{std::move(name), trials, seed, tol, max_error, violations, std::nullopt, {}};
  if (violations > 0) {
    check.first_failure = first;
  }
  fill_first_failure(check, fn);
  return check;
}

PropertyCheck run_property_serial(std::string name, std::uint64_t trials, std::uint64_t seed,
                                  double tol, const TrialFn& fn) {
  PropertyCheck check{std::move(name), trials, seed, tol, 0.0, 0, std::nullopt, {}};
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto rng = trial_engine(seed, i);
    const double e = safe_trial(fn, rng, nullptr);
    check.max_error = std::max(check.max_error, e);
    if (!(e <= tol)) {
      ++check.violations;
      if (!check.first_failure) {
        check.first_failure = i;
      }
    }
  }
  fill_first_failure(check, fn);
  return check;
}

// ----- suites ---------------------------------------------------------------

namespace {

constexpr std::array<EndpointCase, 4> kCases = {EndpointCase::generic, EndpointCase::y_zero,
                                                EndpointCase::z_zero, EndpointCase::axis};

EndpointCase pick_case(std::mt19937_64& rng) { return kCases[rng() % kCases.size()]; }

}  // namespace

PropertyCheck theorem_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("theorem", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const Triangle tri = random_triangle(rng, {});
    if (d) *d = describe_triangle(tri);
    return std::max(0.0, kPi - angle_sum(tri));
  });
}

PropertyCheck planar_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("planar", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const auto axis = static_cast<Axis>(rng() % 3);
    const bool through_origin = (rng() & 1U) != 0;
    const Triangle tri = random_planar_triangle(rng, axis, through_origin);
    if (d) *d = describe_triangle(tri);
    const TriangleReport rep = report(tri);
    return std::max(std::abs(rep.excess), rep.coplanarity.coplanar ? 0.0 : 1.0);
  });
}

PropertyCheck antipodality_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("antipodality", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const Triangle tri = random_triangle(rng, {});
    if (d) *d = describe_triangle(tri);
    const TangentSet t = tangent_directions(tri);
    return std::max({(t.t20 + t.t12).norm(), (t.t30 + t.t13).norm(), (t.t32 + t.t23).norm()});
  });
}

PropertyCheck round_trip_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("round_trip", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const EndpointCase branch = pick_case(rng);
    const CurveParams p = random_params(rng, branch, 10.0);
    if (d) *d = describe_params(p);
    const EndpointSolution sol = solve_endpoint(curve_point(p));
    if (sol.branch != branch) {
      return kInf;
    }
    return params_distance(p, sol.params);
  });
}

PropertyCheck ode_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("ode_oracle", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const Direction dir{uniform(rng, -kPi, kPi), uniform(rng, -kHalfPi, kHalfPi)};
    const CurveParams p{dir, uniform_positive(rng, 5.0)};
    if (d) *d = describe_params(p);
    return coord_distance(ode_oracle_curve(dir, p.t, 10000), curve_point(p));
  });
}

PropertyCheck brute_force_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("brute_force", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const SolPoint p = random_endpoint(rng, pick_case(rng));
    if (d) *d = describe_point(p);
    const BruteForceResult oracle = brute_force_params(p);
    if (!oracle.converged) {
      return kInf;
    }
    return params_distance(params_from_endpoint(p), oracle.params);
  });
}

PropertyCheck unit_speed_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("unit_speed", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const CurveParams p = random_params(rng, pick_case(rng), 10.0);
    if (d) *d = describe_params(p);
    return std::abs(MetricTensor::at(curve_point(p)).norm(curve_tangent(p)) - 1.0);
  });
}

PropertyCheck distance_symmetry_suite(std::uint64_t trials, std::uint64_t seed, double tol) {
  return run_property("distance_symmetry", trials, seed, tol, [](std::mt19937_64& rng, std::string* d) {
    const Triangle tri = random_triangle(rng, {});
    if (d) *d = describe_point(tri.a1) + " " + describe_point(tri.a2);
    return std::abs(translation_distance(tri.a1, tri.a2) - translation_distance(tri.a2, tri.a1));
  });
}

}  // namespace solgeom::verify
