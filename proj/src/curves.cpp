#include "solgeom/curves.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace solgeom {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

// Principal arccot(a / b) in (0, pi), without forming the quotient.
double arccot_ratio(double a, double b) {
  if (b == 0.0) {
    return a >= 0.0 ? 0.0 : kPi;
  }
  return std::atan2(std::abs(b), std::copysign(1.0, b) * a);
}

// Solves cot(theta) = a / b for theta in (-pi/2, pi/2), a != 0. Same angle as
// principal arccot shifted down by pi on its upper half, without the cancellation.
double theta_from_cot(double a, double b) { return std::atan2(std::copysign(1.0, a) * b, std::abs(a)); }

// cos/sin that return exact zeros on the coordinate half-axes, so curves with
// phi in {0, pi/2, pi, -pi/2} stay in their coordinate planes.
std::pair<double, double> cos_sin(double phi) {
  if (phi == 0.0) return {1.0, 0.0};
  if (phi == kHalfPi) return {0.0, 1.0};
  if (phi == kPi || phi == -kPi) return {-1.0, 0.0};
  if (phi == -kHalfPi) return {0.0, -1.0};
  return {std::cos(phi), std::sin(phi)};
}

struct Candidate {
  double phi;
  double theta;
  double t;
};

}  // namespace

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a <= -kPi ? a + 2.0 * kPi : a;
}

Direction Direction::checked(double phi, double theta) {
  if (!std::isfinite(phi) || !std::isfinite(theta) || phi < -kPi || phi > kPi ||
      theta < -kHalfPi || theta > kHalfPi) {
    throw InvalidInput(
        "direction out of range: require -pi <= phi <= pi and -pi/2 <= theta <= pi/2");
  }
  return {phi == -kPi ? kPi : phi, theta};
}

bool Direction::is_vertical() const { return std::abs(theta) == kHalfPi; }

Vec3 Direction::unit_tangent() const {
  if (is_vertical()) {
    return {0.0, 0.0, std::copysign(1.0, theta)};
  }
  const double c = std::cos(theta);
  const auto [cp, sp] = cos_sin(phi);
  return {c * cp, c * sp, std::sin(theta)};
}

CurveParams CurveParams::checked(double phi, double theta, double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw InvalidInput("arc length t must be finite and >= 0");
  }
  return {Direction::checked(phi, theta), t};
}

std::string_view to_string(EndpointCase c) {
  switch (c) {
    case EndpointCase::generic: return "generic";
    case EndpointCase::y_zero: return "y0";
    case EndpointCase::z_zero: return "z0";
    case EndpointCase::axis: return "axis";
  }
  return "unknown";
}

SolPoint curve_point(const CurveParams& p) {
  const double theta = p.dir.theta;
  const double t = p.t;
  const auto [cp, sp] = cos_sin(p.dir.phi);
  if (theta == 0.0) {
    return {t * cp, t * sp, 0.0};
  }
  if (p.dir.is_vertical()) {
    return {0.0, 0.0, std::copysign(t, theta)};
  }
  const double z = t * std::sin(theta);
  const double cot = std::cos(theta) / std::sin(theta);
  return {-cot * cp * std::expm1(-z), cot * sp * std::expm1(z), z};
}

Vec3 curve_tangent(const CurveParams& p) {
  const Vec3 uvw = p.dir.unit_tangent();
  const double z = p.t * uvw.z();
  return {uvw.x() * std::exp(-z), uvw.y() * std::exp(z), uvw.z()};
}

EndpointSolution solve_endpoint(const SolPoint& p) {
  if (!p.is_finite()) {
    throw InvalidInput("endpoint has non-finite coordinates");
  }
  if (p == SolPoint::origin()) {
    throw InvalidInput("endpoint is the origin: no translation curve direction");
  }
  const double x = p.x;
  const double y = p.y;
  const double z = p.z;

  if (z == 0.0) {
    // Base plane: phi = arccos(x / r) with the half-plane taken from y.
    // atan2 gives the same angle without arccos's loss of accuracy near 0, pi.
    const double r = std::hypot(x, y);
    const CurveParams params{{wrap_angle(std::atan2(y, x)), 0.0}, r};
    return {params, EndpointCase::z_zero, coord_distance(curve_point(params), p)};
  }
  if (x == 0.0 && y == 0.0) {
    const CurveParams params{{0.0, std::copysign(kHalfPi, z)}, std::abs(z)};
    return {params, EndpointCase::axis, coord_distance(curve_point(params), p)};
  }

  Candidate cands[2];
  EndpointCase branch;
  if (y == 0.0) {
    branch = EndpointCase::y_zero;
    // cot(theta) = ∓ x / (e^{-z} - 1) with the sign tied to cos(phi) = ±1.
    const double denom = std::expm1(-z);
    const double phis[2] = {0.0, kPi};
    for (int k = 0; k < 2; ++k) {
      const double sign = (k == 0) ? -1.0 : 1.0;
      const double theta = theta_from_cot(sign * x, denom);
      cands[k] = {phis[k], theta, z / std::sin(theta)};
    }
  } else {
    branch = EndpointCase::generic;
    // cot(phi) = -(x/y) (e^z - 1)/(e^{-z} - 1); arccot fixes phi only up to pi.
    const double a = -x * std::expm1(z);
    const double b = y * std::expm1(-z);
    const double phi0 = arccot_ratio(a, b);
    // sin(phi0) taken from the ratio itself; sin of a rounded phi near 0 or pi
    // loses relative accuracy, which feeds straight into t.
    const double sin0 = std::abs(b) / std::hypot(a, b);
    const double phis[2] = {phi0, phi0 - kPi};
    const double sins[2] = {sin0, -sin0};
    for (int k = 0; k < 2; ++k) {
      const double theta = theta_from_cot(y, sins[k] * std::expm1(z));
      cands[k] = {phis[k], theta, z / std::sin(theta)};
    }
  }

  // Keep the branch with positive arc length whose forward image lands on p.
  EndpointSolution best;
  best.branch = branch;
  best.residual = std::numeric_limits<double>::infinity();
  for (const Candidate& c : cands) {
    if (!(c.t > 0.0) || !std::isfinite(c.t)) {
      continue;
    }
    const CurveParams params{{wrap_angle(c.phi), c.theta}, c.t};
    const double res = coord_distance(curve_point(params), p);
    if (res < best.residual) {
      best.params = params;
      best.residual = res;
    }
  }
  if (!std::isfinite(best.residual)) {
    throw std::logic_error("solve_endpoint: no admissible branch for " + to_string(p));
  }
  return best;
}

CurveParams params_from_endpoint(const SolPoint& p) { return solve_endpoint(p).params; }

double translation_distance(const SolPoint& p, const SolPoint& q) {
  if (!p.is_finite() || !q.is_finite()) {
    throw InvalidInput("translation_distance: non-finite coordinates");
  }
  if (same_point(p, q)) {
    return 0.0;
  }
  const SolPoint image = translation_to(p).inverse().apply(q);
  if (image == SolPoint::origin()) {
    return 0.0;
  }
  return solve_endpoint(image).params.t;
}

std::vector<SolPoint> sample_curve(const CurveParams& p, int n) {
  if (n < 2) {
    throw InvalidInput("sample_curve: need at least 2 samples");
  }
  std::vector<SolPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Last sample uses p.t itself so the endpoint is hit exactly.
    const double t = (i == n - 1) ? p.t : p.t * static_cast<double>(i) / (n - 1);
    out.push_back(curve_point({p.dir, t}));
  }
  return out;
}

std::vector<SolPoint> sample_segment(const SolPoint& from, const SolPoint& to, int n) {
  const SolIsometry carry = translation_to(from);
  const SolPoint local = carry.inverse().apply(to);
  CurveParams params;
  if (!(local == SolPoint::origin())) {
    params = params_from_endpoint(local);
  }
  std::vector<SolPoint> out = sample_curve(params, n);
  for (SolPoint& s : out) {
    s = carry.apply(s);
  }
  return out;
}

}  // namespace solgeom
