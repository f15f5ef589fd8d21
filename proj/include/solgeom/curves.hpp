#pragma once

// Translation curves from the origin. A curve starting with unit tangent
// (u, v, w) solves x' = u e^{-z}, y' = v e^{z}, z' = w and is parametrized
// by arc length t.

#include <string_view>
#include <vector>

#include "solgeom/sol_core.hpp"

namespace solgeom {

/// Unit starting direction: tangent (cos(theta)cos(phi), cos(theta)sin(phi), sin(theta)).
/// phi in (-pi, pi], theta in [-pi/2, pi/2].
struct Direction {
  double phi = 0.0;
  double theta = 0.0;

  /// Validates ranges; throws InvalidInput with the admissible domain.
  static Direction checked(double phi, double theta);

  /// theta == ±pi/2 exactly: the vertical curve, phi carries no information.
  bool is_vertical() const;

  Vec3 unit_tangent() const;
};

struct CurveParams {
  Direction dir;
  double t = 0.0;

  static CurveParams checked(double phi, double theta, double t);
};

/// Which closed form of the inverse problem produced the parameters.
enum class EndpointCase {
  generic,  // y != 0, z != 0
  y_zero,   // y == 0, x != 0, z != 0
  z_zero,   // z == 0 (base plane)
  axis      // x == y == 0, z != 0
};

std::string_view to_string(EndpointCase c);

struct EndpointSolution {
  CurveParams params;
  EndpointCase branch = EndpointCase::generic;
  double residual = 0.0;  // max-norm of curve_point(params) - p
};

SolPoint curve_point(const CurveParams& p);

/// Tangent (u e^{-z(t)}, v e^{z(t)}, w) of the curve at arc length t.
Vec3 curve_tangent(const CurveParams& p);

/// Parameters (phi, theta, t > 0) of the translation curve from the origin
/// to `p`. Throws InvalidInput for the origin or non-finite input.
EndpointSolution solve_endpoint(const SolPoint& p);
CurveParams params_from_endpoint(const SolPoint& p);

/// Arc length of the translation curve from p to q.
double translation_distance(const SolPoint& p, const SolPoint& q);

/// n >= 2 points at equal arc-length steps from the origin to curve_point(p).
std::vector<SolPoint> sample_curve(const CurveParams& p, int n);

/// Samples of the side from `from` to `to`, mapped back into place by the
/// translation carrying the origin to `from`.
std::vector<SolPoint> sample_segment(const SolPoint& from, const SolPoint& to, int n);

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

}  // namespace solgeom
