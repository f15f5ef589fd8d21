#pragma once

// Translation triangles: interior angles are measured at the origin after
// translating each vertex there, between the outgoing unit tangents of the
// two sides. At the origin the metric is Euclidean.

#include <array>
#include <span>
#include <vector>

#include "solgeom/curves.hpp"
#include "solgeom/sol_core.hpp"

namespace solgeom {

inline constexpr double kDistinctVertexTol = 1e-10;
inline constexpr double kCoplanarTol = 1e-8;
inline constexpr double kTheoremTol = 1e-9;
inline constexpr double kParallelTol = 1e-10;

struct Triangle {
  SolPoint a1;
  SolPoint a2;
  SolPoint a3;

  /// Throws DegenerateInput unless every vertex pair is more than
  /// kDistinctVertexTol apart in max-norm; InvalidInput on non-finite input.
  void validate() const;
  bool is_normalized() const { return a1 == SolPoint::origin(); }
};

// Superscript j: image under the inverse translation of vertex j
// (0 = untranslated). a1_2 is A_1 seen from A_2, and so on.
struct VertexImages {
  SolPoint a1_2;
  SolPoint a3_2;
  SolPoint a1_3;
  SolPoint a2_3;
  SolPoint a2_0;
  SolPoint a3_0;
};

struct TangentSet {
  Vec3 t13;
  Vec3 t12;
  Vec3 t23;
  Vec3 t32;
  Vec3 t30;
  Vec3 t20;

  std::array<Vec3, 6> as_array() const { return {t13, t12, t23, t32, t30, t20}; }
};

struct InteriorAngles {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;

  double sum() const { return omega1 + omega2 + omega3; }
};

struct CoplanarityResult {
  bool coplanar = false;
  double residual = 0.0;  // smallest singular value of the centred 6x3 point matrix
};

struct TriangleReport {
  Triangle input;
  Triangle normalized;
  VertexImages images;
  TangentSet tangents;
  InteriorAngles angles;
  double angle_sum = 0.0;
  double excess = 0.0;
  CoplanarityResult coplanarity;
  bool coordinate_planar = false;
  bool near_degenerate = false;
  // d(A1,A2), d(A2,A3), d(A1,A3)
  std::array<double, 3> sides{};
};

/// Translates the triangle so that a1 is the origin.
Triangle normalize(const Triangle& tri);

// The operations below normalize their input first, so any valid triangle
// may be passed.
VertexImages vertex_images(const Triangle& tri);
TangentSet tangent_directions(const Triangle& tri);
InteriorAngles interior_angles(const Triangle& tri);
double angle_sum(const Triangle& tri);
CoplanarityResult coplanarity_test(const Triangle& tri);

/// Smallest singular value of the six points minus their centroid.
double coplanarity_residual(const TangentSet& tangents);

/// All three vertices share an x, y or z coordinate (to 1e-12). Uses the
/// coordinates as given, before normalization.
bool is_coordinate_planar(const Triangle& tri, double tol = 1e-12);

TriangleReport report(const Triangle& tri);

/// Angle sums of many triangles; degenerate entries yield NaN.
/// OpenMP-parallel over triangles.
std::vector<double> angle_sum_batch(std::span<const Triangle> tris);

/// Serial reference for angle_sum_batch.
std::vector<double> angle_sum_batch_serial(std::span<const Triangle> tris);

}  // namespace solgeom
