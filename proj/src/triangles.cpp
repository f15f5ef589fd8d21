#include "solgeom/triangles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace solgeom {
namespace {

Vec3 tangent_toward(const SolPoint& p) { return params_from_endpoint(p).dir.unit_tangent(); }

bool shares_coordinate(double a, double b, double c, double tol) {
  return std::abs(a - b) <= tol && std::abs(b - c) <= tol && std::abs(a - c) <= tol;
}

double nan_if_degenerate(const Triangle& tri) {
  try {
    return angle_sum(tri);
  } catch (const DegenerateInput&) {
    return std::numeric_limits<double>::quiet_NaN();
  } catch (const InvalidInput&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

void Triangle::validate() const {
  if (!a1.is_finite() || !a2.is_finite() || !a3.is_finite()) {
    throw InvalidInput("triangle has non-finite coordinates");
  }
  if (coord_distance(a1, a2) <= kDistinctVertexTol || coord_distance(a2, a3) <= kDistinctVertexTol ||
      coord_distance(a1, a3) <= kDistinctVertexTol) {
    throw DegenerateInput("degenerate triangle: vertices must be pairwise distinct");
  }
}

Triangle normalize(const Triangle& tri) {
  tri.validate();
  if (tri.is_normalized()) {
    return tri;
  }
  const SolIsometry to_origin = translation_to(tri.a1).inverse();
  return {SolPoint::origin(), to_origin.apply(tri.a2), to_origin.apply(tri.a3)};
}

VertexImages vertex_images(const Triangle& tri) {
  const Triangle n = normalize(tri);
  const SolIsometry from2 = translation_to(n.a2).inverse();
  const SolIsometry from3 = translation_to(n.a3).inverse();
  return {from2.apply(n.a1), from2.apply(n.a3), from3.apply(n.a1), from3.apply(n.a2), n.a2, n.a3};
}

namespace {

TangentSet tangents_from(const VertexImages& im) {
  return {tangent_toward(im.a1_3), tangent_toward(im.a1_2), tangent_toward(im.a2_3),
          tangent_toward(im.a3_2), tangent_toward(im.a3_0), tangent_toward(im.a2_0)};
}

InteriorAngles angles_from(const TangentSet& t) {
  return {euclidean_angle(t.t20, t.t30), euclidean_angle(t.t12, t.t32),
          euclidean_angle(t.t13, t.t23)};
}

}  // namespace

TangentSet tangent_directions(const Triangle& tri) { return tangents_from(vertex_images(tri)); }

InteriorAngles interior_angles(const Triangle& tri) { return angles_from(tangent_directions(tri)); }

double angle_sum(const Triangle& tri) { return interior_angles(tri).sum(); }

double coplanarity_residual(const TangentSet& tangents) {
  Eigen::Matrix<double, 6, 3> pts;
  const auto arr = tangents.as_array();
  for (int i = 0; i < 6; ++i) {
    pts.row(i) = arr[static_cast<std::size_t>(i)].transpose();
  }
  pts.rowwise() -= pts.colwise().mean();
  // SVD rather than eigenvalues of the Gram matrix: squaring would put a
  // 1e-8 singular value below double resolution.
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
  Eigen::JacobiSVD<Eigen::Matrix<double, 6, 3>> svd(pts);
  return svd.singularValues()(2);
#pragma GCC diagnostic pop
}

CoplanarityResult coplanarity_test(const Triangle& tri) {
  const double r = coplanarity_residual(tangent_directions(tri));
  return {r < kCoplanarTol, r};
}

bool is_coordinate_planar(const Triangle& tri, double tol) {
  return shares_coordinate(tri.a1.x, tri.a2.x, tri.a3.x, tol) ||
         shares_coordinate(tri.a1.y, tri.a2.y, tri.a3.y, tol) ||
         shares_coordinate(tri.a1.z, tri.a2.z, tri.a3.z, tol);
}

TriangleReport report(const Triangle& tri) {
  TriangleReport r;
  r.input = tri;
  r.normalized = normalize(tri);
  r.images = vertex_images(r.normalized);

  const VertexImages& im = r.images;
  r.tangents = tangents_from(im);
  r.angles = angles_from(r.tangents);
  r.angle_sum = r.angles.sum();
  r.excess = r.angle_sum - std::numbers::pi;

  const double r_res = coplanarity_residual(r.tangents);
  r.coplanarity = {r_res < kCoplanarTol, r_res};
  r.coordinate_planar = is_coordinate_planar(tri);

  for (double w : {r.angles.omega1, r.angles.omega2, r.angles.omega3}) {
    if (w < kParallelTol || w > std::numbers::pi - kParallelTol) {
      r.near_degenerate = true;
    }
  }

  // d(A_i, A_j) is the arc length to A_j as seen from A_i.
  r.sides = {params_from_endpoint(im.a2_0).t, params_from_endpoint(im.a3_2).t,
             params_from_endpoint(im.a3_0).t};
  return r;
}

std::vector<double> angle_sum_batch(std::span<const Triangle> tris) {
  std::vector<double> out(tris.size());
  const auto n = static_cast<std::ptrdiff_t>(tris.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = nan_if_degenerate(tris[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<double> angle_sum_batch_serial(std::span<const Triangle> tris) {
  std::vector<double> out;
  out.reserve(tris.size());
  for (const Triangle& t : tris) {
    out.push_back(nan_if_degenerate(t));
  }
  return out;
}

}  // namespace solgeom
