#pragma once

// Points, isometries and the metric of Sol, in the affine chart of the
// projective model. Points are stored as (x, y, z); the homogeneous
// 0-coordinate is implicitly 1. Matrices act on row vectors from the right.

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace solgeom {

using Vec3 = Eigen::Vector3d;
using Mat4 = Eigen::Matrix4d;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SolPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  static constexpr SolPoint origin() { return {}; }

  Vec3 vec() const { return {x, y, z}; }
  bool is_finite() const;
  bool operator==(const SolPoint&) const = default;
};

/// Max-norm distance between affine coordinates (not a Sol distance).
double coord_distance(const SolPoint& a, const SolPoint& b);

/// Coordinates agree to `tol` absolute in every component.
bool same_point(const SolPoint& a, const SolPoint& b, double tol = 1e-12);

std::string to_string(const SolPoint& p);

// Group law (a,b,c)(x,y,z) = (x + a e^{-z}, y + b e^{z}, z + c).
SolPoint group_multiply(const SolPoint& left, const SolPoint& right);
SolPoint group_inverse(const SolPoint& p);

/// (x,y,z)^{-1} t (x,y,z); preserves the third coordinate of `t` exactly.
SolPoint conjugate(const SolPoint& t, const SolPoint& by);

enum class IsometryKind { translation, stabilizer, composite };

class SolIsometry {
 public:
  SolIsometry();  // identity, tagged as a translation by the origin

  /// The translation carrying the origin to `p`.
  static SolIsometry translation(const SolPoint& p);

  /// Wraps an arbitrary collineation. Throws InvalidInput if singular or if
  /// the 0-coordinate is not preserved.
  static SolIsometry from_matrix(const Mat4& m, IsometryKind kind);

  const Mat4& matrix() const { return m_; }
  IsometryKind kind() const { return kind_; }

  /// Image of `p` under the row-vector action (1,p)·m. Throws DegenerateInput
  /// if the 0-coordinate of the product drifts from 1 by more than 1e-12.
  SolPoint apply(const SolPoint& p) const;

  /// Translations use the closed-form inverse; other kinds invert the matrix.
  SolIsometry inverse() const;

  /// `a.then(b)` applies `a` first, then `b` (matrix product a·b).
  SolIsometry then(const SolIsometry& next) const;

  bool approx_equal(const SolIsometry& other, double tol = 1e-12) const;

 private:
  SolIsometry(const Mat4& m, IsometryKind kind) : m_(m), kind_(kind) {}

  Mat4 m_;
  IsometryKind kind_;
};

SolIsometry translation_to(const SolPoint& p);
SolPoint apply(const SolIsometry& iso, const SolPoint& p);

/// The eight elements of the origin stabilizer (dihedral of order 8).
/// Index 0 is the identity; 1 is y -> -y; 2 is (x <-> y, z -> -z);
/// the rest are products of those two.
std::array<SolIsometry, 8> stabilizer_elements();
SolIsometry stabilizer_reflect_y();
SolIsometry stabilizer_swap_xy_flip_z();

/// ds^2 = e^{2z} dx^2 + e^{-2z} dy^2 + dz^2, evaluated at a base point.
struct MetricTensor {
  double gxx = 1.0;
  double gyy = 1.0;
  double gzz = 1.0;

  static MetricTensor at(const SolPoint& p);

  double inner(const Vec3& u, const Vec3& v) const;
  double norm(const Vec3& u) const;
  Eigen::Matrix3d matrix() const;
};

/// Angle between tangent vectors u and v at `at`, in [0, pi].
/// Throws InvalidInput on a zero vector.
double sol_angle(const Vec3& u, const Vec3& v, const SolPoint& at);

/// Euclidean angle in [0, pi], computed as atan2(|u x v|, u.v).
double euclidean_angle(const Vec3& u, const Vec3& v);

}  // namespace solgeom
