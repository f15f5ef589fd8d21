#include "solgeom/sol_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace solgeom {

bool SolPoint::is_finite() const {
  return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
}

double coord_distance(const SolPoint& a, const SolPoint& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

bool same_point(const SolPoint& a, const SolPoint& b, double tol) {
  return coord_distance(a, b) <= tol;
}

std::string to_string(const SolPoint& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
  return os.str();
}

SolPoint group_multiply(const SolPoint& left, const SolPoint& right) {
  return {right.x + left.x * std::exp(-right.z),
          right.y + left.y * std::exp(right.z),
          right.z + left.z};
}

SolPoint group_inverse(const SolPoint& p) {
  return {-p.x * std::exp(p.z), -p.y * std::exp(-p.z), -p.z};
}

SolPoint conjugate(const SolPoint& t, const SolPoint& by) {
  // -expm1(-c) == 1 - e^{-c}, accurate for small c.
  return {by.x * -std::expm1(-t.z) + t.x * std::exp(-by.z),
          by.y * -std::expm1(t.z) + t.y * std::exp(by.z),
          t.z};
}

SolIsometry::SolIsometry() : m_(Mat4::Identity()), kind_(IsometryKind::translation) {}

SolIsometry SolIsometry::translation(const SolPoint& p) {
  Mat4 m = Mat4::Identity();
  m(0, 1) = p.x;
  m(0, 2) = p.y;
  m(0, 3) = p.z;
  m(1, 1) = std::exp(-p.z);
  m(2, 2) = std::exp(p.z);
  return SolIsometry(m, IsometryKind::translation);
}

SolIsometry SolIsometry::from_matrix(const Mat4& m, IsometryKind kind) {
  if (!m.allFinite()) {
    throw InvalidInput("isometry matrix has non-finite entries");
  }
  if (m(0, 0) != 1.0 || m(1, 0) != 0.0 || m(2, 0) != 0.0 || m(3, 0) != 0.0) {
    throw InvalidInput("collineation does not preserve the homogeneous 0-coordinate");
  }
  if (std::abs(m.determinant()) < 1e-300) {
    throw InvalidInput("singular isometry matrix");
  }
  return SolIsometry(m, kind);
}

SolPoint SolIsometry::apply(const SolPoint& p) const {
  Eigen::RowVector4d row(1.0, p.x, p.y, p.z);
  Eigen::RowVector4d out = row * m_;
  if (std::abs(out(0) - 1.0) > 1e-12) {
    throw DegenerateInput("isometry does not preserve the homogeneous 0-coordinate");
  }
  return {out(1) / out(0), out(2) / out(0), out(3) / out(0)};
}

SolIsometry SolIsometry::inverse() const {
  if (kind_ == IsometryKind::translation) {
    const double x = m_(0, 1);
    const double y = m_(0, 2);
    const double z = m_(0, 3);
    Mat4 inv = Mat4::Identity();
    inv(0, 1) = -x * std::exp(z);
    inv(0, 2) = -y * std::exp(-z);
    inv(0, 3) = -z;
    inv(1, 1) = std::exp(z);
    inv(2, 2) = std::exp(-z);
    return SolIsometry(inv, kind_);
  }
  return SolIsometry(m_.inverse(), kind_);
}

SolIsometry SolIsometry::then(const SolIsometry& next) const {
  IsometryKind kind = IsometryKind::composite;
  if (kind_ == next.kind_ && kind_ != IsometryKind::composite) {
    kind = kind_;
  }
  return SolIsometry(m_ * next.m_, kind);
}

bool SolIsometry::approx_equal(const SolIsometry& other, double tol) const {
  return (m_ - other.m_).cwiseAbs().maxCoeff() <= tol;
}

SolIsometry translation_to(const SolPoint& p) { return SolIsometry::translation(p); }

SolPoint apply(const SolIsometry& iso, const SolPoint& p) { return iso.apply(p); }

SolIsometry stabilizer_reflect_y() {
  Mat4 m = Mat4::Identity();
  m(2, 2) = -1.0;
  return SolIsometry::from_matrix(m, IsometryKind::stabilizer);
}

SolIsometry stabilizer_swap_xy_flip_z() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = 1.0;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(3, 3) = -1.0;
  return SolIsometry::from_matrix(m, IsometryKind::stabilizer);
}

std::array<SolIsometry, 8> stabilizer_elements() {
  const SolIsometry gens[2] = {stabilizer_reflect_y(), stabilizer_swap_xy_flip_z()};
  std::vector<SolIsometry> found = {SolIsometry::from_matrix(Mat4::Identity(), IsometryKind::stabilizer),
                                    gens[0], gens[1]};
  // Closure under right multiplication by the generators; entries are 0/±1
  // so exact comparison is safe.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& g : gens) {
      SolIsometry cand = found[i].then(g);
      const bool seen = std::any_of(found.begin(), found.end(),
                                    [&](const SolIsometry& s) { return s.approx_equal(cand, 0.0); });
      if (!seen) {
        found.push_back(cand);
      }
    }
  }
  std::array<SolIsometry, 8> out;
  std::copy_n(found.begin(), 8, out.begin());
  return out;
}

MetricTensor MetricTensor::at(const SolPoint& p) {
  return {std::exp(2.0 * p.z), std::exp(-2.0 * p.z), 1.0};
}

double MetricTensor::inner(const Vec3& u, const Vec3& v) const {
  return gxx * u.x() * v.x() + gyy * u.y() * v.y() + gzz * u.z() * v.z();
}

double MetricTensor::norm(const Vec3& u) const { return std::sqrt(inner(u, u)); }

Eigen::Matrix3d MetricTensor::matrix() const { return Vec3(gxx, gyy, gzz).asDiagonal(); }

double euclidean_angle(const Vec3& u, const Vec3& v) {
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

double sol_angle(const Vec3& u, const Vec3& v, const SolPoint& at) {
  if (u.isZero(0.0) || v.isZero(0.0)) {
    throw InvalidInput("sol_angle: zero tangent vector");
  }
  // The metric is diagonal, so scaling by sqrt(g) maps it to the Euclidean
  // inner product and the arccos formula becomes a Euclidean angle.
  const MetricTensor g = MetricTensor::at(at);
  const Vec3 scale(std::sqrt(g.gxx), std::sqrt(g.gyy), std::sqrt(g.gzz));
  return euclidean_angle(u.cwiseProduct(scale), v.cwiseProduct(scale));
}

}  // namespace solgeom
