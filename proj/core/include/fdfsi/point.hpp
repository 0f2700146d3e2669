#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <array>
#include <cmath>

namespace fdfsi {

using Point2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Triangle = std::array<Point2, 3>;

inline double cross(const Point2& a, const Point2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Signed area, positive for counterclockwise vertex order.
inline double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * cross(b - a, c - a);
}
inline double signed_area(const Triangle& t) { return signed_area(t[0], t[1], t[2]); }

inline double diameter(const Triangle& t) {
  return std::max({(t[1] - t[0]).norm(), (t[2] - t[1]).norm(), (t[0] - t[2]).norm()});
}

/// Barycentric coordinates of p with respect to t (any orientation).
inline std::array<double, 3> barycentric(const Triangle& t, const Point2& p) {
  const double det = cross(t[1] - t[0], t[2] - t[0]);
  const double l1 = cross(p - t[0], t[2] - t[0]) / det;
  const double l2 = cross(t[1] - t[0], p - t[0]) / det;
  return {1.0 - l1 - l2, l1, l2};
}

inline Point2 from_barycentric(const Triangle& t, const std::array<double, 3>& b) {
  return b[0] * t[0] + b[1] * t[1] + b[2] * t[2];
}

/// Affine element map x = origin + jacobian * xi from the reference triangle
/// (0,0),(1,0),(0,1).
struct AffineMap {
  Point2 origin;
  Mat2 jacobian;

  static AffineMap from(const Triangle& t) {
    AffineMap m;
    m.origin = t[0];
    m.jacobian.col(0) = t[1] - t[0];
    m.jacobian.col(1) = t[2] - t[0];
    return m;
  }
  double det() const { return jacobian.determinant(); }
  Point2 operator()(const Point2& xi) const { return origin + jacobian * xi; }
};

/// Physical gradients of the three P1 shape functions on a triangle.
inline std::array<Point2, 3> p1_gradients(const Triangle& t) {
  const Mat2 jit = AffineMap::from(t).jacobian.inverse().transpose();
  return {jit * Point2(-1.0, -1.0), jit * Point2(1.0, 0.0), jit * Point2(0.0, 1.0)};
}

} // namespace fdfsi
