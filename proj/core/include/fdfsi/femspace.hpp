#pragma once

#include "fdfsi/mesh.hpp"

#include <Eigen/Core>

#include <functional>
#include <vector>

namespace fdfsi {

/// Quadrature on the reference triangle; weights sum to 1/2.
struct QuadratureRule {
  std::vector<std::array<double, 3>> points; // barycentric
  std::vector<double> weights;
  int exact_degree = 0;

  std::size_t size() const { return weights.size(); }
};

/// Degree 1: centroid. Degree 2: edge midpoints. Degree 3: four-point
/// collapsed Gauss product. Degree 6: 12-point symmetric rule.
QuadratureRule make_rule(int exact_degree);

struct P1Eval {
  std::array<double, 3> values;
  std::array<Point2, 3> ref_gradients;
};

P1Eval p1_eval(const std::array<double, 3>& barycentric);

enum class FieldKind { Velocity, Pressure, Deformation, Multiplier };

/// Nodal P1 dofs, interleaved by component: index = vertex * components + c.
struct DofMap {
  FieldKind kind = FieldKind::Pressure;
  int components = 1;
  int n_vertices = 0;
  std::vector<std::uint8_t> constrained;

  int n_dofs() const { return n_vertices * components; }
  int index(int vertex, int component) const { return vertex * components + component; }
  int n_constrained() const;
};

DofMap build_dof_map(const TriMesh& mesh, FieldKind kind);

using FieldVector = Eigen::VectorXd;

using ScalarFunction = std::function<double(const Point2&)>;
using VectorFunction = std::function<Point2(const Point2&)>;

FieldVector interpolate(const ScalarFunction& f, const DofMap& map, const TriMesh& mesh);
FieldVector interpolate(const VectorFunction& f, const DofMap& map, const TriMesh& mesh);

/// Value and physical gradient of a P1 field inside one element.
/// gradient(c, k) = d(component c)/dx_k.
struct FieldValue {
  Point2 value = Point2::Zero();
  Mat2 gradient = Mat2::Zero();
};

FieldValue eval_field(const FieldVector& vec, const DofMap& map, const TriMesh& mesh, int element,
                      const std::array<double, 3>& barycentric);

/// Nodal positions of a vector field (vertex v -> (vec[2v], vec[2v+1])).
std::vector<Point2> as_points(const FieldVector& vec, const DofMap& map);

} // namespace fdfsi
