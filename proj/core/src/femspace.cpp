#include "fdfsi/femspace.hpp"

#include "fdfsi/errors.hpp"

#include <cmath>
#include <string>

namespace fdfsi {

namespace {

void add_orbit3(QuadratureRule& r, double a, double b, double w) {
  r.points.push_back({a, b, b});
  r.points.push_back({b, a, b});
  r.points.push_back({b, b, a});
  for (int k = 0; k < 3; ++k) r.weights.push_back(w);
}

void add_orbit6(QuadratureRule& r, double a, double b, double c, double w) {
  r.points.push_back({a, b, c});
  r.points.push_back({a, c, b});
  r.points.push_back({b, a, c});
  r.points.push_back({b, c, a});
  r.points.push_back({c, a, b});
  r.points.push_back({c, b, a});
  for (int k = 0; k < 6; ++k) r.weights.push_back(w);
}

} // namespace

QuadratureRule make_rule(int exact_degree) {
  QuadratureRule r;
  r.exact_degree = exact_degree;
  switch (exact_degree) {
  case 1:
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(0.5);
    break;
  case 2:
    r.points = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
    r.weights = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
    break;
  case 3: {
    // Conical product: 2-point Gauss-Jacobi (weight 1-a) times 2-point
    // Gauss-Legendre, mapped by xi = a, eta = b (1 - a).
    const double s6 = std::sqrt(6.0);
    const double a[2] = {(4.0 - s6) / 10.0, (4.0 + s6) / 10.0};
    const double wa[2] = {(9.0 + s6) / 36.0, (9.0 - s6) / 36.0};
    const double g = 0.5 / std::sqrt(3.0);
    const double b[2] = {0.5 - g, 0.5 + g};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double xi = a[i];
        const double eta = b[j] * (1.0 - a[i]);
        r.points.push_back({1.0 - xi - eta, xi, eta});
        r.weights.push_back(wa[i] * 0.5);
      }
    break;
  }
  case 6:
    // Dunavant, degree 6.
    add_orbit3(r, 0.501426509658179, 0.249286745170910, 0.5 * 0.116786275726379);
    add_orbit3(r, 0.873821971016996, 0.063089014491502, 0.5 * 0.050844906370207);
    add_orbit6(r, 0.053145049844817, 0.310352451033784, 0.636502499121399, 0.5 * 0.082851075618374);
    break;
  default:
    throw ArgumentError("make_rule: unsupported exactness degree " + std::to_string(exact_degree));
  }
  return r;
}

P1Eval p1_eval(const std::array<double, 3>& b) {
  return {b, {Point2(-1.0, -1.0), Point2(1.0, 0.0), Point2(0.0, 1.0)}};
}

int DofMap::n_constrained() const {
  int n = 0;
  for (auto c : constrained) n += c ? 1 : 0;
  return n;
}

DofMap build_dof_map(const TriMesh& mesh, FieldKind kind) {
  DofMap map;
  map.kind = kind;
  map.components = kind == FieldKind::Pressure ? 1 : 2;
  map.n_vertices = mesh.n_vertices();
  map.constrained.assign(map.n_dofs(), 0);
  if (kind == FieldKind::Velocity) {
    for (int v = 0; v < mesh.n_vertices(); ++v)
      if (mesh.boundary_vertex[v])
        for (int c = 0; c < 2; ++c) map.constrained[map.index(v, c)] = 1;
  }
  return map;
}

FieldVector interpolate(const ScalarFunction& f, const DofMap& map, const TriMesh& mesh) {
  if (map.components != 1) throw ArgumentError("interpolate: scalar function on a vector dof map");
  FieldVector out(map.n_dofs());
  for (int v = 0; v < mesh.n_vertices(); ++v) out[v] = f(mesh.vertices[v]);
  return out;
}

FieldVector interpolate(const VectorFunction& f, const DofMap& map, const TriMesh& mesh) {
  if (map.components != 2) throw ArgumentError("interpolate: vector function on a scalar dof map");
  FieldVector out(map.n_dofs());
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Point2 y = f(mesh.vertices[v]);
    out[map.index(v, 0)] = y.x();
    out[map.index(v, 1)] = y.y();
  }
  return out;
}

FieldValue eval_field(const FieldVector& vec, const DofMap& map, const TriMesh& mesh, int element,
                      const std::array<double, 3>& b) {
  const auto& tri = mesh.triangles[element];
  const auto grads = p1_gradients(mesh.corners(element));
  FieldValue out;
  for (int c = 0; c < map.components; ++c) {
    for (int k = 0; k < 3; ++k) {
      const double coeff = vec[map.index(tri[k], c)];
      out.value[c] += b[k] * coeff;
      out.gradient.row(c) += coeff * grads[k].transpose();
    }
  }
  return out;
}

std::vector<Point2> as_points(const FieldVector& vec, const DofMap& map) {
  if (map.components != 2) throw ArgumentError("as_points: vector field expected");
  std::vector<Point2> out(map.n_vertices);
  for (int v = 0; v < map.n_vertices; ++v) out[v] = Point2(vec[map.index(v, 0)], vec[map.index(v, 1)]);
  return out;
}

} // namespace fdfsi
