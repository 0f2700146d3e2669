#include "fdfsi/errors.hpp"
#include "fdfsi/solver.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>

namespace fdfsi {

namespace {

// Sum over elements of int (|e|^2 [+ |grad e|^2]) with e = exact - discrete.
double vector_error_sq(const VectorField& exact, const FieldVector& vec, const DofMap& map, const TriMesh& mesh,
                       bool with_gradient) {
  if (map.components != 2 || vec.size() != map.n_dofs()) throw ArgumentError("error norm: field/map mismatch");
  const QuadratureRule r6 = make_rule(6);
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle tc = mesh.corners(t);
    const double scale = 2.0 * std::abs(signed_area(tc));
    for (std::size_t q = 0; q < r6.size(); ++q) {
      const Point2 x = from_barycentric(tc, r6.points[q]);
      const FieldValue h = eval_field(vec, map, mesh, t, r6.points[q]);
      double e = (exact.value(x) - h.value).squaredNorm();
      if (with_gradient) e += (exact.jacobian(x) - h.gradient).squaredNorm();
      sum += r6.weights[q] * scale * e;
    }
  }
  return sum;
}

} // namespace

double h1_error(const VectorField& exact, const FieldVector& vec, const DofMap& map, const TriMesh& mesh) {
  return std::sqrt(vector_error_sq(exact, vec, map, mesh, true));
}

double l2_error(const VectorField& exact, const FieldVector& vec, const DofMap& map, const TriMesh& mesh) {
  return std::sqrt(vector_error_sq(exact, vec, map, mesh, false));
}

double dual_norm_error(const FieldVector& lambda_h, const VectorField& lambda, const TriMesh& solid,
                       const DofMap& l_map) {
  const SparseMatrix K = assemble_Cs(solid, l_map, CouplingKind::C1);
  const QuadratureRule r6 = make_rule(6);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(l_map.n_dofs());
  for (int t = 0; t < solid.n_triangles(); ++t) {
    const Triangle tc = solid.corners(t);
    const double scale = 2.0 * std::abs(signed_area(tc));
    const auto& tri = solid.triangles[t];
    for (std::size_t q = 0; q < r6.size(); ++q) {
      const auto& b = r6.points[q];
      const Point2 e = lambda.value(from_barycentric(tc, b)) - eval_field(lambda_h, l_map, solid, t, b).value;
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 2; ++c) rhs[l_map.index(tri[a], c)] += r6.weights[q] * scale * e[c] * b[a];
    }
  }
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(K);
  if (ldlt.info() != Eigen::Success) throw SolverError("auxiliary Neumann problem: factorization failed");
  const Eigen::VectorXd psi = ldlt.solve(rhs);
  return std::sqrt(std::max(0.0, psi.dot(rhs)));
}

ErrorNorms error_norms(const Fields& f, const ManufacturedCase& c, const Discretization& d, CouplingKind kind) {
  ErrorNorms e;
  e.u_h1 = h1_error(c.u, f.u, d.u_map, d.fluid_half);
  e.X_h1 = h1_error(c.X, f.X, d.X_map, d.solid);
  e.lambda_l2 = l2_error(c.lambda, f.lambda, d.l_map, d.solid);
  e.lambda = kind == CouplingKind::C1 ? h1_error(c.lambda, f.lambda, d.l_map, d.solid)
                                      : dual_norm_error(f.lambda, c.lambda, d.solid, d.l_map);

  // Pressure: integrate on the pressure mesh, subdividing elements that the
  // discontinuity of p may cross.
  const TriMesh& mesh = d.fluid_coarse;
  auto depth_of = [&](const Triangle& t) {
    return c.pressure_discontinuous() && crosses(t, c.pressure_interface) ? kInterfaceDepth : 0;
  };
  double area = 0.0, mean_exact = 0.0, mean_h = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle tc = mesh.corners(t);
    const double a = std::abs(signed_area(tc));
    area += a;
    mean_exact += integrate(tc, c.p, depth_of(tc));
    const auto& tri = mesh.triangles[t];
    mean_h += a * (f.p[tri[0]] + f.p[tri[1]] + f.p[tri[2]]) / 3.0;
  }
  mean_exact /= area;
  mean_h /= area;
  double sum = 0.0;
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle tc = mesh.corners(t);
    const auto& tri = mesh.triangles[t];
    const double p0 = f.p[tri[0]], p1 = f.p[tri[1]], p2 = f.p[tri[2]];
    sum += integrate(
        tc,
        [&](const Point2& x) {
          const auto b = barycentric(tc, x);
          const double e = (c.p(x) - mean_exact) - (b[0] * p0 + b[1] * p1 + b[2] * p2 - mean_h);
          return e * e;
        },
        depth_of(tc));
  }
  e.p_l2 = std::sqrt(sum);
  return e;
}

double fit_rate(const std::vector<double>& values, const std::vector<double>& hs) {
  if (values.size() != hs.size()) throw ArgumentError("fit_rate: values and mesh sizes differ in length");
  if (values.size() < 3) throw ArgumentError("fit_rate: at least three levels are required");
  const std::size_t n = values.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(values[i] > 0.0) || !(hs[i] > 0.0)) throw ArgumentError("fit_rate: values and mesh sizes must be positive");
    const double x = std::log(hs[i]);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw ArgumentError("fit_rate: mesh sizes must not all coincide");
  return (n * sxy - sx * sy) / denom;
}

} // namespace fdfsi
