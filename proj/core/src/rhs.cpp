#include "fdfsi/rhs.hpp"

#include "fdfsi/errors.hpp"

#include <cmath>

namespace fdfsi {

namespace {

double integrate_rule(const Triangle& t, const std::function<double(const Point2&)>& f, const QuadratureRule& rule) {
  const double scale = 2.0 * std::abs(signed_area(t));
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(from_barycentric(t, rule.points[q]));
  return sum * scale;
}

double integrate_rec(const Triangle& t, const std::function<double(const Point2&)>& f, const QuadratureRule& rule,
                     int depth) {
  if (depth <= 0) return integrate_rule(t, f, rule);
  const Point2 ab = 0.5 * (t[0] + t[1]);
  const Point2 bc = 0.5 * (t[1] + t[2]);
  const Point2 ca = 0.5 * (t[2] + t[0]);
  return integrate_rec({t[0], ab, ca}, f, rule, depth - 1) + integrate_rec({ab, t[1], bc}, f, rule, depth - 1) +
         integrate_rec({ca, bc, t[2]}, f, rule, depth - 1) + integrate_rec({ab, bc, ca}, f, rule, depth - 1);
}

} // namespace

double integrate(const Triangle& t, const std::function<double(const Point2&)>& f, int depth) {
  static const QuadratureRule rule = make_rule(6);
  return integrate_rec(t, f, rule, depth);
}

bool crosses(const Triangle& t, const std::function<double(const Point2&)>& level_set) {
  const double v0 = level_set(t[0]), v1 = level_set(t[1]), v2 = level_set(t[2]);
  if (std::min({v0, v1, v2}) <= 0.0 && std::max({v0, v1, v2}) >= 0.0) return true;
  return std::abs(level_set((t[0] + t[1] + t[2]) / 3.0)) < diameter(t);
}

FieldVector dirichlet_values(const VectorField& u, const DofMap& u_map, const TriMesh& fluid_half) {
  FieldVector out = FieldVector::Zero(u_map.n_dofs());
  for (int v = 0; v < fluid_half.n_vertices(); ++v) {
    if (!u_map.constrained[u_map.index(v, 0)]) continue;
    const Point2 val = u.value(fluid_half.vertices[v]);
    out[u_map.index(v, 0)] = val.x();
    out[u_map.index(v, 1)] = val.y();
  }
  return out;
}

BlockRhs assemble_rhs(const ManufacturedCase& c, const Discretization& d, const CouplingGeometry& geo,
                      CouplingKind kind) {
  const QuadratureRule r6 = make_rule(6);
  const bool grad = kind == CouplingKind::C1;
  const Parameters& prm = c.params;
  BlockRhs out;
  out.f = FieldVector::Zero(d.u_map.n_dofs());
  out.g = FieldVector::Zero(d.X_map.n_dofs());
  out.d = FieldVector::Zero(d.l_map.n_dofs());

  // Fluid rows: a_f(u, v) - (div v, p).
  const TriMesh& fh = d.fluid_half;
  for (int t = 0; t < fh.n_triangles(); ++t) {
    const Triangle tc = fh.corners(t);
    const double scale = 2.0 * signed_area(tc);
    const auto g = p1_gradients(tc);
    const auto& tri = fh.triangles[t];
    for (std::size_t q = 0; q < r6.size(); ++q) {
      const auto& b = r6.points[q];
      const Point2 x = from_barycentric(tc, b);
      const Point2 u = c.u.value(x);
      const Mat2 J = c.u.jacobian(x);
      const Mat2 eps = 0.5 * (J + J.transpose());
      const double w = r6.weights[q] * scale;
      for (int a = 0; a < 3; ++a) {
        const Point2 se = eps * g[a];
        for (int comp = 0; comp < 2; ++comp)
          out.f[d.u_map.index(tri[a], comp)] += w * (prm.alpha * u[comp] * b[a] + prm.nu * se[comp]);
      }
    }
    // div(psi_a e_c) is constant on t, so only the integral of p is needed.
    const int depth = c.pressure_discontinuous() && crosses(tc, c.pressure_interface) ? kInterfaceDepth : 0;
    const double pint = integrate(tc, c.p, depth);
    for (int a = 0; a < 3; ++a)
      for (int comp = 0; comp < 2; ++comp) out.f[d.u_map.index(tri[a], comp)] -= pint * g[a][comp];
  }

  // Fluid rows: c(lambda, v(X̄)) on the cut cells.
  const TriMesh& solid = d.solid;
  std::vector<Mat2> F(solid.n_triangles());
  for (int s = 0; s < solid.n_triangles(); ++s)
    F[s] = AffineMap::from(geo.mapped[s]).jacobian * AffineMap::from(solid.corners(s)).jacobian.inverse();
  check_table(geo.mapped, geo.table);
  for_each_cut_point(solid, geo.mapped, fh, geo.table, r6, [&](const CutPoint& p) {
    const Point2 s = from_barycentric(solid.corners(p.solid_element), p.b_solid);
    const Point2 lam = c.lambda.value(s);
    const auto& ftri = fh.triangles[p.fluid_element];
    std::array<Point2, 3> pulled{};
    if (grad) {
      const auto gf = p1_gradients(fh.corners(p.fluid_element));
      for (int b = 0; b < 3; ++b) pulled[b] = F[p.solid_element].transpose() * gf[b];
    }
    const Mat2 glam = grad ? c.lambda.jacobian(s) : Mat2::Zero();
    for (int b = 0; b < 3; ++b)
      for (int comp = 0; comp < 2; ++comp) {
        double v = lam[comp] * p.b_fluid[b];
        if (grad) v += glam.row(comp).dot(pulled[b]);
        out.f[d.u_map.index(ftri[b], comp)] += p.weight * v;
      }
  });

  // Solid and multiplier rows.
  for (int t = 0; t < solid.n_triangles(); ++t) {
    const Triangle tc = solid.corners(t);
    const double scale = 2.0 * signed_area(tc);
    const auto gs = p1_gradients(tc);
    const auto& tri = solid.triangles[t];
    for (std::size_t q = 0; q < r6.size(); ++q) {
      const auto& b = r6.points[q];
      const Point2 s = from_barycentric(tc, b);
      const double w = r6.weights[q] * scale;
      const Point2 X = c.X.value(s);
      const Mat2 GX = c.X.jacobian(s);
      const Point2 lam = c.lambda.value(s);
      const Mat2 glam = c.lambda.jacobian(s);
      const Point2 xbar = c.map.value(s);
      const Point2 diff = X - c.u.value(xbar);
      const Mat2 gdiff = GX - c.u.jacobian(xbar) * c.map.jacobian(s);
      for (int a = 0; a < 3; ++a)
        for (int comp = 0; comp < 2; ++comp) {
          double gv = prm.beta * X[comp] * b[a] + prm.gamma * GX.row(comp).dot(gs[a]) - lam[comp] * b[a];
          double dv = diff[comp] * b[a];
          if (grad) {
            gv -= glam.row(comp).dot(gs[a]);
            dv += gdiff.row(comp).dot(gs[a]);
          }
          out.g[d.X_map.index(tri[a], comp)] += w * gv;
          out.d[d.l_map.index(tri[a], comp)] += w * dv;
        }
    }
  }
  return out;
}

} // namespace fdfsi
