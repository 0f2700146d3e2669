#include "fdfsi/assembly.hpp"

#include "fdfsi/errors.hpp"

#include <cmath>
#include <string>

namespace fdfsi {

using Triplets = std::vector<Eigen::Triplet<double>>;

void check_table(std::span<const Triangle> mapped, const IntersectionTable& table) {
  if (table.n_solid() != static_cast<int>(mapped.size()))
    throw ConsistencyError("intersection table covers " + std::to_string(table.n_solid()) + " elements, mesh has " +
                           std::to_string(mapped.size()));
  for (int s = 0; s < table.n_solid(); ++s) {
    const double full = std::abs(signed_area(mapped[s]));
    if (std::abs(table.total_mapped_area[s] - full) > 1e-10 * full)
      throw ConsistencyError("intersection table is stale for solid element " + std::to_string(s));
    // Area alone misses rigid motions; the cut cells must also sit inside the element.
    const double tol = 1e-10;
    for (const auto& piece : table.entries[s])
      for (const Point2& v : piece.polygon.vertices) {
        const auto b = barycentric(mapped[s], v);
        if (b[0] < -tol || b[1] < -tol || b[2] < -tol)
          throw ConsistencyError("intersection table is stale for solid element " + std::to_string(s));
      }
  }
}

void for_each_cut_point(const TriMesh& solid, std::span<const Triangle> mapped, const TriMesh& fluid_half,
                        const IntersectionTable& table, const QuadratureRule& rule,
                        const std::function<void(const CutPoint&)>& visit) {
  CutPoint cp{};
  for (int s = 0; s < table.n_solid(); ++s) {
    const Triangle& tm = mapped[s];
    const double det = std::abs(signed_area(tm) / signed_area(solid.corners(s)));
    cp.solid_element = s;
    for (const auto& piece : table.entries[s]) {
      const Triangle tf = fluid_half.corners(piece.fluid_element);
      cp.fluid_element = piece.fluid_element;
      for (const Triangle& sub : piece.sub_triangles) {
        const double scale = 2.0 * std::abs(signed_area(sub)) / det;
        for (std::size_t q = 0; q < rule.size(); ++q) {
          cp.x = from_barycentric(sub, rule.points[q]);
          cp.b_solid = barycentric(tm, cp.x);
          cp.b_fluid = barycentric(tf, cp.x);
          cp.weight = rule.weights[q] * scale;
          visit(cp);
        }
      }
    }
  }
}

CouplingGeometry build_coupling_geometry(const TriMesh& solid, std::vector<Point2> xbar,
                                         const TriMesh& fluid_half, const BackgroundGrid& grid) {
  CouplingGeometry geo;
  geo.xbar = std::move(xbar);
  geo.mapped = map_elements(solid, geo.xbar);
  geo.table = build_intersection_table(geo.mapped, fluid_half, grid);
  return geo;
}

namespace {

/// Deformation gradient of the affine map from a solid element to its image.
Mat2 deformation_gradient(const Triangle& ref, const Triangle& img) {
  return AffineMap::from(img).jacobian * AffineMap::from(ref).jacobian.inverse();
}

int locate_or_throw(const BackgroundGrid& grid, const TriMesh& fluid, const Point2& x, int s) {
  const auto f = locate_point(grid, fluid, x);
  if (!f)
    throw GeometryError("quadrature point of solid element " + std::to_string(s) + " at (" + std::to_string(x.x()) +
                        ", " + std::to_string(x.y()) + ") lies outside the fluid domain");
  return *f;
}

void add_mass(Triplets& trip, const DofMap& l_map, const DofMap& u_map, const std::array<int, 3>& stri,
              const std::array<int, 3>& ftri, const std::array<double, 3>& bs, const std::array<double, 3>& bf,
              double w) {
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const double v = w * bs[a] * bf[b];
      for (int c = 0; c < 2; ++c) trip.emplace_back(l_map.index(stri[a], c), u_map.index(ftri[b], c), v);
    }
}

void add_gradient(Triplets& trip, const DofMap& l_map, const DofMap& u_map, const std::array<int, 3>& stri,
                  const std::array<int, 3>& ftri, const std::array<Point2, 3>& gs, const std::array<Point2, 3>& gf,
                  const Mat2& F, double w) {
  for (int b = 0; b < 3; ++b) {
    const Point2 pulled = F.transpose() * gf[b];
    for (int a = 0; a < 3; ++a) {
      const double v = w * gs[a].dot(pulled);
      for (int c = 0; c < 2; ++c) trip.emplace_back(l_map.index(stri[a], c), u_map.index(ftri[b], c), v);
    }
  }
}

} // namespace

SparseMatrix assemble_Cf(const TriMesh& solid, const CouplingGeometry& geo, const TriMesh& fluid_half,
                         const BackgroundGrid& grid, const DofMap& l_map, const DofMap& u_map, CouplingKind kind,
                         AssemblyMode mode) {
  if (l_map.n_vertices != solid.n_vertices() || u_map.n_vertices != fluid_half.n_vertices())
    throw ArgumentError("assemble_Cf: dof maps do not match the meshes");
  if (static_cast<int>(geo.mapped.size()) != solid.n_triangles())
    throw ArgumentError("assemble_Cf: mapped elements do not match the solid mesh");

  Triplets trip;
  const bool grad = kind == CouplingKind::C1;

  if (mode == AssemblyMode::Exact) {
    check_table(geo.mapped, geo.table);
    trip.reserve(geo.table.n_pieces() * 3 * 18 * (grad ? 2 : 1));
    const QuadratureRule r2 = make_rule(2);
    for_each_cut_point(solid, geo.mapped, fluid_half, geo.table, r2, [&](const CutPoint& p) {
      add_mass(trip, l_map, u_map, solid.triangles[p.solid_element], fluid_half.triangles[p.fluid_element], p.b_solid,
               p.b_fluid, p.weight);
    });
    if (grad) {
      for (int s = 0; s < solid.n_triangles(); ++s) {
        const Triangle ts = solid.corners(s);
        const Mat2 F = deformation_gradient(ts, geo.mapped[s]);
        const auto gs = p1_gradients(ts);
        const double det = std::abs(F.determinant());
        for (const auto& piece : geo.table.entries[s]) {
          const auto gf = p1_gradients(fluid_half.corners(piece.fluid_element));
          // Integrand is constant on each cut cell.
          add_gradient(trip, l_map, u_map, solid.triangles[s], fluid_half.triangles[piece.fluid_element], gs, gf, F,
                       piece.area / det);
        }
      }
    }
  } else {
    const QuadratureRule r2 = make_rule(2);
    trip.reserve(static_cast<std::size_t>(solid.n_triangles()) * 3 * 18 * (grad ? 2 : 1));
    for (int s = 0; s < solid.n_triangles(); ++s) {
      const Triangle ts = solid.corners(s);
      const Triangle& tm = geo.mapped[s];
      const double area = std::abs(signed_area(ts));
      const auto& stri = solid.triangles[s];
      for (std::size_t q = 0; q < r2.size(); ++q) {
        const Point2 x = from_barycentric(tm, r2.points[q]);
        const int f = locate_or_throw(grid, fluid_half, x, s);
        add_mass(trip, l_map, u_map, stri, fluid_half.triangles[f], r2.points[q],
                 barycentric(fluid_half.corners(f), x), 2.0 * area * r2.weights[q]);
      }
      if (grad) {
        const Point2 x = (tm[0] + tm[1] + tm[2]) / 3.0;
        const int f = locate_or_throw(grid, fluid_half, x, s);
        add_gradient(trip, l_map, u_map, stri, fluid_half.triangles[f], p1_gradients(ts),
                     p1_gradients(fluid_half.corners(f)), deformation_gradient(ts, tm), area);
      }
    }
  }

  SparseMatrix m(l_map.n_dofs(), u_map.n_dofs());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

} // namespace fdfsi
