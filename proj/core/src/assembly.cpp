#include "fdfsi/assembly.hpp"

#include "fdfsi/errors.hpp"

#include <ostream>

namespace fdfsi {

using Triplets = std::vector<Eigen::Triplet<double>>;

const char* to_string(CouplingKind kind) { return kind == CouplingKind::C0 ? "c0" : "c1"; }
const char* to_string(AssemblyMode mode) { return mode == AssemblyMode::Exact ? "exact" : "inexact"; }

CouplingKind parse_coupling_kind(const std::string& s) {
  if (s == "c0") return CouplingKind::C0;
  if (s == "c1") return CouplingKind::C1;
  throw ArgumentError("unknown coupling kind '" + s + "' (expected c0 or c1)");
}

AssemblyMode parse_assembly_mode(const std::string& s) {
  if (s == "exact") return AssemblyMode::Exact;
  if (s == "inexact") return AssemblyMode::Inexact;
  throw ArgumentError("unknown assembly mode '" + s + "' (expected exact or inexact)");
}

void Parameters::validate() const {
  if (!(nu > 0.0)) throw ArgumentError("viscosity must be positive");
  if (!(gamma > 0.0)) throw ArgumentError("solid stiffness gamma must be positive");
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw ArgumentError("mass coefficients must be non-negative");
}

namespace {

/// Vector P1 mass (times `mass`) plus componentwise stiffness (times `stiff`).
SparseMatrix vector_mass_stiffness(const TriMesh& mesh, const DofMap& map, double mass, double stiff) {
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(mesh.n_triangles()) * 18);
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const Triangle c = mesh.corners(t);
    const double area = signed_area(c);
    const auto g = p1_gradients(c);
    const auto& tri = mesh.triangles[t];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double m = area / 12.0 * (a == b ? 2.0 : 1.0);
        const double value = mass * m + stiff * area * g[a].dot(g[b]);
        for (int comp = 0; comp < 2; ++comp)
          trip.emplace_back(map.index(tri[a], comp), map.index(tri[b], comp), value);
      }
  }
  SparseMatrix m(map.n_dofs(), map.n_dofs());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

} // namespace

SparseMatrix assemble_Af(const TriMesh& fluid_half, const DofMap& u_map, const Parameters& params) {
  if (u_map.components != 2 || u_map.n_vertices != fluid_half.n_vertices())
    throw ArgumentError("assemble_Af: velocity dof map does not match the mesh");
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(fluid_half.n_triangles()) * 36);
  for (int t = 0; t < fluid_half.n_triangles(); ++t) {
    const Triangle c = fluid_half.corners(t);
    const double area = signed_area(c);
    const auto g = p1_gradients(c);
    const auto& tri = fluid_half.triangles[t];
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const double m = area / 12.0 * (a == b ? 2.0 : 1.0);
        const double gg = g[a].dot(g[b]);
        for (int ci = 0; ci < 2; ++ci)
          for (int di = 0; di < 2; ++di) {
            // eps(psi_a e_c) : eps(psi_b e_d)
            double e = 0.5 * g[a][di] * g[b][ci];
            if (ci == di) e += 0.5 * gg;
            double value = params.nu * area * e;
            if (ci == di) value += params.alpha * m;
            trip.emplace_back(u_map.index(tri[a], ci), u_map.index(tri[b], di), value);
          }
      }
  }
  SparseMatrix m(u_map.n_dofs(), u_map.n_dofs());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrix assemble_Bf(const TriMesh& fluid_half, const TriMesh& fluid_coarse, const DofMap& u_map,
                         const DofMap& p_map) {
  if (!fluid_half.has_parents()) throw ArgumentError("assemble_Bf: velocity mesh carries no parent links");
  if (p_map.n_vertices != fluid_coarse.n_vertices() || u_map.n_vertices != fluid_half.n_vertices())
    throw ArgumentError("assemble_Bf: dof maps do not match the meshes");
  Triplets trip;
  trip.reserve(static_cast<std::size_t>(fluid_half.n_triangles()) * 18);
  for (int t = 0; t < fluid_half.n_triangles(); ++t) {
    const Triangle c = fluid_half.corners(t);
    const double area = signed_area(c);
    const auto g = p1_gradients(c);
    const Point2 centroid = (c[0] + c[1] + c[2]) / 3.0;
    const int parent = fluid_half.parent_triangle[t];
    const auto psi = barycentric(fluid_coarse.corners(parent), centroid);
    const auto& ptri = fluid_coarse.triangles[parent];
    const auto& tri = fluid_half.triangles[t];
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 2; ++d)
          trip.emplace_back(ptri[i], u_map.index(tri[b], d), area * psi[i] * g[b][d]);
  }
  SparseMatrix m(p_map.n_dofs(), u_map.n_dofs());
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

SparseMatrix assemble_As(const TriMesh& solid, const DofMap& X_map, const Parameters& params) {
  return vector_mass_stiffness(solid, X_map, params.beta, params.gamma);
}

SparseMatrix assemble_mass(const TriMesh& mesh, const DofMap& map) {
  return vector_mass_stiffness(mesh, map, 1.0, 0.0);
}

SparseMatrix assemble_stiffness(const TriMesh& mesh, const DofMap& map) {
  return vector_mass_stiffness(mesh, map, 0.0, 1.0);
}

SparseMatrix assemble_Cs(const TriMesh& solid, const DofMap& X_map, CouplingKind kind) {
  return vector_mass_stiffness(solid, X_map, 1.0, kind == CouplingKind::C1 ? 1.0 : 0.0);
}

void write_matrix_market(std::ostream& os, const SparseMatrix& m) {
  const auto old = os.precision(17);
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << it.value() << '\n';
  os.precision(old);
}

double relative_frobenius(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ArgumentError("relative_frobenius: shape mismatch");
  const double nb = b.norm();
  const double diff = SparseMatrix(a - b).norm();
  return nb > 0.0 ? diff / nb : diff;
}

} // namespace fdfsi
