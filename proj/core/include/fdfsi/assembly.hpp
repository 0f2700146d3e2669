#pragma once

#include "fdfsi/femspace.hpp"
#include "fdfsi/geometry.hpp"

#include <Eigen/SparseCore>

#include <functional>
#include <iosfwd>
#include <span>

namespace fdfsi {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class CouplingKind { C0, C1 };
enum class AssemblyMode { Exact, Inexact };

const char* to_string(CouplingKind kind);
const char* to_string(AssemblyMode mode);
CouplingKind parse_coupling_kind(const std::string& s);
AssemblyMode parse_assembly_mode(const std::string& s);

/// a_f(u, v) = alpha (u, v) + nu (eps(u), eps(v));
/// a_s(X, Y) = beta (X, Y) + gamma (grad X, grad Y).
struct Parameters {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 1.0;
  double nu = 1.0;

  void validate() const;
};

/// Fluid block on T_{h/2}: vector mass times alpha plus symmetric-gradient
/// stiffness times nu. No boundary conditions applied.
SparseMatrix assemble_Af(const TriMesh& fluid_half, const DofMap& u_map, const Parameters& params);

/// Rows: pressure dofs on T_h. Columns: velocity dofs on T_{h/2}.
/// Entry (i, j) = int div(phi_j) psi_i.
SparseMatrix assemble_Bf(const TriMesh& fluid_half, const TriMesh& fluid_coarse, const DofMap& u_map,
                         const DofMap& p_map);

/// Solid block: vector mass times beta plus componentwise gradient stiffness
/// times gamma.
SparseMatrix assemble_As(const TriMesh& solid, const DofMap& X_map, const Parameters& params);

/// Vector P1 mass and componentwise stiffness matrices.
SparseMatrix assemble_mass(const TriMesh& mesh, const DofMap& map);
SparseMatrix assemble_stiffness(const TriMesh& mesh, const DofMap& map);

/// Rows: multiplier dofs. Columns: deformation dofs (same mesh).
/// C0: vector mass. C1: mass plus gradient stiffness.
SparseMatrix assemble_Cs(const TriMesh& solid, const DofMap& X_map, CouplingKind kind);

/// One quadrature point of the composite rule on the cut cells of the
/// mapped solid mesh. `weight` measures reference (solid) area.
struct CutPoint {
  int solid_element;
  int fluid_element;
  Point2 x;
  std::array<double, 3> b_solid;
  std::array<double, 3> b_fluid;
  double weight;
};

/// Throws ConsistencyError if the table does not partition `mapped`.
void check_table(std::span<const Triangle> mapped, const IntersectionTable& table);

void for_each_cut_point(const TriMesh& solid, std::span<const Triangle> mapped, const TriMesh& fluid_half,
                        const IntersectionTable& table, const QuadratureRule& rule,
                        const std::function<void(const CutPoint&)>& visit);

/// Everything the coupling block needs about the current configuration X̄.
struct CouplingGeometry {
  std::vector<Point2> xbar;      // mapped solid vertex positions
  std::vector<Triangle> mapped;  // mapped solid elements
  IntersectionTable table;
};

/// Maps the solid mesh by `xbar` and intersects it with T_{h/2}.
CouplingGeometry build_coupling_geometry(const TriMesh& solid, std::vector<Point2> xbar,
                                         const TriMesh& fluid_half, const BackgroundGrid& grid);

/// Rows: multiplier dofs. Columns: velocity dofs. Entry = c(mu_i, phi_j(X̄)).
/// Exact mode integrates over the cut cells; Inexact mode applies the
/// edge-midpoint rule (C1 gradient term: centroid rule) on each solid element.
SparseMatrix assemble_Cf(const TriMesh& solid, const CouplingGeometry& geo, const TriMesh& fluid_half,
                         const BackgroundGrid& grid, const DofMap& l_map, const DofMap& u_map, CouplingKind kind,
                         AssemblyMode mode);

/// MatrixMarket coordinate real general.
void write_matrix_market(std::ostream& os, const SparseMatrix& m);

double relative_frobenius(const SparseMatrix& a, const SparseMatrix& b);

} // namespace fdfsi
