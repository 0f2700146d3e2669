#pragma once

#include "fdfsi/solver.hpp"

#include <optional>

namespace fdfsi {

struct PhysicalParams {
  double rho_f = 1.0;
  double rho_s = 1.1;
  double nu = 0.01;
  double kappa = 0.2;
  double dt = 0.1;
  double t_final = 4.0;

  double delta_rho() const { return rho_s - rho_f; }
  /// Coefficients of the stationary problem solved at each step.
  Parameters stationary() const { return {rho_f / dt, delta_rho() / dt, kappa * dt, nu}; }
  void validate() const;
};

/// Meshes and X̄-independent matrices of the dynamic annulus benchmark:
/// unit-square container with an N x N pressure grid, reference annulus
/// 0.125 <= |s| <= 0.25 meshed at level log2(N / 16).
struct DynamicSetup {
  PhysicalParams params;
  CouplingKind kind = CouplingKind::C0;
  AssemblyMode mode = AssemblyMode::Exact;
  PressureFix fix = PressureFix::Augment;
  TriMesh fluid_coarse, fluid_half, solid;
  DofMap u_map, p_map, X_map, l_map;
  std::optional<BackgroundGrid> grid;
  SparseMatrix Af, Bf, As, Cs;
  SparseMatrix Mf, Ms, Ks;  // fluid mass, solid mass, solid stiffness
  Eigen::VectorXd p_weights;
};

DynamicSetup make_dynamic_setup(int n, const PhysicalParams& params, CouplingKind kind = CouplingKind::C0,
                                AssemblyMode mode = AssemblyMode::Exact);

/// Same, on caller-supplied meshes (fluid_half must refine fluid_coarse).
DynamicSetup make_dynamic_setup(TriMesh fluid_coarse, TriMesh solid, const PhysicalParams& params, CouplingKind kind,
                                AssemblyMode mode);

struct DynamicState {
  int n = 0;
  double t = 0.0;
  FieldVector u, p, X, X_prev, lambda;
  CouplingGeometry geo;  // for X̄ = X
};

/// Initial stretch (s1 / 1.4 + 0.5, 1.4 s2 + 0.5), fluid at rest, X^{-1} = X^0.
DynamicState init_state(const DynamicSetup& setup);
DynamicState init_state(const DynamicSetup& setup, const VectorField& initial_map);

/// One semi-implicit step; the stationary unknown is X^{n+1} / dt.
DynamicState advance(const DynamicState& state, const DynamicSetup& setup);

/// rho_f/2 |u|_0^2 + drho/2 |(X^n - X^{n-1}) / dt|_0^2 + kappa/2 |X|_1^2
double energy(const DynamicState& state, const DynamicSetup& setup);

/// Areas of the cut cells of one solid element in the current table.
std::vector<double> track_cut_cells(const DynamicState& state, int solid_element);

} // namespace fdfsi
