#include "fdfsi/timestepping.hpp"

#include "fdfsi/errors.hpp"

#include <bit>

namespace fdfsi {

void PhysicalParams::validate() const {
  if (!(rho_f >= 0.0) || !(rho_s >= rho_f)) throw ArgumentError("densities must satisfy rho_s >= rho_f >= 0");
  if (!(nu > 0.0)) throw ArgumentError("viscosity must be positive");
  if (!(kappa > 0.0)) throw ArgumentError("elasticity constant must be positive");
  if (!(dt > 0.0)) throw ArgumentError("time step must be positive");
  if (!(t_final >= 0.0)) throw ArgumentError("final time must be non-negative");
}

DynamicSetup make_dynamic_setup(int n, const PhysicalParams& params, CouplingKind kind, AssemblyMode mode) {
  if (n < 16 || n % 16 != 0 || !std::has_single_bit(static_cast<unsigned>(n / 16)))
    throw ArgumentError("dynamic benchmark needs N = 16 * 2^k");
  const int level = std::countr_zero(static_cast<unsigned>(n / 16));
  return make_dynamic_setup(build_structured_square(n, Point2(0.0, 0.0), Point2(1.0, 1.0)),
                            build_annulus_mesh(Point2(0.0, 0.0), 0.125, 0.25, level), params, kind, mode);
}

DynamicSetup make_dynamic_setup(TriMesh fluid_coarse, TriMesh solid, const PhysicalParams& params, CouplingKind kind,
                                AssemblyMode mode) {
  params.validate();
  DynamicSetup s;
  s.params = params;
  s.kind = kind;
  s.mode = mode;
  s.fluid_coarse = std::move(fluid_coarse);
  s.fluid_half = refine_midpoint(s.fluid_coarse);
  s.solid = std::move(solid);
  s.u_map = build_dof_map(s.fluid_half, FieldKind::Velocity);
  s.p_map = build_dof_map(s.fluid_coarse, FieldKind::Pressure);
  s.X_map = build_dof_map(s.solid, FieldKind::Deformation);
  s.l_map = build_dof_map(s.solid, FieldKind::Multiplier);
  s.grid.emplace(s.fluid_half);
  const Parameters prm = params.stationary();
  s.Af = assemble_Af(s.fluid_half, s.u_map, prm);
  s.Bf = assemble_Bf(s.fluid_half, s.fluid_coarse, s.u_map, s.p_map);
  s.As = assemble_As(s.solid, s.X_map, prm);
  s.Cs = assemble_Cs(s.solid, s.X_map, kind);
  s.Mf = assemble_mass(s.fluid_half, s.u_map);
  s.Ms = assemble_mass(s.solid, s.X_map);
  s.Ks = assemble_stiffness(s.solid, s.X_map);
  s.p_weights = pressure_weights(s.fluid_coarse);
  return s;
}

DynamicState init_state(const DynamicSetup& setup) {
  return init_state(setup, make_vector_field([](auto s1, auto s2) {
                      return std::array<decltype(s1), 2>{s1 / 1.4 + 0.5, 1.4 * s2 + 0.5};
                    }));
}

DynamicState init_state(const DynamicSetup& setup, const VectorField& initial_map) {
  DynamicState st;
  st.u = FieldVector::Zero(setup.u_map.n_dofs());
  st.p = FieldVector::Zero(setup.p_map.n_dofs());
  st.lambda = FieldVector::Zero(setup.l_map.n_dofs());
  st.X = interpolate(initial_map.value, setup.X_map, setup.solid);
  st.X_prev = st.X;
  st.geo = build_coupling_geometry(setup.solid, as_points(st.X, setup.X_map), setup.fluid_half, *setup.grid);
  return st;
}

DynamicState advance(const DynamicState& state, const DynamicSetup& setup) {
  const PhysicalParams& ph = setup.params;
  const double dt = ph.dt;
  SystemBlocks blocks{setup.Af, setup.Bf, setup.As, setup.Cs,
                      assemble_Cf(setup.solid, state.geo, setup.fluid_half, *setup.grid, setup.l_map, setup.u_map,
                                  setup.kind, setup.mode)};
  BlockRhs rhs;
  rhs.f = (ph.rho_f / dt) * (setup.Mf * state.u);
  rhs.g = (ph.delta_rho() / (dt * dt)) * (setup.Ms * (2.0 * state.X - state.X_prev));
  rhs.d = setup.Cs * state.X / dt;
  const BlockSystem sys = build_system(blocks, rhs, setup.u_map, FieldVector::Zero(setup.u_map.n_dofs()),
                                       setup.p_weights, setup.fix);
  const LinearSolution sol = solve(sys);

  DynamicState next;
  next.n = state.n + 1;
  next.t = next.n * dt;
  next.u = sol.fields.u;
  next.p = sol.fields.p;
  next.lambda = sol.fields.lambda;
  next.X = dt * sol.fields.X;
  next.X_prev = state.X;
  next.geo = build_coupling_geometry(setup.solid, as_points(next.X, setup.X_map), setup.fluid_half, *setup.grid);
  return next;
}

double energy(const DynamicState& state, const DynamicSetup& setup) {
  const PhysicalParams& ph = setup.params;
  const FieldVector v = (state.X - state.X_prev) / ph.dt;
  return 0.5 * ph.rho_f * state.u.dot(setup.Mf * state.u) + 0.5 * ph.delta_rho() * v.dot(setup.Ms * v) +
         0.5 * ph.kappa * state.X.dot(setup.Ks * state.X);
}

std::vector<double> track_cut_cells(const DynamicState& state, int solid_element) {
  if (solid_element < 0 || solid_element >= state.geo.table.n_solid())
    throw ArgumentError("track_cut_cells: solid element index out of range");
  std::vector<double> areas;
  for (const auto& piece : state.geo.table.entries[solid_element]) areas.push_back(piece.area);
  return areas;
}

} // namespace fdfsi
