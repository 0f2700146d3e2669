#include "fdfsi/system.hpp"

#include "fdfsi/errors.hpp"

namespace fdfsi {

const char* to_string(PressureFix fix) { return fix == PressureFix::Augment ? "augment" : "pin"; }

PressureFix parse_pressure_fix(const std::string& s) {
  if (s == "augment") return PressureFix::Augment;
  if (s == "pin") return PressureFix::Pin;
  throw ArgumentError("unknown pressure fix '" + s + "' (expected augment or pin)");
}

Eigen::VectorXd pressure_weights(const TriMesh& fluid_coarse) {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(fluid_coarse.n_vertices());
  for (int t = 0; t < fluid_coarse.n_triangles(); ++t) {
    const double a = fluid_coarse.area(t) / 3.0;
    for (int v : fluid_coarse.triangles[t]) m[v] += a;
  }
  return m;
}

BlockSystem build_system(const SystemBlocks& b, const BlockRhs& rhs, const DofMap& u_map,
                         const FieldVector& u_boundary, const Eigen::VectorXd& p_weights, PressureFix fix) {
  BlockSystem sys;
  sys.fix = fix;
  sys.n_u = u_map.n_dofs();
  sys.n_X = static_cast<int>(b.As.rows());
  sys.n_l = static_cast<int>(b.Cs.rows());
  sys.n_p = static_cast<int>(b.Bf.rows());
  if (b.Af.rows() != sys.n_u || b.Bf.cols() != sys.n_u || b.Cf.cols() != sys.n_u || b.Cf.rows() != sys.n_l ||
      b.Cs.cols() != sys.n_X || p_weights.size() != sys.n_p || u_boundary.size() != sys.n_u)
    throw ArgumentError("build_system: block dimensions are inconsistent");
  sys.u_boundary = u_boundary;

  std::vector<int> u_pos(sys.n_u, -1);
  for (int i = 0; i < sys.n_u; ++i)
    if (!u_map.constrained[i]) {
      u_pos[i] = static_cast<int>(sys.u_free.size());
      sys.u_free.push_back(i);
    }
  const int pin_offset = fix == PressureFix::Pin ? 1 : 0;
  auto p_pos = [&](int k) { return k < pin_offset ? -1 : sys.off_p() + k - pin_offset; };
  const int n = sys.size();

  sys.rhs = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < sys.n_u; ++i)
    if (u_pos[i] >= 0) sys.rhs[u_pos[i]] = rhs.f[i];
  sys.rhs.segment(sys.off_X(), sys.n_X) = rhs.g;
  sys.rhs.segment(sys.off_l(), sys.n_l) = rhs.d;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(b.Af.nonZeros() + 2 * (b.Bf.nonZeros() + b.Cf.nonZeros() + b.Cs.nonZeros()) + b.As.nonZeros() +
               2 * sys.n_p);
  // Adds value at (row, velocity column j); constrained columns go to the rhs.
  auto add_u_col = [&](int row, int j, double value) {
    if (row < 0) return;
    if (u_pos[j] >= 0)
      trip.emplace_back(row, u_pos[j], value);
    else
      sys.rhs[row] -= value * u_boundary[j];
  };

  for (int k = 0; k < b.Af.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b.Af, k); it; ++it) add_u_col(u_pos[it.row()], it.col(), it.value());
  for (int k = 0; k < b.Bf.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b.Bf, k); it; ++it) {
      const int pr = p_pos(it.row());
      if (u_pos[it.col()] >= 0 && pr >= 0) trip.emplace_back(u_pos[it.col()], pr, -it.value());
      add_u_col(pr, it.col(), it.value());
    }
  for (int k = 0; k < b.Cf.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b.Cf, k); it; ++it) {
      const int lr = sys.off_l() + static_cast<int>(it.row());
      if (u_pos[it.col()] >= 0) trip.emplace_back(u_pos[it.col()], lr, it.value());
      add_u_col(lr, it.col(), -it.value());
    }
  for (int k = 0; k < b.As.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b.As, k); it; ++it)
      trip.emplace_back(sys.off_X() + it.row(), sys.off_X() + it.col(), it.value());
  for (int k = 0; k < b.Cs.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(b.Cs, k); it; ++it) {
      const int lr = sys.off_l() + static_cast<int>(it.row());
      const int xc = sys.off_X() + static_cast<int>(it.col());
      trip.emplace_back(xc, lr, -it.value());
      trip.emplace_back(lr, xc, it.value());
    }
  if (fix == PressureFix::Augment) {
    const int r = n - 1;
    for (int k = 0; k < sys.n_p; ++k) {
      trip.emplace_back(p_pos(k), r, p_weights[k]);
      trip.emplace_back(r, p_pos(k), p_weights[k]);
    }
  }

  sys.matrix.resize(n, n);
  sys.matrix.setFromTriplets(trip.begin(), trip.end());
  // Structural zeros from the blocks (e.g. cut points on element edges) would
  // make the LU ordering depend on how the coupling was assembled.
  sys.matrix.prune(0.0);
  sys.matrix.makeCompressed();
  return sys;
}

Fields unpack(const BlockSystem& sys, const Eigen::VectorXd& x) {
  if (x.size() != sys.size()) throw ArgumentError("unpack: solution size does not match the system");
  Fields f;
  f.u = sys.u_boundary;
  for (int i = 0; i < sys.n_u_free(); ++i) f.u[sys.u_free[i]] = x[i];
  f.X = x.segment(sys.off_X(), sys.n_X);
  f.lambda = x.segment(sys.off_l(), sys.n_l);
  f.p = FieldVector::Zero(sys.n_p);
  const int pin = sys.fix == PressureFix::Pin ? 1 : 0;
  f.p.tail(sys.n_p - pin) = x.segment(sys.off_p(), sys.n_p - pin);
  return f;
}

AssembledProblem assemble_problem(const ManufacturedCase& c, int level, CouplingKind kind, AssemblyMode mode,
                                  PressureFix fix) {
  c.params.validate();
  AssembledProblem ap;
  ap.disc = discretize(c, level);
  const Discretization& d = ap.disc;
  const BackgroundGrid grid(d.fluid_half);
  ap.geo = build_coupling_geometry(d.solid, d.mapped_vertices(c), d.fluid_half, grid);
  ap.blocks.Af = assemble_Af(d.fluid_half, d.u_map, c.params);
  ap.blocks.Bf = assemble_Bf(d.fluid_half, d.fluid_coarse, d.u_map, d.p_map);
  ap.blocks.As = assemble_As(d.solid, d.X_map, c.params);
  ap.blocks.Cs = assemble_Cs(d.solid, d.X_map, kind);
  ap.blocks.Cf = assemble_Cf(d.solid, ap.geo, d.fluid_half, grid, d.l_map, d.u_map, kind, mode);
  const BlockRhs rhs = assemble_rhs(c, d, ap.geo, kind);
  ap.system = build_system(ap.blocks, rhs, d.u_map, dirichlet_values(c.u, d.u_map, d.fluid_half),
                           pressure_weights(d.fluid_coarse), fix);
  return ap;
}

} // namespace fdfsi
