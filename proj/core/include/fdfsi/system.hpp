#pragma once

#include "fdfsi/rhs.hpp"

#include <Eigen/SparseCore>

namespace fdfsi {

/// How the constant pressure mode is removed.
/// Augment: one extra unknown r with rows  B u + m r = 0  and  m^T p = 0,
/// where m_k = int psi_k. Pin: pressure dof 0 is fixed to zero.
enum class PressureFix { Augment, Pin };

const char* to_string(PressureFix fix);
PressureFix parse_pressure_fix(const std::string& s);

struct SystemBlocks {
  SparseMatrix Af, Bf, As, Cs, Cf;
};

/// Saddle-point system with unknown order (u_free, X, lambda, p[, r]) and
/// block pattern
///   [ A_f   0    C_f^T  -B_f^T ]
///   [ 0     A_s  -C_s^T  0     ]
///   [ -C_f  C_s  0       0     ]
///   [ B_f   0    0       0     ]
/// Constrained velocity dofs are removed; their values are moved to the
/// right-hand side.
struct BlockSystem {
  SparseMatrix matrix;
  Eigen::VectorXd rhs;
  std::vector<int> u_free;  // reduced position -> velocity dof
  FieldVector u_boundary;   // full length, nonzero only on constrained dofs
  PressureFix fix = PressureFix::Augment;
  int n_u = 0, n_X = 0, n_l = 0, n_p = 0;

  int n_u_free() const { return static_cast<int>(u_free.size()); }
  int off_X() const { return n_u_free(); }
  int off_l() const { return off_X() + n_X; }
  int off_p() const { return off_l() + n_l; }
  int n_p_unknowns() const { return fix == PressureFix::Pin ? n_p - 1 : n_p; }
  int size() const { return off_p() + n_p_unknowns() + (fix == PressureFix::Augment ? 1 : 0); }
};

/// int psi_k over the pressure mesh.
Eigen::VectorXd pressure_weights(const TriMesh& fluid_coarse);

BlockSystem build_system(const SystemBlocks& blocks, const BlockRhs& rhs, const DofMap& u_map,
                         const FieldVector& u_boundary, const Eigen::VectorXd& p_weights, PressureFix fix);

/// Field vectors recovered from a solution of BlockSystem.
struct Fields {
  FieldVector u, p, X, lambda;
};

Fields unpack(const BlockSystem& sys, const Eigen::VectorXd& x);

/// Blocks, loads and system for one case, level and coupling choice.
struct AssembledProblem {
  Discretization disc;
  CouplingGeometry geo;
  SystemBlocks blocks;
  BlockSystem system;
};

AssembledProblem assemble_problem(const ManufacturedCase& c, int level, CouplingKind kind, AssemblyMode mode,
                                  PressureFix fix = PressureFix::Augment);

} // namespace fdfsi
