#include "fdfsi/solver.hpp"

#include "fdfsi/errors.hpp"

#include <string>

namespace fdfsi {

Factorization::Factorization(const SparseMatrix& a) : a_(a) {
  if (a.rows() != a.cols()) throw ArgumentError("Factorization: matrix must be square");
  a_.makeCompressed();
  lu_ = std::make_unique<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>>();
  lu_->analyzePattern(a_);
  lu_->factorize(a_);
  if (lu_->info() != Eigen::Success) throw SolverError("sparse LU failed: " + lu_->lastErrorMessage());
}

Eigen::VectorXd Factorization::solve(const Eigen::VectorXd& b) const { return lu_->solve(b); }

Eigen::VectorXd Factorization::solve_transpose(const Eigen::VectorXd& b) const { return lu_->transpose().solve(b); }

LinearSolution solve(const BlockSystem& sys) {
  const Factorization lu(sys.matrix);
  return solve(sys, lu);
}

LinearSolution solve(const BlockSystem& sys, const Factorization& lu) {
  LinearSolution out;
  const double nb = sys.rhs.norm();
  const double scale = nb > 0.0 ? nb : 1.0;
  out.x = lu.solve(sys.rhs);
  Eigen::VectorXd r = sys.rhs - sys.matrix * out.x;
  out.residual = r.norm() / scale;
  while (out.residual > 1e-12 && out.refinement_steps < 3) {
    out.x += lu.solve(r);
    r = sys.rhs - sys.matrix * out.x;
    out.residual = r.norm() / scale;
    ++out.refinement_steps;
  }
  if (!(out.residual <= 1e-10))
    throw SolverError("linear solve residual " + std::to_string(out.residual) + " exceeds 1e-10");
  out.fields = unpack(sys, out.x);
  return out;
}

} // namespace fdfsi
