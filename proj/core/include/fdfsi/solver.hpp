#pragma once

#include "fdfsi/system.hpp"

#include <Eigen/SparseLU>

#include <memory>

namespace fdfsi {

/// Sparse LU of a square matrix (COLAMD ordering). Throws SolverError when
/// the matrix is numerically singular.
class Factorization {
public:
  explicit Factorization(const SparseMatrix& a);

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::VectorXd solve_transpose(const Eigen::VectorXd& b) const;
  const SparseMatrix& matrix() const { return a_; }

private:
  SparseMatrix a_;
  std::unique_ptr<Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>>> lu_;
};

struct LinearSolution {
  Fields fields;
  Eigen::VectorXd x;
  double residual = 0.0;  // ||A x - F|| / ||F|| (absolute when F = 0)
  int refinement_steps = 0;
};

/// Factor, solve, and refine until the relative residual is below 1e-12 or
/// three refinement steps were taken. Throws SolverError if the residual
/// stays above 1e-10.
LinearSolution solve(const BlockSystem& sys);
LinearSolution solve(const BlockSystem& sys, const Factorization& lu);

struct ConditionEstimate {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
  double cond2 = 0.0;
  int iterations_max = 0;
  int iterations_min = 0;
  bool converged = false;
};

struct ConditionOptions {
  double tolerance = 1e-6;  // relative change of the Ritz value
  int max_iterations = 10000;
  int restart = 200;
  unsigned seed = 12345;
};

/// Largest singular value by Lanczos on A^T A, smallest by Lanczos on
/// (A^T A)^{-1} applied through the LU factors. Throws EstimateError when
/// either iteration fails to converge.
ConditionEstimate estimate_cond2(const SparseMatrix& a, const ConditionOptions& opt = {});
ConditionEstimate estimate_cond2(const Factorization& lu, const ConditionOptions& opt = {});

/// Dense SVD reference; for n <= 2000.
ConditionEstimate dense_cond2(const SparseMatrix& a);

struct ErrorNorms {
  double u_h1 = 0.0;
  double p_l2 = 0.0;
  double X_h1 = 0.0;
  double lambda = 0.0;  // dual norm for C0, H1 for C1
  double lambda_l2 = 0.0;
};

/// Errors of a discrete solution against the closed forms. The pressure
/// error is taken after removing the difference of the means.
ErrorNorms error_norms(const Fields& f, const ManufacturedCase& c, const Discretization& d, CouplingKind kind);

/// ||u - u_h||_{1} with degree-6 quadrature.
double h1_error(const VectorField& exact, const FieldVector& vec, const DofMap& map, const TriMesh& mesh);
double l2_error(const VectorField& exact, const FieldVector& vec, const DofMap& map, const TriMesh& mesh);

/// ||psi_h||_1 where (grad psi, grad phi) + (psi, phi) = (lambda - lambda_h, phi)
/// for all P1 phi on the solid mesh.
double dual_norm_error(const FieldVector& lambda_h, const VectorField& lambda, const TriMesh& solid,
                       const DofMap& l_map);

/// Least-squares slope of log(value) against log(h).
double fit_rate(const std::vector<double>& values, const std::vector<double>& hs);

} // namespace fdfsi
