#include "fdfsi/errors.hpp"
#include "fdfsi/solver.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>

namespace fdfsi {

namespace {

struct LanczosResult {
  double theta = 0.0;
  int iterations = 0;
  bool converged = false;
};

using Operator = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Largest eigenvalue of a symmetric positive semidefinite operator. Lanczos
// with full reorthogonalization, explicitly restarted from the current Ritz
// vector when the basis reaches opt.restart vectors. Converged when the Ritz
// residual beta_j |s_j| drops below tol * theta.
LanczosResult lanczos_max(const Operator& op, int n, const ConditionOptions& opt, std::mt19937& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd start(n);
  for (int i = 0; i < n; ++i) start[i] = normal(rng);
  start.normalize();

  const int m = std::max(2, std::min(opt.restart, n));
  LanczosResult res;
  Eigen::MatrixXd V(n, m);
  while (res.iterations < opt.max_iterations) {
    V.col(0) = start;
    std::vector<double> alpha, beta;
    int k = 0;
    for (; k < m && res.iterations < opt.max_iterations; ++k) {
      Eigen::VectorXd w = op(V.col(k));
      ++res.iterations;
      alpha.push_back(V.col(k).dot(w));
      for (int pass = 0; pass < 2; ++pass) w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);
      const double b = w.norm();

      const int dim = k + 1;
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(dim, dim);
      for (int i = 0; i < dim; ++i) {
        T(i, i) = alpha[i];
        if (i + 1 < dim) T(i, i + 1) = T(i + 1, i) = beta[i];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
      const double theta = es.eigenvalues()[dim - 1];
      const Eigen::VectorXd s = es.eigenvectors().col(dim - 1);
      res.theta = theta;
      const bool invariant = b <= 1e-14 * std::max(std::abs(theta), 1e-300);
      if (invariant || b * std::abs(s[dim - 1]) <= opt.tolerance * theta) {
        res.converged = true;
        return res;
      }
      if (k + 1 == m || res.iterations == opt.max_iterations) {
        start = (V.leftCols(dim) * s).normalized();
        break;
      }
      beta.push_back(b);
      V.col(k + 1) = w / b;
    }
  }
  return res;
}

} // namespace

ConditionEstimate estimate_cond2(const SparseMatrix& a, const ConditionOptions& opt) {
  const Factorization lu(a);
  return estimate_cond2(lu, opt);
}

ConditionEstimate estimate_cond2(const Factorization& lu, const ConditionOptions& opt) {
  const SparseMatrix& a = lu.matrix();
  const int n = static_cast<int>(a.rows());
  std::mt19937 rng(opt.seed);
  const SparseMatrix at = a.transpose();
  const LanczosResult hi =
      lanczos_max([&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return at * (a * v); }, n, opt, rng);
  const LanczosResult lo = lanczos_max(
      [&](const Eigen::VectorXd& v) -> Eigen::VectorXd { return lu.solve(lu.solve_transpose(v)); }, n, opt, rng);

  ConditionEstimate est;
  est.sigma_max = std::sqrt(hi.theta);
  est.sigma_min = 1.0 / std::sqrt(lo.theta);
  est.cond2 = est.sigma_max / est.sigma_min;
  est.iterations_max = hi.iterations;
  est.iterations_min = lo.iterations;
  est.converged = hi.converged && lo.converged;
  if (!est.converged)
    throw EstimateError("extremal singular value iteration did not converge", est.sigma_max, est.sigma_min);
  return est;
}

ConditionEstimate dense_cond2(const SparseMatrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("dense_cond2: matrix must be square");
  if (a.rows() > 2000) throw ArgumentError("dense_cond2: matrix too large for the dense reference");
  const Eigen::MatrixXd dense(a);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(dense);
  const auto& sv = svd.singularValues();
  ConditionEstimate est;
  est.sigma_max = sv[0];
  est.sigma_min = sv[sv.size() - 1];
  est.cond2 = est.sigma_max / est.sigma_min;
  est.converged = true;
  return est;
}

} // namespace fdfsi
