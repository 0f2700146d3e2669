#include "fdfsi/errors.hpp"
#include "fdfsi/solver.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/SparseCholesky>

#include <random>

using namespace fdfsi;

namespace {

SparseMatrix diagonal(const std::vector<double>& d) {
  SparseMatrix m(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.insert(i, i) = d[i];
  m.makeCompressed();
  return m;
}

/// Diagonally weighted random sparse matrix with a few entries per row.
SparseMatrix random_sparse(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> col(0, n - 1);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    t.emplace_back(i, i, 2.0 + u(rng));
    for (int k = 0; k < 4; ++k) t.emplace_back(i, col(rng), u(rng));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

const VectorField smooth = make_vector_field([](auto x, auto y) {
  using std::sin, std::cos, fdfsi::sin, fdfsi::cos;
  return std::array<decltype(x), 2>{sin(3.0 * x) * cos(2.0 * y), x * y * y};
});

double oracle_h1(const VectorField& f, const TriMesh& m) {
  return std::sqrt(oracle::integrate(m, [&](const Point2& x) {
    return f.value(x).squaredNorm() + f.jacobian(x).squaredNorm();
  }, 8));
}

} // namespace

TEST_CASE("linear solves") {
  SUBCASE("zero load gives the zero solution") {
    AssembledProblem ap = assemble_problem(disk_case(), 1, CouplingKind::C0, AssemblyMode::Exact);
    ap.system.rhs.setZero();
    const LinearSolution s = solve(ap.system);
    CHECK(s.x.norm() == 0.0);
    CHECK(s.residual == 0.0);
  }

  SUBCASE("discrete velocity is weakly divergence free") {
    const AssembledProblem ap = assemble_problem(disk_case(), 3, CouplingKind::C0, AssemblyMode::Exact);
    const LinearSolution s = solve(ap.system);
    CHECK(s.residual <= 1e-10);
    const Eigen::VectorXd div = ap.blocks.Bf * s.fields.u;
    CHECK(div.norm() <= 1e-10 * s.fields.u.norm());
  }

  SUBCASE("exact and inexact coupling coincide on a matching placement") {
    const ManufacturedCase c = shifted_square_case(0.0);
    for (auto kind : {CouplingKind::C0, CouplingKind::C1}) {
      const AssembledProblem pe = assemble_problem(c, 2, kind, AssemblyMode::Exact);
      const AssembledProblem pi = assemble_problem(c, 2, kind, AssemblyMode::Inexact);
      CHECK(relative_frobenius(pi.system.matrix, pe.system.matrix) <= 1e-12);
      CHECK((pi.system.rhs - pe.system.rhs).norm() <= 1e-12 * pe.system.rhs.norm());
      const Fields e = solve(pe.system).fields, i = solve(pi.system).fields;
      CHECK((e.u - i.u).norm() <= 1e-10 * e.u.norm());
      CHECK((e.X - i.X).norm() <= 1e-10 * e.X.norm());
      CHECK((e.lambda - i.lambda).norm() <= 1e-10 * e.lambda.norm());
      CHECK((e.p - i.p).norm() <= 1e-10 * e.p.norm());
    }
  }

  SUBCASE("singular matrices are reported") {
    SparseMatrix z = diagonal({1.0, 0.0, 2.0});
    CHECK_THROWS_AS(Factorization{z}, SolverError);
  }
}

TEST_CASE("condition number estimates") {
  CHECK(estimate_cond2(diagonal(std::vector<double>(50, 1.0))).cond2 == doctest::Approx(1.0).epsilon(1e-6));

  std::vector<double> d(200);
  for (int i = 0; i < 200; ++i) d[i] = 1.0 - (1.0 - 1e-3) * i / 199.0;
  const ConditionEstimate e = estimate_cond2(diagonal(d));
  CHECK(e.converged);
  CHECK(e.cond2 == doctest::Approx(1e3).epsilon(1e-4));
  CHECK(e.sigma_max == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(e.sigma_min == doctest::Approx(1e-3).epsilon(1e-6));

  std::mt19937_64 rng(5);
  for (int k = 0; k < 3; ++k) {
    const SparseMatrix a = random_sparse(500, rng);
    const ConditionEstimate ref = dense_cond2(a);
    const ConditionEstimate est = estimate_cond2(a);
    CHECK(std::abs(est.cond2 - ref.cond2) <= 1e-4 * ref.cond2);
    const ConditionEstimate via_lu = estimate_cond2(Factorization(a));
    CHECK(via_lu.cond2 == doctest::Approx(est.cond2).epsilon(1e-10));
  }

  ConditionOptions tight;
  tight.max_iterations = 2;
  CHECK_THROWS_AS(estimate_cond2(random_sparse(300, rng), tight), EstimateError);
}

TEST_CASE("error norms") {
  SUBCASE("H1 interpolation error decays at rate 1") {
    std::vector<double> errs, hs;
    for (int n : {8, 16, 32}) {
      const TriMesh m = build_structured_square(n, Point2(0, 0), Point2(1, 1));
      const DofMap map = build_dof_map(m, FieldKind::Deformation);
      errs.push_back(h1_error(smooth, interpolate(smooth.value, map, m), map, m));
      hs.push_back(1.0 / n);
    }
    CHECK(fit_rate(errs, hs) == doctest::Approx(1.0).epsilon(0.05));
  }

  SUBCASE("error of the zero vector is the norm of the field") {
    const TriMesh m = build_disk_mesh(Point2(0.5, 0.5), 0.3, 2);
    const DofMap map = build_dof_map(m, FieldKind::Deformation);
    const FieldVector zero = FieldVector::Zero(map.n_dofs());
    CHECK(h1_error(smooth, zero, map, m) == doctest::Approx(oracle_h1(smooth, m)).epsilon(1e-10));
    const double l2 = std::sqrt(oracle::integrate(m, [](const Point2& x) { return smooth.value(x).squaredNorm(); }, 8));
    CHECK(l2_error(smooth, zero, map, m) == doctest::Approx(l2).epsilon(1e-10));

    const VectorField twice{[](const Point2& x) { return Point2(2.0 * smooth.value(x)); },
                            [](const Point2& x) { return Mat2(2.0 * smooth.jacobian(x)); }};
    const FieldVector v = interpolate(smooth.value, map, m);
    CHECK(h1_error(twice, 2.0 * v, map, m) == doctest::Approx(2.0 * h1_error(smooth, v, map, m)).epsilon(1e-12));
  }

  SUBCASE("dual norm of the multiplier error") {
    const TriMesh m = build_disk_mesh(Point2(0.5, 0.5), 0.3, 1);
    const DofMap map = build_dof_map(m, FieldKind::Multiplier);
    const VectorField linear = make_vector_field([](auto x, auto y) {
      return std::array<decltype(x), 2>{1.0 + 2.0 * x - y, 0.5 * y};
    });
    CHECK(dual_norm_error(interpolate(linear.value, map, m), linear, m, map) < 1e-13);

    const FieldVector lh = interpolate(smooth.value, map, m) * 0.9;
    const double dual = dual_norm_error(lh, smooth, m, map);
    CHECK(dual <= l2_error(smooth, lh, map, m));

    // (K + M) psi = b with b_i = (lambda - lambda_h, phi_i) integrated by the oracle
    Eigen::VectorXd b = Eigen::VectorXd::Zero(map.n_dofs());
    for (int t = 0; t < m.n_triangles(); ++t) {
      const Triangle c = m.corners(t);
      for (int k = 0; k < 3; ++k)
        for (int comp = 0; comp < 2; ++comp)
          b[map.index(m.triangles[t][k], comp)] += oracle::integrate(c, [&](const Point2& x) {
            const auto bc = barycentric(c, x);
            const Point2 r = smooth.value(x) - eval_field(lh, map, m, t, bc).value;
            return r[comp] * bc[k];
          }, 8);
    }
    const SparseMatrix km = assemble_mass(m, map) + assemble_stiffness(m, map);
    Eigen::SimplicialLDLT<SparseMatrix> ldlt(km);
    const Eigen::VectorXd psi = ldlt.solve(b);
    CHECK(dual == doctest::Approx(std::sqrt(psi.dot(km * psi))).epsilon(1e-10));
  }
}

TEST_CASE("rate fitting") {
  const std::vector<double> hs{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> sq, con, inv;
  for (double h : hs) {
    sq.push_back(3.0 * h * h);
    con.push_back(7.0);
    inv.push_back(std::pow(h, -4));
  }
  CHECK(fit_rate(sq, hs) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(fit_rate(con, hs)) < 1e-12);
  CHECK(fit_rate(inv, hs) == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_rate({1.0, 2.0}, {0.1, 0.05}), ArgumentError);
  CHECK_THROWS_AS(fit_rate({1.0, 0.0, 2.0}, {0.1, 0.05, 0.025}), ArgumentError);
  CHECK_THROWS_AS(fit_rate({1.0, 2.0, 3.0}, {0.1, 0.05}), ArgumentError);
}
