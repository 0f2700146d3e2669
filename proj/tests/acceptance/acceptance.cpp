// Acceptance checks. `acceptance <name>` runs one criterion, no argument runs
// all of them; each prints a single PASS/FAIL line.

#include "fdfsi/experiments.hpp"
#include "fdfsi/geometry.hpp"

#include "oracles.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace fdfsi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void note(Outcome& o, bool ok, const std::string& s) {
  o.pass = o.pass && ok;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += s + (ok ? "" : " [!]");
}

std::string label(CouplingKind k, AssemblyMode m) { return std::string(to_string(k)) + "/" + to_string(m); }

// ---------------------------------------------------------------- conditioning

Outcome cond_slope(CouplingKind kind, double lo, double hi) {
  StudyConfig cfg;
  cfg.case_name = "disk";
  cfg.kinds = {kind};
  cfg.levels = {1, 2, 3, 4};
  const CondStudy st = run_cond_study(cfg);
  Outcome o;
  for (const auto& s : st.slopes)
    note(o, s.cond >= lo && s.cond <= hi, fmt("%s slope %.3f (want [%.1f, %.1f])", to_string(s.mode), s.cond, lo, hi));
  return o;
}

Outcome cond_slope_c0() { return cond_slope(CouplingKind::C0, -4.5, -3.5); }
Outcome cond_slope_c1() { return cond_slope(CouplingKind::C1, -2.5, -1.5); }

// ---------------------------------------------------------------- shifted square

Outcome shift_invariance() {
  StudyConfig cfg;
  cfg.nx = 32;
  cfg.sigmas = {0.0, 1e-3, -1e-3, 1e-7, -1e-7, 1e-10, -1e-10, 1e-15, -1e-15};
  const auto rows = run_shift_study(cfg);
  Outcome o;
  for (CouplingKind k : cfg.kinds)
    for (AssemblyMode m : cfg.modes) {
      std::vector<double> cond, u, p, X, l;
      for (const auto& r : rows)
        if (r.kind == k && r.mode == m) {
          cond.push_back(r.result.cond);
          u.push_back(r.result.errors.u_h1);
          p.push_back(r.result.errors.p_l2);
          X.push_back(r.result.errors.X_h1);
          l.push_back(r.result.errors.lambda);
        }
      const double sc = relative_spread(cond), su = relative_spread(u), sp = relative_spread(p),
                   sX = relative_spread(X), sl = relative_spread(l);
      const bool ok = sc <= 0.05 && su <= 0.05 && sp <= 0.05 && sX <= 0.05 && sl <= 0.05;
      note(o, ok, fmt("%s spread cond %.2g u %.2g p %.2g X %.2g lambda %.2g", label(k, m).c_str(), sc, su, sp, sX, sl));
    }
  return o;
}

Outcome small_cut() {
  StudyConfig cfg;
  cfg.nx = 32;
  cfg.sigmas = {0.0, 1e-10};
  const auto rows = run_shift_study(cfg);
  Outcome o;
  const std::size_t half = rows.size() / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const PointResult& a = rows[i].result;
    const PointResult& b = rows[i + half].result;
    const double rel = std::abs(b.cond - a.cond) / a.cond;
    const bool ok = b.min_cut_area <= 1e-10 && b.residual <= 1e-10 && std::isfinite(b.cond) && rel <= 0.10;
    note(o, ok, fmt("%s min cut %.1e, residual %.1e, cond %.4e vs %.4e (%.2g)", label(rows[i].kind, rows[i].mode).c_str(),
                    b.min_cut_area, b.residual, b.cond, a.cond, rel));
  }
  return o;
}

double rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double n = b.norm();
  return n > 0.0 ? (a - b).norm() / n : a.norm();
}

Outcome matching_mesh() {
  const ManufacturedCase c = shifted_square_case(0.0);
  Outcome o;
  for (int level : {2, 3})
    for (CouplingKind k : {CouplingKind::C0, CouplingKind::C1}) {
      const AssembledProblem e = assemble_problem(c, level, k, AssemblyMode::Exact);
      const AssembledProblem i = assemble_problem(c, level, k, AssemblyMode::Inexact);
      const double dc = relative_frobenius(i.blocks.Cf, e.blocks.Cf);
      const Fields fe = solve(e.system).fields, fi = solve(i.system).fields;
      const double ds = std::max({rel_diff(fi.u, fe.u), rel_diff(fi.p, fe.p), rel_diff(fi.X, fe.X),
                                  rel_diff(fi.lambda, fe.lambda)});
      note(o, dc <= 1e-12 && ds <= 1e-10, fmt("level %d %s: Cf %.1e, solution %.1e", level, to_string(k), dc, ds));
    }
  return o;
}

// ---------------------------------------------------------------- convergence

struct Rates {
  double u, p, X, l;
};

Rates rates(const std::string& name, CouplingKind kind, AssemblyMode mode, std::vector<double> sigmas = {0.0}) {
  StudyConfig cfg;
  cfg.case_name = name;
  cfg.sigmas = std::move(sigmas);
  const auto rows = run_convergence_study(cfg, kind, mode);
  std::vector<double> h, u, p, X, l;
  for (const auto& r : rows) {
    h.push_back(r.h);
    u.push_back(r.errors.u_h1);
    p.push_back(r.errors.p_l2);
    X.push_back(r.errors.X_h1);
    l.push_back(r.errors.lambda);
  }
  return {fit_rate(u, h), fit_rate(p, h), fit_rate(X, h), fit_rate(l, h)};
}

Outcome convergence_rates() {
  Outcome o;
  auto in = [](double r) { return r >= 0.8 && r <= 1.2; };
  for (const char* name : {"flower", "stretched-annulus"})
    for (CouplingKind k : {CouplingKind::C0, CouplingKind::C1}) {
      const Rates r = rates(name, k, AssemblyMode::Exact);
      note(o, in(r.u) && in(r.p) && in(r.X) && in(r.l),
           fmt("%s %s u %.2f p %.2f X %.2f lambda %.2f", name, to_string(k), r.u, r.p, r.X, r.l));
    }
  return o;
}

Outcome disk_pressure() {
  Outcome o;
  for (CouplingKind k : {CouplingKind::C0, CouplingKind::C1}) {
    const Rates r = rates("disk", k, AssemblyMode::Exact);
    note(o, r.p <= r.u - 0.2, fmt("%s u %.2f p %.2f (want p <= u - 0.2)", to_string(k), r.u, r.p));
  }
  return o;
}

Outcome inexact_c1() {
  const std::vector<double> sigma{std::numbers::pi * 1e-3};
  const Rates e = rates("shifted-square", CouplingKind::C1, AssemblyMode::Exact, sigma);
  const Rates i = rates("shifted-square", CouplingKind::C1, AssemblyMode::Inexact, sigma);
  Outcome o;
  note(o, i.l <= e.l - 0.3, fmt("lambda slope exact %.2f inexact %.2f (gap %.2f, want >= 0.3)", e.l, i.l, e.l - i.l));
  return o;
}

// ---------------------------------------------------------------- dynamics

Outcome energy_decay() {
  Outcome o;
  const bool full = std::getenv("FDFSI_FULL_ENERGY") != nullptr;
  for (double dt : {0.1, 0.01}) {
    StudyConfig cfg;
    cfg.nx = 32;
    cfg.physics.dt = dt;
    cfg.physics.t_final = (dt < 0.05 && !full) ? 1.0 : 4.0;
    const TimeStudy st = run_time_study(cfg);
    int violations = 0;
    for (std::size_t n = 1; n < st.energy.size(); ++n)
      if (st.energy[n].E > st.energy[n - 1].E * (1.0 + 1e-10)) ++violations;
    note(o, violations == 0, fmt("dt %.2g: %d increases over %zu steps", dt, violations, st.energy.size() - 1));
    const double ratio = st.energy.back().ratio;
    if (cfg.physics.t_final == 4.0)
      note(o, ratio < 0.2, fmt("dt %.2g: E(4)/E(0) = %.3f (want < 0.2)", dt, ratio));
    else
      o.detail += fmt("; dt %.2g: E(1)/E(0) = %.3f", dt, ratio);
  }
  return o;
}

// ---------------------------------------------------------------- oracles

Outcome geometry_oracle() {
  Outcome o;
  std::mt19937_64 rng(20240611);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Triangle a = oracle::random_triangle(rng), b = oracle::random_triangle(rng);
    worst = std::max(worst, std::abs(clip_triangles(a, b).area() - oracle::intersection_area(a, b)));
  }
  note(o, worst <= 1e-10, fmt("1e4 random pairs vs enumeration: max error %.1e", worst));

  // Monte-Carlo on a subset, five standard deviations
  int mc_fail = 0;
  for (int k = 0; k < 200; ++k) {
    const Triangle a = oracle::random_triangle(rng), b = oracle::random_triangle(rng);
    const int n = 200000;
    const double area = clip_triangles(a, b).area();
    const double frac = area / signed_area(a);
    const double sd = signed_area(a) * std::sqrt(std::max(frac * (1.0 - frac), 1.0 / n) / n);
    if (std::abs(oracle::monte_carlo_area(a, b, n, rng) - area) > 5.0 * sd) ++mc_fail;
  }
  note(o, mc_fail == 0, fmt("200 pairs vs Monte-Carlo: %d outside 5 sd", mc_fail));

  // translated copies with shifts down to round-off
  double shift_err = 0.0;
  const Triangle unit{Point2(0, 0), Point2(1, 0), Point2(0, 1)};
  for (double s : {1e-1, 1e-3, 1e-7, 1e-10, 1e-15}) {
    const Triangle moved{unit[0] + Point2(s, 0), unit[1] + Point2(s, 0), unit[2] + Point2(s, 0)};
    shift_err = std::max(shift_err, std::abs(clip_triangles(unit, moved).area() - 0.5 * (1 - s) * (1 - s)));
  }
  note(o, shift_err <= 1e-10, fmt("shifted copies: max error %.1e", shift_err));

  double partition = 0.0;
  for (const auto& c : registry()) {
    const Discretization d = discretize(c, 1);
    const BackgroundGrid grid(d.fluid_half);
    const CouplingGeometry geo = build_coupling_geometry(d.solid, d.mapped_vertices(c), d.fluid_half, grid);
    for (int s = 0; s < geo.table.n_solid(); ++s) {
      const double whole = std::abs(signed_area(geo.mapped[s]));
      double sum = 0.0;
      for (const auto& piece : geo.table.entries[s]) {
        sum += piece.area;
        double sub = 0.0;
        for (const auto& t : piece.sub_triangles) sub += signed_area(t);
        partition = std::max(partition, std::abs(sub - piece.area) / whole);
      }
      partition = std::max(partition, std::abs(sum - whole) / whole);
    }
  }
  note(o, partition <= 1e-12, fmt("level-1 partition of four cases: max relative defect %.1e", partition));
  return o;
}

Outcome quadrature() {
  Outcome o;
  for (int degree : {1, 2, 3, 6}) {
    const QuadratureRule r = make_rule(degree);
    double worst = 0.0;
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; a + b <= degree; ++b) {
        double s = 0.0;
        for (std::size_t q = 0; q < r.size(); ++q)
          s += r.weights[q] * std::pow(r.points[q][1], a) * std::pow(r.points[q][2], b);
        const double exact = oracle::monomial_integral(a, b);
        worst = std::max(worst, std::abs(s - exact) / exact);
      }
    note(o, worst <= 1e-14, fmt("degree %d: %.1e", degree, worst));
  }
  return o;
}

SparseMatrix random_matrix(int n, double grading, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> col(0, n - 1);
  std::vector<Eigen::Triplet<double>> t;
  for (int i = 0; i < n; ++i) {
    const double scale = std::pow(grading, -static_cast<double>(i) / (n - 1));
    t.emplace_back(i, i, scale * (2.0 + u(rng)));
    for (int k = 0; k < 4; ++k) t.emplace_back(i, col(rng), 0.3 * scale * u(rng));
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

Outcome cond_oracle() {
  std::mt19937_64 rng(77);
  std::vector<std::pair<std::string, SparseMatrix>> mats;
  for (int k = 0; k < 44; ++k) {
    const int n = 50 + (1950 * k * k) / (43 * 43);
    mats.emplace_back(fmt("random n=%d", n), random_matrix(n, std::pow(10.0, k % 5), rng));
  }
  // a few of the saddle-point systems themselves
  for (const auto& name : {"disk", "flower", "stretched-annulus"})
    for (CouplingKind k : {CouplingKind::C0, CouplingKind::C1}) {
      const AssembledProblem ap = assemble_problem(find_case(name), 1, k, AssemblyMode::Exact);
      if (ap.system.size() <= 2000) mats.emplace_back(std::string(name) + "/" + to_string(k), ap.system.matrix);
    }
  Outcome o;
  double worst = 0.0;
  std::string where;
  for (const auto& [name, m] : mats) {
    const double ref = dense_cond2(m).cond2;
    const double rel = std::abs(estimate_cond2(m).cond2 - ref) / ref;
    if (rel >= worst) {
      worst = rel;
      where = name;
    }
  }
  note(o, mats.size() >= 50 && worst <= 1e-4,
       fmt("%zu matrices, max relative error %.1e (%s)", mats.size(), worst, where.c_str()));
  return o;
}

struct Criterion {
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {"cond-slope-c0", cond_slope_c0},       {"cond-slope-c1", cond_slope_c1},
    {"shift-invariance", shift_invariance}, {"matching-mesh", matching_mesh},
    {"convergence-rates", convergence_rates}, {"disk-pressure", disk_pressure},
    {"inexact-c1", inexact_c1},             {"energy-decay", energy_decay},
    {"geometry-oracle", geometry_oracle},   {"quadrature", quadrature},
    {"cond-oracle", cond_oracle},           {"small-cut", small_cut},
};

} // namespace

int main(int argc, char** argv) {
  const std::string only = argc > 1 ? argv[1] : "";
  bool found = only.empty(), all_pass = true;
  for (const auto& c : kCriteria) {
    if (!only.empty() && only != c.name) continue;
    found = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  if (!found) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
