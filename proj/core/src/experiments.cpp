#include "fdfsi/experiments.hpp"

#include "fdfsi/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

namespace fdfsi {

void StudyConfig::validate() const {
  if (levels.empty()) throw ArgumentError("study needs at least one level");
  for (int l : levels)
    if (l < 1) throw ArgumentError("levels must be >= 1");
  if (sigmas.empty()) throw ArgumentError("study needs at least one shift value");
  if (kinds.empty() || modes.empty()) throw ArgumentError("study needs at least one coupling kind and mode");
  physics.validate();
}

int level_for_grid(int nx) {
  if (nx < 8 || nx % 4 != 0 || !std::has_single_bit(static_cast<unsigned>(nx / 4)))
    throw ArgumentError("grid size must be 4 * 2^level with level >= 1, got " + std::to_string(nx));
  return std::countr_zero(static_cast<unsigned>(nx / 4));
}

double relative_spread(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  return scale > 0.0 ? (*hi - *lo) / scale : 0.0;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_vector(std::ostream& os, const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) os << format_number(v[i]) << '\n';
}

PointResult run_point(const ManufacturedCase& c, int level, CouplingKind kind, AssemblyMode mode, PressureFix fix,
                      bool with_cond, const ConditionOptions& cond_options) {
  const AssembledProblem ap = assemble_problem(c, level, kind, mode, fix);
  const Factorization lu(ap.system.matrix);
  const LinearSolution sol = solve(ap.system, lu);
  PointResult r;
  r.level = level;
  r.h = ap.disc.h;
  r.errors = error_norms(sol.fields, c, ap.disc, kind);
  r.residual = sol.residual;
  r.min_cut_area = ap.geo.table.min_piece_area();
  r.n_unknowns = ap.system.size();
  if (with_cond) r.cond = estimate_cond2(lu, cond_options).cond2;
  return r;
}

std::vector<ShiftRow> run_shift_study(const StudyConfig& config) {
  config.validate();
  const int level = level_for_grid(config.nx);
  std::vector<ShiftRow> rows;
  for (double sigma : config.sigmas) {
    const ManufacturedCase c = shifted_square_case(sigma);
    for (CouplingKind kind : config.kinds)
      for (AssemblyMode mode : config.modes)
        rows.push_back({sigma, kind, mode, run_point(c, level, kind, mode, config.fix, true, config.cond_options)});
  }
  return rows;
}

void write_shift_csv(std::ostream& os, const std::vector<ShiftRow>& rows) {
  os << "sigma,kind,mode,err_u,err_p,err_X,err_lambda,cond\n";
  for (const auto& r : rows) {
    const ErrorNorms& e = r.result.errors;
    os << format_number(r.sigma) << ',' << to_string(r.kind) << ',' << to_string(r.mode) << ','
       << format_number(e.u_h1) << ',' << format_number(e.p_l2) << ',' << format_number(e.X_h1) << ','
       << format_number(e.lambda) << ',' << format_number(r.result.cond) << '\n';
  }
}

namespace {

ManufacturedCase study_case(const StudyConfig& config) {
  ManufacturedCase c = find_case(config.case_name);
  if (c.name == "shifted-square") c = shifted_square_case(config.sigmas.front());
  return c;
}

} // namespace

std::vector<PointResult> run_convergence_study(const StudyConfig& config, CouplingKind kind, AssemblyMode mode) {
  config.validate();
  const ManufacturedCase c = study_case(config);
  std::vector<PointResult> rows;
  for (int level : config.levels)
    rows.push_back(run_point(c, level, kind, mode, config.fix, config.with_cond, config.cond_options));
  return rows;
}

void write_convergence_csv(std::ostream& os, const std::vector<PointResult>& rows) {
  os << "level,h,err_u,err_p,err_X,err_lambda,cond\n";
  for (const auto& r : rows)
    os << r.level << ',' << format_number(r.h) << ',' << format_number(r.errors.u_h1) << ','
       << format_number(r.errors.p_l2) << ',' << format_number(r.errors.X_h1) << ','
       << format_number(r.errors.lambda) << ',' << format_number(r.cond) << '\n';
}

CondStudy run_cond_study(const StudyConfig& config) {
  config.validate();
  const ManufacturedCase c = study_case(config);
  CondStudy study;
  for (CouplingKind kind : config.kinds)
    for (AssemblyMode mode : config.modes) {
      std::vector<double> conds, hs;
      for (int level : config.levels) {
        const PointResult r = run_point(c, level, kind, mode, config.fix, true, config.cond_options);
        study.rows.push_back({kind, mode, level, r.h, r.cond});
        conds.push_back(r.cond);
        hs.push_back(r.h);
      }
      const double slope = conds.size() >= 3 ? fit_rate(conds, hs) : std::numeric_limits<double>::quiet_NaN();
      study.slopes.push_back({kind, mode, -1, 0.0, slope});
    }
  return study;
}

void write_cond_csv(std::ostream& os, const CondStudy& study) {
  os << "kind,mode,level,h,cond\n";
  for (const auto& r : study.rows)
    os << to_string(r.kind) << ',' << to_string(r.mode) << ',' << r.level << ',' << format_number(r.h) << ','
       << format_number(r.cond) << '\n';
  for (const auto& r : study.slopes)
    os << to_string(r.kind) << ',' << to_string(r.mode) << ",slope,," << format_number(r.cond) << '\n';
}

TimeStudy run_time_study(const StudyConfig& config, CouplingKind kind, AssemblyMode mode,
                         const StepObserver& observer) {
  config.validate();
  const DynamicSetup setup = make_dynamic_setup(config.nx, config.physics, kind, mode);
  TimeStudy study;
  study.seed = config.seed;
  std::mt19937_64 rng(config.seed);
  study.tracked_element = std::uniform_int_distribution<int>(0, setup.solid.n_triangles() - 1)(rng);

  DynamicState state = init_state(setup);
  const double e0 = energy(state, setup);
  const int steps = static_cast<int>(std::llround(config.physics.t_final / config.physics.dt));
  auto record = [&] {
    const double e = energy(state, setup);
    study.energy.push_back({state.n, state.t, e, e0 > 0.0 ? e / e0 : 0.0});
    for (double a : track_cut_cells(state, study.tracked_element)) study.cut_cells.push_back({state.n, state.t, a});
    study.min_cut_area = std::min(study.min_cut_area, state.geo.table.min_piece_area());
    if (observer) observer(state, setup);
  };
  record();
  for (int n = 0; n < steps; ++n) {
    state = advance(state, setup);
    record();
  }
  return study;
}

void write_energy_csv(std::ostream& os, const TimeStudy& study) {
  os << "n,t,E,E_ratio\n";
  for (const auto& r : study.energy)
    os << r.n << ',' << format_number(r.t) << ',' << format_number(r.E) << ',' << format_number(r.ratio) << '\n';
}

void write_cutcell_csv(std::ostream& os, const TimeStudy& study) {
  os << "# seed=" << study.seed << " element=" << study.tracked_element << '\n';
  os << "n,t,area\n";
  for (const auto& r : study.cut_cells)
    os << r.n << ',' << format_number(r.t) << ',' << format_number(r.area) << '\n';
}

} // namespace fdfsi
