// Command-line driver for the studies: writes CSV files under --out.

#include "fdfsi/errors.hpp"
#include "fdfsi/experiments.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace fdfsi;

namespace {

struct Options {
  std::string case_name = "shifted-square";
  std::vector<std::string> kinds;
  std::vector<std::string> modes;
  std::vector<int> levels;
  std::vector<double> sigmas;
  int nx = 0;
  double dt = 0.1;
  double t_final = 4.0;
  std::string out = ".";
  std::uint64_t seed = 2024;
  bool with_cond = false;
  std::string pressure_fix = "augment";
  std::vector<double> snapshots;
};

std::vector<double> default_sigmas() {
  std::vector<double> s{0.0};
  for (int j = 3; j <= 15; ++j) {
    s.push_back(std::pow(10.0, -j));
    s.push_back(-std::pow(10.0, -j));
  }
  return s;
}

StudyConfig make_config(const Options& o, std::vector<std::string> default_kinds,
                        std::vector<std::string> default_modes) {
  StudyConfig c;
  c.case_name = o.case_name;
  c.kinds.clear();
  for (const auto& k : o.kinds.empty() ? default_kinds : o.kinds) c.kinds.push_back(parse_coupling_kind(k));
  c.modes.clear();
  for (const auto& m : o.modes.empty() ? default_modes : o.modes) c.modes.push_back(parse_assembly_mode(m));
  if (!o.levels.empty()) c.levels = o.levels;
  if (!o.sigmas.empty()) c.sigmas = o.sigmas;
  if (o.nx > 0) c.nx = o.nx;
  c.with_cond = o.with_cond;
  c.fix = parse_pressure_fix(o.pressure_fix);
  c.physics.dt = o.dt;
  c.physics.t_final = o.t_final;
  c.seed = o.seed;
  c.validate();
  return c;
}

std::ofstream open_output(const Options& o, const std::string& name) {
  fs::create_directories(o.out);
  const fs::path path = fs::path(o.out) / name;
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  std::cout << path.string() << '\n';
  return os;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--case", o.case_name, "manufactured case (see case-list)");
  app->add_option("--kind", o.kinds, "coupling kind: c0 or c1 (repeatable)")->check(CLI::IsMember({"c0", "c1"}));
  app->add_option("--mode", o.modes, "assembly mode: exact or inexact (repeatable)")
      ->check(CLI::IsMember({"exact", "inexact"}));
  app->add_option("--levels", o.levels, "refinement levels, e.g. --levels 1,2,3,4")->delimiter(',');
  app->add_option("--sigma", o.sigmas, "shift of the solid square (repeatable)")->allow_extra_args(false);
  app->add_option("--nx", o.nx, "pressure grid size N (N x N cells)");
  app->add_option("--out", o.out, "output directory");
  app->add_flag("--with-cond", o.with_cond, "estimate cond2 at every level");
  app->add_option("--pressure-fix", o.pressure_fix, "mean-zero pressure mechanism")
      ->check(CLI::IsMember({"augment", "pin"}));
  app->add_option("--seed", o.seed, "random seed");
}

void run_case_list() {
  for (const auto& c : registry())
    std::printf("%-18s alpha=%g beta=%g gamma=%g nu=%g  %s\n", c.name.c_str(), c.params.alpha, c.params.beta,
                c.params.gamma, c.params.nu, c.notes.c_str());
}

void run_shift(const Options& o) {
  StudyConfig c = make_config(o, {"c0", "c1"}, {"exact", "inexact"});
  if (o.sigmas.empty()) c.sigmas = default_sigmas();
  const auto rows = run_shift_study(c);
  auto os = open_output(o, "shift.csv");
  write_shift_csv(os, rows);
}

void run_converge(const Options& o) {
  const StudyConfig c = make_config(o, {"c0", "c1"}, {"exact"});
  const std::string name = find_case(o.case_name).name;
  for (CouplingKind k : c.kinds)
    for (AssemblyMode m : c.modes) {
      auto rows = run_convergence_study(c, k, m);
      auto os = open_output(o, "converge_" + name + "_" + to_string(k) + "_" + to_string(m) + ".csv");
      write_convergence_csv(os, rows);
    }
}

void run_cond(const Options& o) {
  const StudyConfig c = make_config(o, {"c0", "c1"}, {"exact", "inexact"});
  const CondStudy study = run_cond_study(c);
  auto os = open_output(o, "cond_" + find_case(o.case_name).name + ".csv");
  write_cond_csv(os, study);
}

void run_dynamic(const Options& o) {
  Options oo = o;
  if (oo.nx == 0) oo.nx = 32;
  const StudyConfig c = make_config(oo, {"c0"}, {"exact"});
  std::vector<double> pending = o.snapshots;
  auto observer = [&](const DynamicState& st, const DynamicSetup&) {
    for (auto it = pending.begin(); it != pending.end();) {
      if (std::abs(st.t - *it) <= 0.5 * c.physics.dt) {
        char tag[64];
        std::snprintf(tag, sizeof tag, "snapshot_t%.4f", *it);
        for (auto [suffix, vec] : {std::pair{"_u.txt", &st.u}, {"_p.txt", &st.p}, {"_X.txt", &st.X}}) {
          auto os = open_output(oo, tag + std::string(suffix));
          write_vector(os, *vec);
        }
        it = pending.erase(it);
      } else {
        ++it;
      }
    }
  };
  const TimeStudy study = run_time_study(c, c.kinds.front(), c.modes.front(), observer);
  {
    auto os = open_output(oo, "energy.csv");
    write_energy_csv(os, study);
  }
  auto os = open_output(oo, "cutcells.csv");
  write_cutcell_csv(os, study);
}

void run_solve(const Options& o) {
  const StudyConfig c = make_config(o, {"c0"}, {"exact"});
  ManufacturedCase mc = find_case(o.case_name);
  if (mc.name == "shifted-square") mc = shifted_square_case(c.sigmas.front());
  const int level = c.levels.front();
  const AssembledProblem ap = assemble_problem(mc, level, c.kinds.front(), c.modes.front(), c.fix);
  const LinearSolution sol = solve(ap.system);
  {
    auto os = open_output(o, "matrix.mtx");
    write_matrix_market(os, ap.system.matrix);
  }
  {
    auto os = open_output(o, "rhs.txt");
    write_vector(os, ap.system.rhs);
  }
  for (auto [name, vec] : {std::pair{"u.txt", &sol.fields.u},
                           {"p.txt", &sol.fields.p},
                           {"X.txt", &sol.fields.X},
                           {"lambda.txt", &sol.fields.lambda}}) {
    auto os = open_output(o, name);
    write_vector(os, *vec);
  }
  {
    auto os = open_output(o, "intersections.txt");
    write_intersection_table(os, ap.geo.table);
  }
  const ErrorNorms e = error_norms(sol.fields, mc, ap.disc, c.kinds.front());
  std::printf("unknowns %d  residual %.3e  err_u %.6e  err_p %.6e  err_X %.6e  err_lambda %.6e\n", ap.system.size(),
              sol.residual, e.u_h1, e.p_l2, e.X_h1, e.lambda);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fictitious-domain FSI solver: conditioning, convergence and dynamic studies"};
  app.require_subcommand(1);
  Options o;

  auto* shift = app.add_subcommand("shift", "error and cond2 against the shift of the solid square");
  auto* converge = app.add_subcommand("converge", "error convergence under refinement");
  auto* cond = app.add_subcommand("cond", "cond2 growth under refinement");
  auto* dynamic = app.add_subcommand("dynamic", "time-dependent stretched annulus");
  auto* solve_cmd = app.add_subcommand("solve", "solve one level and export matrix, solution and cut cells");
  auto* list = app.add_subcommand("case-list", "list the manufactured cases");
  for (auto* sub : {shift, converge, cond, dynamic, solve_cmd}) add_common(sub, o);
  dynamic->add_option("--dt", o.dt, "time step");
  dynamic->add_option("--tfinal", o.t_final, "final time");
  dynamic->add_option("--snapshot", o.snapshots, "write u, p, X at these times (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version requests exit 0; malformed command lines share the argument-error code
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*list) run_case_list();
    if (*shift) run_shift(o);
    if (*converge) run_converge(o);
    if (*cond) run_cond(o);
    if (*dynamic) run_dynamic(o);
    if (*solve_cmd) run_solve(o);
  } catch (const EstimateError& e) {
    std::fprintf(stderr, "fdfsi: %s (sigma_max >= %.6e, sigma_min <= %.6e)\n", e.what(), e.sigma_max, e.sigma_min);
    return 3;
  } catch (const ArgumentError& e) {
    std::fprintf(stderr, "fdfsi: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fdfsi: %s\n", e.what());
    return 1;
  }
  return 0;
}
