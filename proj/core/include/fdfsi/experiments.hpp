#pragma once

#include "fdfsi/timestepping.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace fdfsi {

struct StudyConfig {
  std::string case_name = "shifted-square";
  std::vector<CouplingKind> kinds{CouplingKind::C0, CouplingKind::C1};
  std::vector<AssemblyMode> modes{AssemblyMode::Exact, AssemblyMode::Inexact};
  std::vector<int> levels{1, 2, 3, 4};
  std::vector<double> sigmas{0.0};
  int nx = 32;  // pressure grid for the shift and dynamic studies
  bool with_cond = false;
  PressureFix fix = PressureFix::Augment;
  PhysicalParams physics;
  std::uint64_t seed = 2024;
  ConditionOptions cond_options;

  void validate() const;
};

/// Solve one case at one level. cond is NaN unless requested.
struct PointResult {
  int level = 0;
  double h = 0.0;
  ErrorNorms errors;
  double cond = std::numeric_limits<double>::quiet_NaN();
  double residual = 0.0;
  double min_cut_area = 0.0;
  int n_unknowns = 0;
};

PointResult run_point(const ManufacturedCase& c, int level, CouplingKind kind, AssemblyMode mode, PressureFix fix,
                      bool with_cond, const ConditionOptions& cond_options = {});

struct ShiftRow {
  double sigma;
  CouplingKind kind;
  AssemblyMode mode;
  PointResult result;
};

/// Shifted square at a fixed nx x nx pressure grid; always estimates cond2.
std::vector<ShiftRow> run_shift_study(const StudyConfig& config);
void write_shift_csv(std::ostream& os, const std::vector<ShiftRow>& rows);

/// One (kind, mode) pair over config.levels; uses config.sigmas.front() for
/// the shifted square.
std::vector<PointResult> run_convergence_study(const StudyConfig& config, CouplingKind kind, AssemblyMode mode);
void write_convergence_csv(std::ostream& os, const std::vector<PointResult>& rows);

struct CondRow {
  CouplingKind kind;
  AssemblyMode mode;
  int level;
  double h;
  double cond;
};

struct CondStudy {
  std::vector<CondRow> rows;
  /// Fitted slope of log cond against log h, per (kind, mode) in config order.
  std::vector<CondRow> slopes;  // `cond` holds the slope, level = -1
};

CondStudy run_cond_study(const StudyConfig& config);
void write_cond_csv(std::ostream& os, const CondStudy& study);

struct EnergyRow {
  int n;
  double t;
  double E;
  double ratio;
};

struct CutCellRow {
  int n;
  double t;
  double area;
};

struct TimeStudy {
  std::vector<EnergyRow> energy;
  std::vector<CutCellRow> cut_cells;
  int tracked_element = -1;
  std::uint64_t seed = 0;
  double min_cut_area = std::numeric_limits<double>::infinity();  // over all elements and steps
};

using StepObserver = std::function<void(const DynamicState&, const DynamicSetup&)>;

/// Dynamic annulus; the cut-cell element is drawn from config.seed. The
/// observer, if set, sees every state including the initial one.
TimeStudy run_time_study(const StudyConfig& config, CouplingKind kind = CouplingKind::C0,
                         AssemblyMode mode = AssemblyMode::Exact, const StepObserver& observer = {});
void write_energy_csv(std::ostream& os, const TimeStudy& study);
void write_cutcell_csv(std::ostream& os, const TimeStudy& study);

/// Pressure level for an nx x nx grid (nx = 4 * 2^level).
int level_for_grid(int nx);

/// Relative spread (max - min) / max|v|.
double relative_spread(const std::vector<double>& values);

/// %.16e
std::string format_number(double v);

/// One coefficient per line.
void write_vector(std::ostream& os, const Eigen::VectorXd& v);

} // namespace fdfsi
