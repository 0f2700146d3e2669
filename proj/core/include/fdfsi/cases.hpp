#pragma once

#include "fdfsi/assembly.hpp"
#include "fdfsi/dual.hpp"

#include <string>
#include <vector>

namespace fdfsi {

/// Closed-form solution of the stationary coupled problem together with the
/// geometry it lives on.
struct ManufacturedCase {
  std::string name;
  GeometryDescriptor fluid;
  GeometryDescriptor solid;
  VectorField map;  // X̄: B -> Ω, affine or identity in every registered case
  VectorField u;
  std::function<double(const Point2&)> p;
  VectorField X;
  VectorField lambda;
  Parameters params;
  /// Set when p jumps across the zero set of this function.
  std::function<double(const Point2&)> pressure_interface;
  /// Solid mesh is the midpoint refinement of a structured grid with half
  /// the fluid resolution, so that X̄ can reproduce T_{h/2} exactly.
  bool structured_solid = false;
  std::string notes;

  bool pressure_discontinuous() const { return static_cast<bool>(pressure_interface); }
};

ManufacturedCase shifted_square_case(double sigma);
ManufacturedCase disk_case();
ManufacturedCase flower_case();
ManufacturedCase annulus_case();

/// shifted-square (sigma = 0), disk, flower, stretched-annulus.
std::vector<ManufacturedCase> registry();
ManufacturedCase find_case(const std::string& name);

/// Meshes and dof maps of one refinement level. Level l uses a 4*2^l
/// pressure grid; curved solids use mesh level l - 1.
struct Discretization {
  int level = 0;
  TriMesh fluid_coarse;
  TriMesh fluid_half;
  TriMesh solid;
  DofMap u_map, p_map, X_map, l_map;
  double h = 0.0;        // pressure mesh size (max diameter)
  double h_solid = 0.0;  // solid mesh size

  std::vector<Point2> mapped_vertices(const ManufacturedCase& c) const;
};

Discretization discretize(const ManufacturedCase& c, int level);

} // namespace fdfsi
