#pragma once

#include "fdfsi/point.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace fdfsi {

/// 2D conforming triangulation. Triangles are counterclockwise.
///
/// `parent_triangle` is filled only by refine_midpoint() and links each child
/// to the coarse triangle it was cut from; the pressure space on T_h and the
/// velocity space on T_{h/2} share geometry through it.
struct TriMesh {
  std::vector<Point2> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::uint8_t> boundary_vertex;
  std::vector<int> parent_triangle;

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_triangles() const { return static_cast<int>(triangles.size()); }
  bool has_parents() const { return parent_triangle.size() == triangles.size(); }

  Triangle corners(int t) const {
    const auto& tri = triangles[t];
    return {vertices[tri[0]], vertices[tri[1]], vertices[tri[2]]};
  }
  double area(int t) const { return signed_area(corners(t)); }
  double total_area() const;
};

enum class GeometryKind { UnitSquareBox, SquareContainer4x4, Disk, Flower, Annulus };

/// Analytic description of a fluid container or solid reference domain.
struct GeometryDescriptor {
  GeometryKind kind = GeometryKind::UnitSquareBox;
  Point2 center = Point2(0.5, 0.5);
  double radius = 0.0;     // disk radius, flower inscribed radius
  double r_inner = 0.0;    // annulus
  double r_outer = 0.0;    // annulus
  double amplitude = 0.0;  // flower petal amplitude
  int petals = 0;          // flower petal count

  /// Throws ArgumentError when kind-specific positivity fails.
  void validate() const;
  /// Exact area of the analytic region.
  double area() const;
  /// Signed level set: negative inside, positive outside (radial for curved kinds).
  double level_set(const Point2& x) const;
};

struct MeshSize {
  double h_max = 0.0;
  double h_min = 0.0;
  double ratio() const { return h_max / h_min; }
};

TriMesh build_structured_square(int n, const Point2& lo, const Point2& hi);
TriMesh refine_midpoint(const TriMesh& mesh);

/// Concentric-ring disk: ring k carries 6k vertices, 2^(level+1) rings.
TriMesh build_disk_mesh(const Point2& center, double radius, int level);

/// Disk construction stretched radially onto
/// r(theta) = r0 * (1 + amplitude * (1 + cos(petals * theta)) / 2).
TriMesh build_flower_mesh(const Point2& center, double r0, double amplitude, int petals, int level);

/// Structured polar annulus with 16*2^level angular and 2*2^level radial cells.
TriMesh build_annulus_mesh(const Point2& center, double r_in, double r_out, int level);
TriMesh build_annulus_mesh(const Point2& center, double r_in, double r_out, int n_angular,
                           int n_radial);

/// Mesh of an analytic solid region at the given refinement level.
TriMesh build_mesh(const GeometryDescriptor& geometry, int level);

MeshSize mesh_size(const TriMesh& mesh);

/// Flags vertices on edges that belong to exactly one triangle.
std::vector<std::uint8_t> boundary_flags(const TriMesh& mesh);

/// Throws ArgumentError on out-of-range indices or non-positive triangles.
void validate(const TriMesh& mesh);

/// Plain text: "nv nt", nv lines "x y flag", nt lines "i0 i1 i2".
void write_mesh(std::ostream& os, const TriMesh& mesh);
TriMesh read_mesh(std::istream& is);

} // namespace fdfsi
