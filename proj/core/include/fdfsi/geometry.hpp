#pragma once

#include "fdfsi/mesh.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace fdfsi {

/// Counterclockwise convex polygon; empty or at least three vertices.
struct ConvexPolygon {
  std::vector<Point2> vertices;

  bool empty() const { return vertices.empty(); }
  double area() const;
};

/// Intersection of two positively oriented triangles by sequential half-plane
/// clipping. Predicates use an absolute tolerance of 1e-14 times the larger
/// input diameter; vertices within that band count as on the clip line.
ConvexPolygon clip_triangles(const Triangle& subject, const Triangle& clipper);

/// Fan from vertex 0: n - 2 triangles.
std::vector<Triangle> fan_triangulate(const ConvexPolygon& poly);

/// Uniform bucket grid over the bounding box of a fluid mesh.
class BackgroundGrid {
public:
  /// `cell_size <= 0` picks the mean triangle diameter.
  explicit BackgroundGrid(const TriMesh& fluid, double cell_size = 0.0);

  /// Triangles whose bounding boxes touch [lo, hi], ascending, deduplicated.
  std::vector<int> candidates(const Point2& lo, const Point2& hi) const;
  const std::vector<int>& bucket(int ix, int iy) const { return buckets_[iy * nx_ + ix]; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const Point2& lo() const { return lo_; }
  const Point2& hi() const { return hi_; }

private:
  int cell_x(double x) const;
  int cell_y(double y) const;

  Point2 lo_, hi_;
  double dx_ = 1.0, dy_ = 1.0;
  int nx_ = 1, ny_ = 1;
  std::vector<std::vector<int>> buckets_;
};

/// A fluid element containing p (barycentric coordinates >= -1e-12), or
/// nothing when p lies outside the mesh. Returns the lowest-index match.
std::optional<int> locate_point(const BackgroundGrid& grid, const TriMesh& fluid, const Point2& p);

struct IntersectionPiece {
  int fluid_element = -1;
  ConvexPolygon polygon;
  double area = 0.0;
  std::vector<Triangle> sub_triangles;
};

/// Per solid element: the cut cells X(T_s) ∩ T_f and their fan triangulations.
struct IntersectionTable {
  std::vector<std::vector<IntersectionPiece>> entries;
  std::vector<double> total_mapped_area;

  int n_solid() const { return static_cast<int>(entries.size()); }
  std::size_t n_pieces() const;
  double min_piece_area() const;
  /// Smallest piece area divided by its mapped element area.
  double min_relative_piece_area(std::span<const Triangle> mapped) const;
};

/// Images of the solid triangles under the piecewise-affine map that sends
/// solid vertex v to mapped_positions[v].
std::vector<Triangle> map_elements(const TriMesh& solid, std::span<const Point2> mapped_positions);

/// Relative area below which a clipped polygon is discarded.
inline constexpr double kDropRelativeArea = 1e-14;

/// Throws GeometryError if a mapped element loses more than 1e-10 of its
/// area to the outside of the fluid mesh.
IntersectionTable build_intersection_table(std::span<const Triangle> mapped, const TriMesh& fluid_half,
                                           const BackgroundGrid& grid);

/// One line per polygon: "solid_elem fluid_elem area v0x v0y v1x v1y ...".
void write_intersection_table(std::ostream& os, const IntersectionTable& table);

} // namespace fdfsi
