#include "fdfsi/errors.hpp"
#include "fdfsi/geometry.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>
#include <sstream>

using namespace fdfsi;

namespace {

Triangle tri(double ax, double ay, double bx, double by, double cx, double cy) {
  return {Point2(ax, ay), Point2(bx, by), Point2(cx, cy)};
}

bool polygon_inside(const ConvexPolygon& p, const Triangle& t) {
  for (const auto& v : p.vertices)
    for (double b : barycentric(t, v))
      if (b < -1e-10) return false;
  return true;
}

} // namespace

TEST_CASE("clipping: identical, disjoint and translated triangles") {
  const Triangle unit = tri(0, 0, 1, 0, 0, 1);
  const ConvexPolygon same = clip_triangles(unit, unit);
  CHECK(same.vertices.size() == 3);
  CHECK(same.area() == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(clip_triangles(unit, tri(2, 2, 3, 2, 2, 3)).empty());

  const Triangle shifted = tri(0.5, 0, 1.5, 0, 0.5, 1);
  const ConvexPolygon half = clip_triangles(unit, shifted);
  CHECK(half.area() == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(oracle::intersection_area(unit, shifted) == doctest::Approx(0.125).epsilon(1e-14));
  std::mt19937_64 rng(7);
  CHECK(oracle::monte_carlo_area(unit, shifted, 1000000, rng) == doctest::Approx(0.125).epsilon(1e-2));
}

TEST_CASE("clipping rejects degenerate or clockwise input") {
  const Triangle unit = tri(0, 0, 1, 0, 0, 1);
  CHECK_THROWS_AS(clip_triangles(tri(0, 0, 1, 1, 2, 2), unit), ArgumentError);
  CHECK_THROWS_AS(clip_triangles(unit, tri(0, 0, 0, 1, 1, 0)), ArgumentError);
}

TEST_CASE("clipping agrees with the enumeration oracle on random pairs") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 2000; ++k) {
    const Triangle a = oracle::random_triangle(rng), b = oracle::random_triangle(rng);
    const ConvexPolygon ab = clip_triangles(a, b), ba = clip_triangles(b, a);
    const double ref = oracle::intersection_area(a, b);
    CHECK(std::abs(ab.area() - ref) <= 1e-12);
    CHECK(std::abs(ab.area() - ba.area()) <= 1e-14);
    CHECK(ab.area() <= std::min(signed_area(a), signed_area(b)) + 1e-14);
    CHECK(polygon_inside(ab, a));
    CHECK(polygon_inside(ab, b));
    // shrinking the clipper towards its centroid never grows the intersection
    const Point2 g = (b[0] + b[1] + b[2]) / 3.0;
    const Triangle small{g + 0.7 * (b[0] - g), g + 0.7 * (b[1] - g), g + 0.7 * (b[2] - g)};
    CHECK(clip_triangles(a, small).area() <= ab.area() + 1e-14);
  }
}

TEST_CASE("clipping polygons are convex and counterclockwise") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 500; ++k) {
    const ConvexPolygon p = clip_triangles(oracle::random_triangle(rng), oracle::random_triangle(rng));
    if (p.empty()) continue;
    const std::size_t n = p.vertices.size();
    REQUIRE(n >= 3);
    for (std::size_t i = 0; i < n; ++i) {
      const Point2& a = p.vertices[i];
      const Point2& b = p.vertices[(i + 1) % n];
      const Point2& c = p.vertices[(i + 2) % n];
      CHECK(cross(b - a, c - b) >= -1e-14);
    }
  }
}

TEST_CASE("touching triangles share at most a null set") {
  const Triangle lower = tri(0, 0, 1, 0, 0, 1);
  const Triangle upper = tri(1, 0, 1, 1, 0, 1);
  CHECK(clip_triangles(lower, upper).area() <= 1e-15);
  CHECK(clip_triangles(lower, tri(1, 0, 2, 0, 1, 1)).area() <= 1e-15);
}

TEST_CASE("fan triangulation") {
  const ConvexPolygon t{{Point2(0, 0), Point2(1, 0), Point2(0, 1)}};
  const auto one = fan_triangulate(t);
  REQUIRE(one.size() == 1);
  CHECK(signed_area(one[0]) == doctest::Approx(0.5));

  const ConvexPolygon square{{Point2(0, 0), Point2(1, 0), Point2(1, 1), Point2(0, 1)}};
  const auto two = fan_triangulate(square);
  REQUIRE(two.size() == 2);
  for (const auto& s : two) CHECK(signed_area(s) == doctest::Approx(0.5).epsilon(1e-15));

  ConvexPolygon hex;
  for (int k = 0; k < 6; ++k)
    hex.vertices.emplace_back(std::cos(k * std::numbers::pi / 3), std::sin(k * std::numbers::pi / 3));
  const auto four = fan_triangulate(hex);
  REQUIRE(four.size() == 4);
  double sum = 0.0;
  for (const auto& s : four) {
    CHECK(signed_area(s) > 0.0);
    sum += signed_area(s);
  }
  CHECK(sum == doctest::Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-14));
  CHECK(hex.area() == doctest::Approx(sum).epsilon(1e-14));
  CHECK(fan_triangulate(ConvexPolygon{}).empty());
}

TEST_CASE("point location matches an exhaustive scan") {
  const TriMesh fluid = refine_midpoint(build_structured_square(16, Point2(0, 0), Point2(1, 1)));
  const BackgroundGrid grid(fluid);

  for (int t = 0; t < fluid.n_triangles(); t += 37) {
    const Triangle c = fluid.corners(t);
    CHECK(locate_point(grid, fluid, (c[0] + c[1] + c[2]) / 3.0) == t);
  }
  CHECK_FALSE(locate_point(grid, fluid, Point2(1.5, 0.5)).has_value());
  CHECK_FALSE(locate_point(grid, fluid, Point2(-1e-9, 0.5)).has_value());

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 100000; ++k) {
    const Point2 p(u(rng), u(rng));
    const auto found = locate_point(grid, fluid, p);
    REQUIRE(found.has_value());
    const auto all = oracle::locate_all(fluid, p);
    CHECK(std::find(all.begin(), all.end(), *found) != all.end());
  }
  // vertices and edge midpoints: any incident element is fine
  for (int v = 0; v < fluid.n_vertices(); v += 13) {
    const auto found = locate_point(grid, fluid, fluid.vertices[v]);
    REQUIRE(found.has_value());
    const auto all = oracle::locate_all(fluid, fluid.vertices[v]);
    CHECK(std::find(all.begin(), all.end(), *found) != all.end());
  }
}

TEST_CASE("background grid buckets cover every bounding box") {
  const TriMesh fluid = build_structured_square(8, Point2(-2, -2), Point2(2, 2));
  const BackgroundGrid grid(fluid);
  for (int t = 0; t < fluid.n_triangles(); ++t) {
    const Triangle c = fluid.corners(t);
    Point2 lo = c[0], hi = c[0];
    for (const auto& p : c) {
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
    const auto cand = grid.candidates(lo, hi);
    CHECK(std::find(cand.begin(), cand.end(), t) != cand.end());
    CHECK(std::is_sorted(cand.begin(), cand.end()));
  }
}

TEST_CASE("intersection table on matching meshes") {
  const TriMesh fluid = refine_midpoint(build_structured_square(4, Point2(0, 0), Point2(1, 1)));
  const BackgroundGrid grid(fluid);
  const auto mapped = map_elements(fluid, fluid.vertices);
  const IntersectionTable table = build_intersection_table(mapped, fluid, grid);
  for (int s = 0; s < table.n_solid(); ++s) {
    REQUIRE(table.entries[s].size() == 1);
    CHECK(table.entries[s][0].fluid_element == s);
    CHECK(table.entries[s][0].area == doctest::Approx(fluid.area(s)).epsilon(1e-14));
  }
}

TEST_CASE("intersection table partitions shifted elements") {
  const TriMesh fluid = refine_midpoint(build_structured_square(8, Point2(-2, -2), Point2(2, 2)));
  const BackgroundGrid grid(fluid);
  const TriMesh solid = build_structured_square(8, Point2(0, 0), Point2(1, 1));
  const double sigma = 1e-3;
  std::vector<Point2> xbar;
  for (const auto& s : solid.vertices) xbar.emplace_back(2 * s.x() - 1 + sigma, 2 * s.y() - 1);
  const auto mapped = map_elements(solid, xbar);
  const IntersectionTable table = build_intersection_table(mapped, fluid, grid);
  for (int s = 0; s < table.n_solid(); ++s) {
    const double expected = 4.0 * solid.area(s);  // |det F| |T_s|
    CHECK(table.total_mapped_area[s] == doctest::Approx(expected).epsilon(1e-12));
    double sum = 0.0;
    for (const auto& piece : table.entries[s]) {
      sum += piece.area;
      CHECK(polygon_inside(piece.polygon, mapped[s]));
      CHECK(polygon_inside(piece.polygon, fluid.corners(piece.fluid_element)));
      double sub = 0.0;
      for (const auto& t : piece.sub_triangles) {
        CHECK(signed_area(t) > 0.0);
        sub += signed_area(t);
      }
      CHECK(sub == doctest::Approx(piece.area).epsilon(1e-14));
    }
    CHECK(sum == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(table.min_piece_area() > 0.0);
  CHECK(table.min_piece_area() < 1e-2);
}

TEST_CASE("intersection table reports elements leaving the fluid") {
  const TriMesh fluid = refine_midpoint(build_structured_square(4, Point2(0, 0), Point2(1, 1)));
  const BackgroundGrid grid(fluid);
  const TriMesh solid = build_structured_square(2, Point2(0, 0), Point2(1, 1));
  std::vector<Point2> xbar;
  for (const auto& s : solid.vertices) xbar.push_back(s + Point2(0.2, 0.0));
  CHECK_THROWS_AS(build_intersection_table(map_elements(solid, xbar), fluid, grid), GeometryError);
  CHECK_THROWS_AS(map_elements(solid, std::vector<Point2>(3)), ArgumentError);
}

TEST_CASE("intersection table dump") {
  const TriMesh fluid = refine_midpoint(build_structured_square(2, Point2(0, 0), Point2(1, 1)));
  const BackgroundGrid grid(fluid);
  const TriMesh solid = build_structured_square(1, Point2(0.1, 0.1), Point2(0.6, 0.6));
  const IntersectionTable table = build_intersection_table(map_elements(solid, solid.vertices), fluid, grid);
  std::stringstream ss;
  write_intersection_table(ss, table);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(ss, line)) {
    std::istringstream ls(line);
    int s = -1, f = -1;
    double area = 0.0;
    ls >> s >> f >> area;
    CHECK(s >= 0);
    CHECK(f >= 0);
    CHECK(area > 0.0);
    ++lines;
  }
  CHECK(lines == table.n_pieces());
}
