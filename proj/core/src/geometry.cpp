#include "fdfsi/geometry.hpp"

#include "fdfsi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace fdfsi {

namespace {

constexpr double kRelTol = 1e-14;

void bbox(const Triangle& t, Point2& lo, Point2& hi) {
  lo = t[0].cwiseMin(t[1]).cwiseMin(t[2]);
  hi = t[0].cwiseMax(t[1]).cwiseMax(t[2]);
}

Triangle ccw(const Triangle& t) { return signed_area(t) >= 0.0 ? t : Triangle{t[0], t[2], t[1]}; }

} // namespace

double ConvexPolygon::area() const {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) sum += cross(vertices[i] - vertices[0], vertices[i + 1] - vertices[0]);
  return 0.5 * sum;
}

ConvexPolygon clip_triangles(const Triangle& subject, const Triangle& clipper) {
  if (!(signed_area(subject) > 0.0) || !(signed_area(clipper) > 0.0))
    throw ArgumentError("clip_triangles: inputs must be positively oriented, non-degenerate triangles");

  const double tol = kRelTol * std::max(diameter(subject), diameter(clipper));
  std::vector<Point2> poly(subject.begin(), subject.end());
  std::vector<Point2> next;
  std::vector<double> dist;
  poly.reserve(9);
  next.reserve(9);

  for (int k = 0; k < 3 && !poly.empty(); ++k) {
    const Point2& a = clipper[k];
    const Point2 e = clipper[(k + 1) % 3] - a;
    const double len = e.norm();
    const std::size_t n = poly.size();
    dist.resize(n);
    for (std::size_t i = 0; i < n; ++i) dist[i] = cross(e, poly[i] - a) / len;

    next.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t prev = (i + n - 1) % n;
      const double dp = dist[prev];
      const double dq = dist[i];
      if (dq >= -tol) {
        if (dp < -tol && dq > tol) next.push_back(poly[prev] + (dp / (dp - dq)) * (poly[i] - poly[prev]));
        next.push_back(poly[i]);
      } else if (dp > tol) {
        next.push_back(poly[prev] + (dp / (dp - dq)) * (poly[i] - poly[prev]));
      }
    }
    poly.swap(next);
  }

  // Collapse consecutive near-duplicates, including the wrap-around pair.
  std::vector<Point2> out;
  out.reserve(poly.size());
  for (const Point2& p : poly)
    if (out.empty() || (p - out.back()).norm() > tol) out.push_back(p);
  while (out.size() > 1 && (out.front() - out.back()).norm() <= tol) out.pop_back();

  ConvexPolygon result;
  if (out.size() < 3) return result;
  result.vertices = std::move(out);
  if (!(result.area() > 0.0)) result.vertices.clear();
  return result;
}

std::vector<Triangle> fan_triangulate(const ConvexPolygon& poly) {
  std::vector<Triangle> tris;
  const auto& v = poly.vertices;
  if (v.size() < 3) return tris;
  tris.reserve(v.size() - 2);
  for (std::size_t i = 1; i + 1 < v.size(); ++i) tris.push_back({v[0], v[i], v[i + 1]});
  return tris;
}

BackgroundGrid::BackgroundGrid(const TriMesh& fluid, double cell_size) {
  if (fluid.n_triangles() == 0) throw ArgumentError("BackgroundGrid: empty fluid mesh");
  lo_ = hi_ = fluid.vertices.front();
  for (const Point2& p : fluid.vertices) {
    lo_ = lo_.cwiseMin(p);
    hi_ = hi_.cwiseMax(p);
  }
  if (cell_size <= 0.0) {
    double sum = 0.0;
    for (int t = 0; t < fluid.n_triangles(); ++t) sum += diameter(fluid.corners(t));
    cell_size = sum / fluid.n_triangles();
  }
  const Point2 ext = hi_ - lo_;
  nx_ = std::max(1, static_cast<int>(std::ceil(ext.x() / cell_size)));
  ny_ = std::max(1, static_cast<int>(std::ceil(ext.y() / cell_size)));
  dx_ = ext.x() / nx_;
  dy_ = ext.y() / ny_;
  buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});

  const double pad = 1e-10 * std::max(dx_, dy_);
  for (int t = 0; t < fluid.n_triangles(); ++t) {
    Point2 blo, bhi;
    bbox(fluid.corners(t), blo, bhi);
    const int ix0 = cell_x(blo.x() - pad), ix1 = cell_x(bhi.x() + pad);
    const int iy0 = cell_y(blo.y() - pad), iy1 = cell_y(bhi.y() + pad);
    for (int iy = iy0; iy <= iy1; ++iy)
      for (int ix = ix0; ix <= ix1; ++ix) buckets_[iy * nx_ + ix].push_back(t);
  }
}

int BackgroundGrid::cell_x(double x) const {
  return std::clamp(static_cast<int>(std::floor((x - lo_.x()) / dx_)), 0, nx_ - 1);
}

int BackgroundGrid::cell_y(double y) const {
  return std::clamp(static_cast<int>(std::floor((y - lo_.y()) / dy_)), 0, ny_ - 1);
}

std::vector<int> BackgroundGrid::candidates(const Point2& lo, const Point2& hi) const {
  std::vector<int> out;
  const int ix0 = cell_x(lo.x()), ix1 = cell_x(hi.x());
  const int iy0 = cell_y(lo.y()), iy1 = cell_y(hi.y());
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix) {
      const auto& b = buckets_[iy * nx_ + ix];
      out.insert(out.end(), b.begin(), b.end());
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> locate_point(const BackgroundGrid& grid, const TriMesh& fluid, const Point2& p) {
  const double scale = (grid.hi() - grid.lo()).norm();
  const double out_tol = 1e-12 * scale;
  if (p.x() < grid.lo().x() - out_tol || p.x() > grid.hi().x() + out_tol || p.y() < grid.lo().y() - out_tol ||
      p.y() > grid.hi().y() + out_tol)
    return std::nullopt;
  for (int t : grid.candidates(p, p)) {
    const auto b = barycentric(fluid.corners(t), p);
    if (b[0] >= -1e-12 && b[1] >= -1e-12 && b[2] >= -1e-12) return t;
  }
  return std::nullopt;
}

std::size_t IntersectionTable::n_pieces() const {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.size();
  return n;
}

double IntersectionTable::min_piece_area() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& e : entries)
    for (const auto& piece : e) m = std::min(m, piece.area);
  return m;
}

double IntersectionTable::min_relative_piece_area(std::span<const Triangle> mapped) const {
  double m = std::numeric_limits<double>::infinity();
  for (int s = 0; s < n_solid(); ++s) {
    const double a = std::abs(signed_area(mapped[s]));
    for (const auto& piece : entries[s]) m = std::min(m, piece.area / a);
  }
  return m;
}

std::vector<Triangle> map_elements(const TriMesh& solid, std::span<const Point2> mapped_positions) {
  if (static_cast<int>(mapped_positions.size()) != solid.n_vertices())
    throw ArgumentError("map_elements: one mapped position per solid vertex expected");
  std::vector<Triangle> out(solid.triangles.size());
  for (int t = 0; t < solid.n_triangles(); ++t) {
    const auto& tri = solid.triangles[t];
    out[t] = {mapped_positions[tri[0]], mapped_positions[tri[1]], mapped_positions[tri[2]]};
  }
  return out;
}

IntersectionTable build_intersection_table(std::span<const Triangle> mapped, const TriMesh& fluid_half,
                                           const BackgroundGrid& grid) {
  IntersectionTable table;
  const int ns = static_cast<int>(mapped.size());
  table.entries.resize(ns);
  table.total_mapped_area.assign(ns, 0.0);
  for (int s = 0; s < ns; ++s) {
    const Triangle ts = ccw(mapped[s]);
    const double full = signed_area(ts);
    if (!(full > 0.0)) throw GeometryError("mapped solid element " + std::to_string(s) + " is degenerate");
    Point2 lo, hi;
    bbox(ts, lo, hi);
    double sum = 0.0;
    for (int f : grid.candidates(lo, hi)) {
      const Triangle tf = fluid_half.corners(f);
      Point2 flo, fhi;
      bbox(tf, flo, fhi);
      if (flo.x() > hi.x() || fhi.x() < lo.x() || flo.y() > hi.y() || fhi.y() < lo.y()) continue;
      ConvexPolygon poly = clip_triangles(ts, tf);
      const double a = poly.area();
      if (poly.empty() || a < kDropRelativeArea * full) continue;
      IntersectionPiece piece;
      piece.fluid_element = f;
      piece.area = a;
      piece.sub_triangles = fan_triangulate(poly);
      piece.polygon = std::move(poly);
      table.entries[s].push_back(std::move(piece));
      sum += a;
    }
    table.total_mapped_area[s] = sum;
    if (full - sum > 1e-10 * full)
      throw GeometryError("mapped solid element " + std::to_string(s) + " leaves the fluid domain (covered " +
                          std::to_string(sum / full) + " of its area)");
  }
  return table;
}

void write_intersection_table(std::ostream& os, const IntersectionTable& table) {
  const auto old = os.precision(17);
  for (int s = 0; s < table.n_solid(); ++s) {
    for (const auto& piece : table.entries[s]) {
      os << s << ' ' << piece.fluid_element << ' ' << piece.area;
      for (const Point2& v : piece.polygon.vertices) os << ' ' << v.x() << ' ' << v.y();
      os << '\n';
    }
  }
  os.precision(old);
}

} // namespace fdfsi
