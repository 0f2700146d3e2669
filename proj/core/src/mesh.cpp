#include "fdfsi/mesh.hpp"

#include "fdfsi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>

namespace fdfsi {

namespace {

using Edge = std::pair<int, int>;

Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

void orient_ccw(const std::vector<Point2>& v, std::array<int, 3>& tri) {
  if (signed_area(v[tri[0]], v[tri[1]], v[tri[2]]) < 0.0) std::swap(tri[1], tri[2]);
}

// Ring construction on the unit disk: vertex 0 is the center, ring k has 6k
// vertices at angles 2*pi*j/(6k). Returns polar coordinates (rho, theta).
struct PolarMesh {
  std::vector<std::pair<double, double>> polar;
  std::vector<std::array<int, 3>> triangles;
};

PolarMesh ring_disk(int n_rings) {
  PolarMesh pm;
  pm.polar.emplace_back(0.0, 0.0);
  std::vector<int> ring_start{0};
  for (int k = 1; k <= n_rings; ++k) {
    ring_start.push_back(static_cast<int>(pm.polar.size()));
    const int m = 6 * k;
    for (int j = 0; j < m; ++j) {
      pm.polar.emplace_back(static_cast<double>(k) / n_rings, 2.0 * std::numbers::pi * j / m);
    }
  }
  for (int k = 1; k <= n_rings; ++k) {
    const int outer = 6 * k;
    const int inner = 6 * (k - 1);
    const int o0 = ring_start[k];
    if (k == 1) {
      for (int j = 0; j < outer; ++j) pm.triangles.push_back({0, o0 + j, o0 + (j + 1) % outer});
      continue;
    }
    const int i0 = ring_start[k - 1];
    // Merge the two rings by angle. Angles are compared as exact fractions
    // i/inner versus j/outer.
    int i = 0, j = 0;
    while (i < inner || j < outer) {
      const bool advance_outer =
          i == inner || (j < outer && static_cast<long>(j + 1) * inner <= static_cast<long>(i + 1) * outer);
      if (advance_outer) {
        pm.triangles.push_back({i0 + i % inner, o0 + j % outer, o0 + (j + 1) % outer});
        ++j;
      } else {
        pm.triangles.push_back({i0 + i % inner, o0 + j % outer, i0 + (i + 1) % inner});
        ++i;
      }
    }
  }
  return pm;
}

TriMesh finish(TriMesh mesh) {
  for (auto& tri : mesh.triangles) orient_ccw(mesh.vertices, tri);
  mesh.boundary_vertex = boundary_flags(mesh);
  return mesh;
}

} // namespace

double TriMesh::total_area() const {
  double sum = 0.0;
  for (int t = 0; t < n_triangles(); ++t) sum += area(t);
  return sum;
}

void GeometryDescriptor::validate() const {
  switch (kind) {
  case GeometryKind::UnitSquareBox:
  case GeometryKind::SquareContainer4x4:
    return;
  case GeometryKind::Disk:
    if (!(radius > 0.0)) throw ArgumentError("disk radius must be positive");
    return;
  case GeometryKind::Flower:
    if (!(radius > 0.0)) throw ArgumentError("flower inscribed radius must be positive");
    if (!(amplitude >= 0.0 && amplitude < 1.0)) throw ArgumentError("flower amplitude must lie in [0,1)");
    if (petals < 3) throw ArgumentError("flower needs at least 3 petals");
    return;
  case GeometryKind::Annulus:
    if (!(r_inner > 0.0)) throw ArgumentError("annulus inner radius must be positive");
    if (!(r_inner < r_outer)) throw ArgumentError("annulus inner radius must be below outer radius");
    return;
  }
}

double GeometryDescriptor::area() const {
  const double pi = std::numbers::pi;
  switch (kind) {
  case GeometryKind::UnitSquareBox:
    return 1.0;
  case GeometryKind::SquareContainer4x4:
    return 16.0;
  case GeometryKind::Disk:
    return pi * radius * radius;
  case GeometryKind::Flower: {
    // (1/2) int_0^{2pi} r(theta)^2 with r = r0 (1 + a/2 + (a/2) cos(p theta))
    const double c = 1.0 + 0.5 * amplitude;
    const double b = 0.5 * amplitude;
    return 0.5 * radius * radius * 2.0 * pi * (c * c + 0.5 * b * b);
  }
  case GeometryKind::Annulus:
    return pi * (r_outer * r_outer - r_inner * r_inner);
  }
  return 0.0;
}

double GeometryDescriptor::level_set(const Point2& x) const {
  const Point2 d = x - center;
  const double r = d.norm();
  switch (kind) {
  case GeometryKind::UnitSquareBox:
    return std::max(std::abs(x.x() - 0.5), std::abs(x.y() - 0.5)) - 0.5;
  case GeometryKind::SquareContainer4x4:
    return std::max(std::abs(x.x()), std::abs(x.y())) - 2.0;
  case GeometryKind::Disk:
    return r - radius;
  case GeometryKind::Flower: {
    const double theta = std::atan2(d.y(), d.x());
    return r - radius * (1.0 + amplitude * 0.5 * (1.0 + std::cos(petals * theta)));
  }
  case GeometryKind::Annulus:
    return std::max(r_inner - r, r - r_outer);
  }
  return 0.0;
}

TriMesh build_structured_square(int n, const Point2& lo, const Point2& hi) {
  if (n < 1) throw ArgumentError("build_structured_square: N must be >= 1");
  if (!(hi.x() > lo.x() && hi.y() > lo.y()))
    throw ArgumentError("build_structured_square: hi must dominate lo componentwise");
  TriMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(n + 1) * (n + 1));
  const double dx = (hi.x() - lo.x()) / n;
  const double dy = (hi.y() - lo.y()) / n;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      // Pin the last row/column to hi exactly.
      const double x = i == n ? hi.x() : lo.x() + i * dx;
      const double y = j == n ? hi.y() : lo.y() + j * dy;
      mesh.vertices.emplace_back(x, y);
    }
  }
  auto id = [n](int i, int j) { return j * (n + 1) + i; };
  mesh.triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      mesh.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  }
  mesh.boundary_vertex.resize(mesh.vertices.size());
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      mesh.boundary_vertex[id(i, j)] = (i == 0 || j == 0 || i == n || j == n) ? 1 : 0;
  return mesh;
}

TriMesh refine_midpoint(const TriMesh& mesh) {
  TriMesh out;
  out.vertices = mesh.vertices;
  std::map<Edge, int> midpoint;
  auto mid = [&](int a, int b) {
    const Edge e = make_edge(a, b);
    auto it = midpoint.find(e);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(out.vertices.size());
    out.vertices.push_back(0.5 * (mesh.vertices[a] + mesh.vertices[b]));
    midpoint.emplace(e, id);
    return id;
  };
  out.triangles.reserve(4 * mesh.triangles.size());
  out.parent_triangle.reserve(4 * mesh.triangles.size());
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const auto [a, b, c] = mesh.triangles[t];
    const int ab = mid(a, b);
    const int bc = mid(b, c);
    const int ca = mid(c, a);
    out.triangles.push_back({a, ab, ca});
    out.triangles.push_back({ab, b, bc});
    out.triangles.push_back({ca, bc, c});
    out.triangles.push_back({ab, bc, ca});
    for (int k = 0; k < 4; ++k) out.parent_triangle.push_back(t);
  }
  out.boundary_vertex = boundary_flags(out);
  return out;
}

TriMesh build_flower_mesh(const Point2& center, double r0, double amplitude, int petals, int level) {
  GeometryDescriptor g{GeometryKind::Flower, center, r0, 0.0, 0.0, amplitude, petals};
  g.validate();
  if (level < 0) throw ArgumentError("build_flower_mesh: level must be >= 0");
  auto radius = [&](double theta) { return r0 * (1.0 + amplitude * 0.5 * (1.0 + std::cos(petals * theta))); };
  // Angles are redistributed so that equal steps of the ring parameter cover
  // equal boundary arc length; petal tips would otherwise get elements 1 + a
  // times wider than the valleys.
  const int n_table = 8192;
  std::vector<double> arc(n_table + 1, 0.0);
  for (int k = 0; k < n_table; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / n_table;
    const double dr = -r0 * amplitude * 0.5 * petals * std::sin(petals * t);
    arc[k + 1] = arc[k] + std::hypot(radius(t), dr);
  }
  auto angle_at = [&](double phi) {
    const double target = phi / (2.0 * std::numbers::pi) * arc[n_table];
    const auto it = std::upper_bound(arc.begin(), arc.end(), target);
    const int k = std::clamp(static_cast<int>(it - arc.begin()) - 1, 0, n_table - 1);
    const double f = (target - arc[k]) / (arc[k + 1] - arc[k]);
    return 2.0 * std::numbers::pi * (k + f) / n_table;
  };
  const PolarMesh pm = ring_disk(2 << level);
  TriMesh mesh;
  mesh.vertices.reserve(pm.polar.size());
  for (const auto& [rho, phi] : pm.polar) {
    const double theta = angle_at(phi);
    const double r = radius(theta);
    mesh.vertices.emplace_back(center.x() + rho * r * std::cos(theta), center.y() + rho * r * std::sin(theta));
  }
  mesh.triangles = pm.triangles;
  return finish(std::move(mesh));
}

TriMesh build_disk_mesh(const Point2& center, double radius, int level) {
  if (!(radius > 0.0)) throw ArgumentError("build_disk_mesh: radius must be positive");
  if (level < 0) throw ArgumentError("build_disk_mesh: level must be >= 0");
  const PolarMesh pm = ring_disk(2 << level);
  TriMesh mesh;
  mesh.vertices.reserve(pm.polar.size());
  for (const auto& [rho, theta] : pm.polar)
    mesh.vertices.emplace_back(center.x() + rho * radius * std::cos(theta),
                               center.y() + rho * radius * std::sin(theta));
  mesh.triangles = pm.triangles;
  return finish(std::move(mesh));
}

TriMesh build_annulus_mesh(const Point2& center, double r_in, double r_out, int n_angular, int n_radial) {
  if (!(r_in > 0.0) || !(r_in < r_out)) throw ArgumentError("build_annulus_mesh: need 0 < r_in < r_out");
  if (n_angular < 3 || n_radial < 1) throw ArgumentError("build_annulus_mesh: invalid cell counts");
  TriMesh mesh;
  for (int k = 0; k <= n_radial; ++k) {
    const double r = k == n_radial ? r_out : r_in + (r_out - r_in) * k / n_radial;
    for (int i = 0; i < n_angular; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / n_angular;
      mesh.vertices.emplace_back(center.x() + r * std::cos(theta), center.y() + r * std::sin(theta));
    }
  }
  auto id = [n_angular](int i, int k) { return k * n_angular + (i % n_angular); };
  for (int k = 0; k < n_radial; ++k) {
    for (int i = 0; i < n_angular; ++i) {
      mesh.triangles.push_back({id(i, k), id(i + 1, k), id(i + 1, k + 1)});
      mesh.triangles.push_back({id(i, k), id(i + 1, k + 1), id(i, k + 1)});
    }
  }
  return finish(std::move(mesh));
}

TriMesh build_annulus_mesh(const Point2& center, double r_in, double r_out, int level) {
  if (level < 0) throw ArgumentError("build_annulus_mesh: level must be >= 0");
  return build_annulus_mesh(center, r_in, r_out, 16 << level, 2 << level);
}

TriMesh build_mesh(const GeometryDescriptor& g, int level) {
  g.validate();
  switch (g.kind) {
  case GeometryKind::UnitSquareBox:
    return build_structured_square(4 << level, Point2(0.0, 0.0), Point2(1.0, 1.0));
  case GeometryKind::SquareContainer4x4:
    return build_structured_square(4 << level, Point2(-2.0, -2.0), Point2(2.0, 2.0));
  case GeometryKind::Disk:
    return build_disk_mesh(g.center, g.radius, level);
  case GeometryKind::Flower:
    return build_flower_mesh(g.center, g.radius, g.amplitude, g.petals, level);
  case GeometryKind::Annulus:
    return build_annulus_mesh(g.center, g.r_inner, g.r_outer, level);
  }
  throw ArgumentError("build_mesh: unknown geometry kind");
}

MeshSize mesh_size(const TriMesh& mesh) {
  MeshSize s{0.0, std::numeric_limits<double>::infinity()};
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    const double d = diameter(mesh.corners(t));
    s.h_max = std::max(s.h_max, d);
    s.h_min = std::min(s.h_min, d);
  }
  return s;
}

std::vector<std::uint8_t> boundary_flags(const TriMesh& mesh) {
  std::map<Edge, int> count;
  for (const auto& tri : mesh.triangles)
    for (int k = 0; k < 3; ++k) ++count[make_edge(tri[k], tri[(k + 1) % 3])];
  std::vector<std::uint8_t> flags(mesh.vertices.size(), 0);
  for (const auto& [e, c] : count) {
    if (c == 1) {
      flags[e.first] = 1;
      flags[e.second] = 1;
    }
  }
  return flags;
}

void validate(const TriMesh& mesh) {
  const int nv = mesh.n_vertices();
  if (mesh.boundary_vertex.size() != mesh.vertices.size())
    throw ArgumentError("mesh: boundary flag count differs from vertex count");
  for (int t = 0; t < mesh.n_triangles(); ++t) {
    for (int v : mesh.triangles[t])
      if (v < 0 || v >= nv) throw ArgumentError("mesh: triangle " + std::to_string(t) + " has a bad vertex index");
    if (!(mesh.area(t) > 0.0))
      throw ArgumentError("mesh: triangle " + std::to_string(t) + " is not positively oriented");
  }
}

void write_mesh(std::ostream& os, const TriMesh& mesh) {
  const auto old = os.precision(17);
  os << mesh.n_vertices() << ' ' << mesh.n_triangles() << '\n';
  for (int v = 0; v < mesh.n_vertices(); ++v)
    os << mesh.vertices[v].x() << ' ' << mesh.vertices[v].y() << ' ' << int(mesh.boundary_vertex[v]) << '\n';
  for (const auto& tri : mesh.triangles) os << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
  os.precision(old);
}

TriMesh read_mesh(std::istream& is) {
  int nv = 0, nt = 0;
  if (!(is >> nv >> nt) || nv < 0 || nt < 0) throw ArgumentError("read_mesh: bad header");
  TriMesh mesh;
  mesh.vertices.resize(nv);
  mesh.boundary_vertex.resize(nv);
  mesh.triangles.resize(nt);
  for (int v = 0; v < nv; ++v) {
    int flag = 0;
    if (!(is >> mesh.vertices[v].x() >> mesh.vertices[v].y() >> flag)) throw ArgumentError("read_mesh: truncated vertices");
    mesh.boundary_vertex[v] = flag ? 1 : 0;
  }
  for (auto& tri : mesh.triangles)
    if (!(is >> tri[0] >> tri[1] >> tri[2])) throw ArgumentError("read_mesh: truncated triangles");
  validate(mesh);
  return mesh;
}

} // namespace fdfsi
