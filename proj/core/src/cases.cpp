#include "fdfsi/cases.hpp"

#include "fdfsi/errors.hpp"

#include <cmath>
#include <numbers>

namespace fdfsi {

namespace {

constexpr double kPi = std::numbers::pi;
// Si(1) = int_0^1 sin(t)/t dt = mean of cos(xy) over the unit square.
constexpr double kSi1 = 0.94608307036718301494;

GeometryDescriptor unit_square() { return {GeometryKind::UnitSquareBox}; }

VectorField identity_map() {
  return make_vector_field([](auto x, auto y) { return std::array<decltype(x), 2>{x, y}; });
}

// Stream-function velocity vanishing on the boundary of the unit square.
VectorField box_velocity() {
  return make_vector_field([](auto x, auto y) {
    using T = decltype(x);
    return std::array<T, 2>{2.0 * x * x * y * (x - 1.0) * (x - 1.0) * (y - 1.0) * (2.0 * y - 1.0),
                            -2.0 * x * y * y * (x - 1.0) * (2.0 * x - 1.0) * (y - 1.0) * (y - 1.0)};
  });
}

VectorField trig_multiplier() {
  return make_vector_field([](auto s1, auto s2) {
    using std::cos;
    using std::sin;
    return std::array<decltype(s1), 2>{s2 * sin(s1), s2 * cos(s1)};
  });
}

VectorField exp_multiplier() {
  return make_vector_field([](auto s1, auto s2) {
    using std::exp;
    return std::array<decltype(s1), 2>{exp(s1), exp(s2)};
  });
}

} // namespace

ManufacturedCase shifted_square_case(double sigma) {
  ManufacturedCase c;
  c.name = "shifted-square";
  c.fluid = {GeometryKind::SquareContainer4x4, Point2(0.0, 0.0)};
  c.solid = unit_square();
  c.map = make_vector_field([sigma](auto s1, auto s2) {
    return std::array<decltype(s1), 2>{2.0 * s1 - 1.0 + sigma, 2.0 * s2 - 1.0};
  });
  // u = curl of (4 - x^2)^2 (4 - y^2)^2
  auto velocity = [](auto x, auto y) {
    using T = decltype(x);
    const T a = 4.0 - x * x;
    const T b = 4.0 - y * y;
    return std::array<T, 2>{-4.0 * y * a * a * b, 4.0 * x * a * b * b};
  };
  c.u = make_vector_field(velocity);
  c.p = [](const Point2& x) { return 150.0 * std::sin(x.x()); };
  c.X = make_vector_field(velocity);
  c.lambda = exp_multiplier();
  c.params = {0.0, 0.0, 1.0, 1.0};
  c.structured_solid = true;
  c.notes = "solid square [-1+sigma,1+sigma]x[-1,1] in [-2,2]^2";
  return c;
}

ManufacturedCase disk_case() {
  ManufacturedCase c;
  c.name = "disk";
  c.fluid = unit_square();
  c.solid = {GeometryKind::Disk, Point2(0.5, 0.5), 0.2};
  c.map = identity_map();
  c.u = box_velocity();
  const double area_s = kPi * 0.04;
  const double area_f = 1.0 - area_s;
  const double outside = -area_s / (2.0 * area_f);
  c.p = [outside](const Point2& x) {
    const double base = std::sin(kPi * x.x()) * std::sin(kPi * x.y()) - 4.0 / (kPi * kPi);
    return (x - Point2(0.5, 0.5)).norm() < 0.2 ? base + 0.5 : base + outside;
  };
  c.pressure_interface = [](const Point2& x) { return (x - Point2(0.5, 0.5)).norm() - 0.2; };
  c.X = make_vector_field([](auto s1, auto s2) {
    using T = decltype(s1);
    return std::array<T, 2>{s1 * s1 * s1 * s1 - 2.0 * s1 * s1 * s1 + s1 * s1,
                            -2.0 * s2 * s2 * s2 + 3.0 * s2 * s2 - s2};
  });
  c.lambda = trig_multiplier();
  c.params = {0.0, 0.0, 1.0, 1.0};
  c.notes = "pressure jumps across the solid boundary";
  return c;
}

ManufacturedCase flower_case() {
  ManufacturedCase c;
  c.name = "flower";
  c.fluid = unit_square();
  c.solid = {GeometryKind::Flower, Point2(0.5, 0.5), 0.25, 0.0, 0.0, 0.6, 5};
  c.map = identity_map();
  auto velocity = [](auto x, auto y) {
    using std::sin;
    using T = decltype(x);
    return std::array<T, 2>{-1.0 * x * sin(x * y), y * sin(x * y)};
  };
  c.u = make_vector_field(velocity);
  c.p = [](const Point2& x) { return std::cos(x.x() * x.y()) - kSi1; };
  c.X = make_vector_field(velocity);
  c.lambda = trig_multiplier();
  c.params = {0.0, 0.0, 1.0, 1.0};
  c.notes = "velocity does not vanish on the container boundary";
  return c;
}

ManufacturedCase annulus_case() {
  ManufacturedCase c;
  c.name = "stretched-annulus";
  c.fluid = unit_square();
  c.solid = {GeometryKind::Annulus, Point2(0.5, 0.5), 0.0, 0.125, 0.25};
  const double r = std::numbers::sqrt2 / 2.0;
  // Rotation by -45 degrees; the image of the annulus is centred at (0.357, 0.5).
  c.map = make_vector_field([r](auto s1, auto s2) {
    return std::array<decltype(s1), 2>{r * (s1 + s2) - 0.35, r * (s2 - s1) + 0.5};
  });
  c.u = box_velocity();
  c.p = [](const Point2& x) { return x.x() * (x.x() - 1.0) * (x.y() - 1.0) - 1.0 / 12.0; };
  c.X = make_vector_field([](auto s1, auto s2) {
    using std::sin;
    using T = decltype(s1);
    return std::array<T, 2>{-1.0 * s1 * sin(s1 * s2), s2 * sin(s1 * s2)};
  });
  c.lambda = exp_multiplier();
  c.params = {100.0, 200.0, 0.03, 1.0};
  c.notes = "rigid rotation plus translation of the reference annulus";
  return c;
}

std::vector<ManufacturedCase> registry() {
  return {shifted_square_case(0.0), disk_case(), flower_case(), annulus_case()};
}

ManufacturedCase find_case(const std::string& name) {
  for (auto& c : registry())
    if (c.name == name) return c;
  if (name == "square") return shifted_square_case(0.0);
  if (name == "annulus") return annulus_case();
  throw ArgumentError("unknown case '" + name + "'");
}

std::vector<Point2> Discretization::mapped_vertices(const ManufacturedCase& c) const {
  std::vector<Point2> out(solid.vertices.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = c.map.value(solid.vertices[v]);
  return out;
}

Discretization discretize(const ManufacturedCase& c, int level) {
  if (level < 1) throw ArgumentError("discretize: level must be >= 1");
  Discretization d;
  d.level = level;
  d.fluid_coarse = build_mesh(c.fluid, level);
  d.fluid_half = refine_midpoint(d.fluid_coarse);
  if (c.structured_solid) {
    // The fluid grid has 4 << level cells; its refinement has twice that.
    const int n = 2 << level;
    d.solid = refine_midpoint(build_structured_square(n, Point2(0.0, 0.0), Point2(1.0, 1.0)));
    d.solid.parent_triangle.clear();
  } else {
    d.solid = build_mesh(c.solid, level - 1);
  }
  d.u_map = build_dof_map(d.fluid_half, FieldKind::Velocity);
  d.p_map = build_dof_map(d.fluid_coarse, FieldKind::Pressure);
  d.X_map = build_dof_map(d.solid, FieldKind::Deformation);
  d.l_map = build_dof_map(d.solid, FieldKind::Multiplier);
  d.h = mesh_size(d.fluid_coarse).h_max;
  d.h_solid = mesh_size(d.solid).h_max;
  return d;
}

} // namespace fdfsi
