#pragma once

#include "fdfsi/point.hpp"

#include <array>
#include <cmath>
#include <functional>

namespace fdfsi {

/// Forward-mode dual number with a two-component derivative, enough to
/// differentiate closed-form fields of (x, y).
struct Dual {
  double v = 0.0;
  std::array<double, 2> d{0.0, 0.0};

  Dual() = default;
  Dual(double value) : v(value) {}
  Dual(double value, double dx, double dy) : v(value), d{dx, dy} {}
};

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d[0] + b.d[0], a.d[1] + b.d[1]}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d[0] - b.d[0], a.d[1] - b.d[1]}; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d[0], -a.d[1]}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.d[0] * b.v + a.v * b.d[0], a.d[1] * b.v + a.v * b.d[1]};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  return {a.v * inv, (a.d[0] - a.v * inv * b.d[0]) * inv, (a.d[1] - a.v * inv * b.d[1]) * inv};
}
inline Dual operator+(const Dual& a, double b) { return {a.v + b, a.d[0], a.d[1]}; }
inline Dual operator+(double a, const Dual& b) { return b + a; }
inline Dual operator-(const Dual& a, double b) { return {a.v - b, a.d[0], a.d[1]}; }
inline Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d[0], -b.d[1]}; }
inline Dual operator*(const Dual& a, double b) { return {a.v * b, a.d[0] * b, a.d[1] * b}; }
inline Dual operator*(double a, const Dual& b) { return b * a; }
inline Dual operator/(const Dual& a, double b) { return a * (1.0 / b); }
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

namespace detail {
inline Dual chain(const Dual& a, double f, double df) { return {f, df * a.d[0], df * a.d[1]}; }
} // namespace detail

inline Dual sin(const Dual& a) { return detail::chain(a, std::sin(a.v), std::cos(a.v)); }
inline Dual cos(const Dual& a) { return detail::chain(a, std::cos(a.v), -std::sin(a.v)); }
inline Dual exp(const Dual& a) { return detail::chain(a, std::exp(a.v), std::exp(a.v)); }
inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return detail::chain(a, s, 0.5 / s);
}

/// Closed-form scalar field with its gradient.
struct ScalarField {
  std::function<double(const Point2&)> value;
  std::function<Point2(const Point2&)> gradient;
};

/// Closed-form vector field; jacobian(c, k) = d(component c)/dx_k.
struct VectorField {
  std::function<Point2(const Point2&)> value;
  std::function<Mat2(const Point2&)> jacobian;
};

/// Wrap a generic lambda `T f(T x, T y)` (instantiated for double and Dual).
template <class F>
ScalarField make_scalar_field(F f) {
  ScalarField s;
  s.value = [f](const Point2& p) { return static_cast<double>(f(p.x(), p.y())); };
  s.gradient = [f](const Point2& p) {
    const Dual r = f(Dual(p.x(), 1.0, 0.0), Dual(p.y(), 0.0, 1.0));
    return Point2(r.d[0], r.d[1]);
  };
  return s;
}

/// Wrap a generic lambda `std::array<T, 2> f(T x, T y)`.
template <class F>
VectorField make_vector_field(F f) {
  VectorField s;
  s.value = [f](const Point2& p) {
    const auto r = f(p.x(), p.y());
    return Point2(static_cast<double>(r[0]), static_cast<double>(r[1]));
  };
  s.jacobian = [f](const Point2& p) {
    const auto r = f(Dual(p.x(), 1.0, 0.0), Dual(p.y(), 0.0, 1.0));
    Mat2 j;
    j << r[0].d[0], r[0].d[1], r[1].d[0], r[1].d[1];
    return j;
  };
  return s;
}

} // namespace fdfsi
