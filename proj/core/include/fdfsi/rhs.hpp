#pragma once

#include "fdfsi/cases.hpp"

namespace fdfsi {

/// Full-length (Dirichlet dofs included) load vectors of the velocity,
/// deformation and multiplier rows. The pressure rows are zero.
struct BlockRhs {
  FieldVector f;
  FieldVector g;
  FieldVector d;
};

/// Variational loads from the closed-form solution:
///   f(v) = a_f(u, v) - (div v, p) + c(lambda, v(X̄))
///   g(Y) = a_s(X, Y) - c(lambda, Y)
///   d(mu) = c(mu, X - u(X̄))
/// Degree-6 quadrature throughout; the c(lambda, v(X̄)) term is integrated on
/// the cut cells of `geo`, and elements crossed by a pressure jump are
/// subdivided before integrating p.
BlockRhs assemble_rhs(const ManufacturedCase& c, const Discretization& d, const CouplingGeometry& geo,
                      CouplingKind kind);

/// Integral of f over a triangle with the degree-6 rule, after `depth`
/// uniform subdivisions.
double integrate(const Triangle& t, const std::function<double(const Point2&)>& f, int depth = 0);

/// Subdivision depth used for elements that a discontinuity may cross.
inline constexpr int kInterfaceDepth = 4;

/// True when `level_set` may change sign inside t (checked at the vertices,
/// with a margin of one diameter around the centroid).
bool crosses(const Triangle& t, const std::function<double(const Point2&)>& level_set);

/// Nodal values of u on constrained velocity dofs, zero elsewhere.
FieldVector dirichlet_values(const VectorField& u, const DofMap& u_map, const TriMesh& fluid_half);

} // namespace fdfsi
