#pragma once

#include <stdexcept>
#include <string>

namespace fdfsi {

/// Invalid arguments or violated preconditions.
class ArgumentError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A mapped solid element or quadrature point left the fluid domain.
class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Cached data (e.g. an intersection table) no longer matches its inputs.
class ConsistencyError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Sparse factorization failed. For this formulation that always means an
/// assembly bug: the discrete problem is uniformly well posed.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Extremal singular value iteration did not converge. Carries the best
/// bounds seen so far.
class EstimateError : public std::runtime_error {
public:
  EstimateError(const std::string& what, double sigma_max, double sigma_min)
      : std::runtime_error(what), sigma_max(sigma_max), sigma_min(sigma_min) {}
  double sigma_max;
  double sigma_min;
};

} // namespace fdfsi
