#pragma once

#include <stdexcept>
#include <string>

namespace dec {

/// Order, node count or iteration count outside the supported range.
class InvalidOrder : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Interpolation requested on a node set with repeated abscissae.
class SingularBasis : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical or numerical parameters that violate a documented precondition.
class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scheme/variant combination that has no reduced Butcher tableau.
class UnsupportedExport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tableau whose A matrix is not strictly lower triangular.
class NonExplicitTableau : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite element basis whose lumped masses are not all positive.
class LumpingInvalid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A right-hand side (or state) evaluation produced a non-finite value.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(double t, int iteration, int node, const std::string& what)
      : std::runtime_error(what + " (t=" + std::to_string(t) +
                           ", iteration=" + std::to_string(iteration) +
                           ", node=" + std::to_string(node) + ")"),
        t_(t),
        iteration_(iteration),
        node_(node) {}

  double t() const noexcept { return t_; }
  int iteration() const noexcept { return iteration_; }
  int node() const noexcept { return node_; }

 private:
  double t_;
  int iteration_;
  int node_;
};

}  // namespace dec
