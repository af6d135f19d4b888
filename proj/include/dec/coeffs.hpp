#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dec/linalg.hpp"

namespace dec {

enum class NodeFamily { Equispaced, GaussLobatto };

std::string to_string(NodeFamily family);
/// Accepts "eq"/"equispaced" and "gl"/"gauss-lobatto".
NodeFamily parse_node_family(std::string_view name);

/// Subtimenodes of one time step, normalized to [0, 1].
///
/// nodes.front() == 0, nodes.back() == 1, strictly increasing. M (the number
/// of subintervals) is nodes.size() - 1.
struct NodeSet {
  NodeFamily family = NodeFamily::Equispaced;
  std::vector<double> nodes;

  int M() const { return static_cast<int>(nodes.size()) - 1; }
  int size() const { return static_cast<int>(nodes.size()); }
};

/// M + 1 nodes of the requested family. Throws InvalidOrder for M < 1.
NodeSet make_nodes(NodeFamily family, int M);

/// Coefficients of the DeC operators on one node set.
///
///   theta(m, l) = int_0^{beta_m} psi_l,   delta(m, l) = int_{beta_{m-1}}^{beta_m} psi_l
///
/// with psi_l the Lagrange basis on the nodes. Row 0 of theta and delta is
/// zero. beta(m) = nodes[m], gamma(m) = nodes[m] - nodes[m-1], gamma(0) = 0.
struct DecCoefficients {
  NodeSet node_set;
  Matrix theta;
  Matrix delta;
  Vector beta;
  Vector gamma;

  /// Strictly lower triangular Gamma(m, l) = gamma(l + 1) for l < m.
  Matrix gamma_matrix() const;
};

DecCoefficients make_coefficients(const NodeSet& node_set);

/// H(i, j) = psi_j(to[i]) where psi_j is the Lagrange basis on `from`.
/// Throws SingularBasis when `from` contains repeated nodes.
Matrix make_interp_matrix(const NodeSet& from, const NodeSet& to);

/// Values of all Lagrange basis polynomials on `nodes` at x.
std::vector<double> lagrange_basis(const std::vector<double>& nodes, double x);

/// Derivatives of all Lagrange basis polynomials on `nodes` at x.
std::vector<double> lagrange_basis_derivative(const std::vector<double>& nodes, double x);

/// Gauss-Legendre rule with n points on [0, 1] (weights sum to 1).
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(int n);

/// Legendre polynomial P_n(x) and its derivative on [-1, 1].
std::pair<double, double> legendre(int n, double x);

}  // namespace dec
