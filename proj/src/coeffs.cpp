#include "dec/coeffs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dec/errors.hpp"

namespace dec {

std::string to_string(NodeFamily family) {
  return family == NodeFamily::Equispaced ? "eq" : "gl";
}

NodeFamily parse_node_family(std::string_view name) {
  if (name == "eq" || name == "equispaced") return NodeFamily::Equispaced;
  if (name == "gl" || name == "gauss-lobatto" || name == "gausslobatto") {
    return NodeFamily::GaussLobatto;
  }
  throw std::invalid_argument("unknown node family '" + std::string(name) + "'");
}

std::pair<double, double> legendre(int n, double x) {
  if (n == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0);
    p_prev = p;
    p = next;
  }
  double dp;
  if (std::abs(x) == 1.0) {
    dp = (x > 0 || n % 2 == 1 ? 1.0 : -1.0) * 0.5 * n * (n + 1.0);
  } else {
    dp = n * (x * p - p_prev) / (x * x - 1.0);
  }
  return {p, dp};
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw InvalidOrder("Gauss-Legendre rule needs at least one point");
  QuadratureRule rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const auto [p, dp] = legendre(n, x);
    (void)p;
    const double w = 1.0 / ((1.0 - x * x) * dp * dp);  // already halved for [0, 1]
    // x is in (0, 1] on [-1, 1]; store ascending on [0, 1]
    rule.points[i] = 0.5 * (1.0 - x);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.points[n / 2] = 0.5;
  return rule;
}

namespace {

// Interior roots of P'_M on [-1, 1], by Newton with the Legendre ODE
// supplying P''_M. Returned descending, seeded by Chebyshev-Gauss-Lobatto points.
std::vector<double> legendre_derivative_roots(int M) {
  std::vector<double> roots;
  for (int j = 1; j < M; ++j) {
    double x = std::cos(std::numbers::pi * j / M);
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(M, x);
      const double d2p = (2.0 * x * dp - M * (M + 1.0) * p) / (1.0 - x * x);
      const double dx = dp / d2p;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    roots.push_back(x);
  }
  return roots;
}

}  // namespace

NodeSet make_nodes(NodeFamily family, int M) {
  if (M < 1) throw InvalidOrder("node set needs M >= 1, got " + std::to_string(M));
  NodeSet set;
  set.family = family;
  set.nodes.resize(M + 1);
  if (family == NodeFamily::Equispaced) {
    for (int m = 0; m <= M; ++m) set.nodes[m] = static_cast<double>(m) / M;
    return set;
  }
  const auto roots = legendre_derivative_roots(M);
  set.nodes[0] = 0.0;
  set.nodes[M] = 1.0;
  for (int j = 1; j < M; ++j) set.nodes[j] = 0.5 * (1.0 - roots[j - 1]);
  // enforce exact symmetry about 1/2
  for (int j = 1; 2 * j < M; ++j) {
    const double lo = 0.5 * (set.nodes[j] + (1.0 - set.nodes[M - j]));
    set.nodes[j] = lo;
    set.nodes[M - j] = 1.0 - lo;
  }
  if (M % 2 == 0) set.nodes[M / 2] = 0.5;
  return set;
}

std::vector<double> lagrange_basis(const std::vector<double>& nodes, double x) {
  const std::size_t n = nodes.size();
  std::vector<double> values(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) values[j] *= (x - nodes[k]) / (nodes[j] - nodes[k]);
    }
  }
  return values;
}

std::vector<double> lagrange_basis_derivative(const std::vector<double>& nodes, double x) {
  const std::size_t n = nodes.size();
  std::vector<double> values(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      double term = 1.0 / (nodes[j] - nodes[k]);
      for (std::size_t m = 0; m < n; ++m) {
        if (m != j && m != k) term *= (x - nodes[m]) / (nodes[j] - nodes[m]);
      }
      values[j] += term;
    }
  }
  return values;
}

namespace {

// Exact integral of every Lagrange basis polynomial over [a, b].
std::vector<double> integrate_basis(const std::vector<double>& nodes, const QuadratureRule& rule,
                                    double a, double b) {
  std::vector<double> out(nodes.size(), 0.0);
  const double len = b - a;
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const auto psi = lagrange_basis(nodes, a + len * rule.points[q]);
    for (std::size_t l = 0; l < nodes.size(); ++l) out[l] += len * rule.weights[q] * psi[l];
  }
  return out;
}

}  // namespace

DecCoefficients make_coefficients(const NodeSet& node_set) {
  const int M = node_set.M();
  if (M < 1) throw InvalidOrder("coefficients need at least two nodes");
  DecCoefficients c;
  c.node_set = node_set;
  c.theta = Matrix::Zero(M + 1, M + 1);
  c.delta = Matrix::Zero(M + 1, M + 1);
  c.beta = Vector::Zero(M + 1);
  c.gamma = Vector::Zero(M + 1);

  // integrands have degree M; M + 1 points integrate degree 2M + 1 exactly
  const QuadratureRule rule = gauss_legendre(M + 1);
  const auto& t = node_set.nodes;
  for (int m = 0; m <= M; ++m) {
    c.beta(m) = t[m];
    if (m == 0) continue;
    c.gamma(m) = t[m] - t[m - 1];
    const auto big = integrate_basis(t, rule, 0.0, t[m]);
    const auto small = integrate_basis(t, rule, t[m - 1], t[m]);
    for (int l = 0; l <= M; ++l) {
      c.theta(m, l) = big[l];
      c.delta(m, l) = small[l];
    }
  }
  return c;
}

Matrix DecCoefficients::gamma_matrix() const {
  const int n = static_cast<int>(gamma.size());
  Matrix g = Matrix::Zero(n, n);
  for (int m = 1; m < n; ++m) {
    for (int l = 0; l < m; ++l) g(m, l) = gamma(l + 1);
  }
  return g;
}

Matrix make_interp_matrix(const NodeSet& from, const NodeSet& to) {
  const auto& x = from.nodes;
  if (x.size() < 2) throw InvalidOrder("interpolation needs at least two source nodes");
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] == x[j]) throw SingularBasis("repeated node in interpolation source");
    }
  }
  Matrix h(to.size(), from.size());
  for (int i = 0; i < to.size(); ++i) {
    const auto psi = lagrange_basis(x, to.nodes[i]);
    for (int j = 0; j < from.size(); ++j) h(i, j) = psi[j];
  }
  return h;
}

}  // namespace dec
