#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dec/dec_ode.hpp"

namespace dec {

struct ButcherTableau {
  Matrix A;
  Vector b;
  Vector c;
  int stages = 0;
  int order = 0;
  std::string variant;  // scheme label, e.g. "bDeCu5-eq"
  NodeFamily family = NodeFamily::Equispaced;
  /// Iteration that produced each stage; 0 for the initial state. A(i, j) is
  /// nonzero only when block[j] < block[i] or, for alpha != 0, within a block
  /// below the diagonal.
  std::vector<int> block;
};

/// Explicit RK form of a scheme with the Euler first iteration. Stage 0 is
/// u_n; the remaining stages are the subtimenode states whose right-hand side
/// the scheme evaluates, in evaluation order.
///
/// Throws UnsupportedExport for DeCu with alpha != 0 and for plans without the
/// Euler first iteration.
ButcherTableau build_tableau(const SchemePlan& plan);

/// Closed-form number of stages (equals the rhs evaluations per step).
int stage_count(Variant variant, bool alpha_zero, int order, NodeFamily family);

/// One explicit RK step.
Vector apply_tableau(const ButcherTableau& tab, const OdeSystem& sys, double t_n,
                     const Vector& u_n, double dt);

/// JSON object {order, variant, nodes, S, A, b, c}; A is a list of rows.
/// Numbers carry 17 significant digits.
void write_tableau_json(const ButcherTableau& tab, std::ostream& os);

}  // namespace dec
