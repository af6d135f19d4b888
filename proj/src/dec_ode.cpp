#include "dec/dec_ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dec/errors.hpp"

namespace dec {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::AlphaDec:
      return "DeC";
    case Variant::AlphaDecU:
      return "DeCu";
    case Variant::AlphaDecDu:
      return "DeCdu";
  }
  return "?";
}

std::vector<int> SchemePlan::node_counts() const {
  std::vector<int> counts;
  for (const auto& it : iterations) counts.push_back(it.node_count());
  return counts;
}

std::vector<int> SchemePlan::interpolation_schedule() const {
  std::vector<int> out;
  for (const auto& it : iterations) {
    if (it.interpolate_before) out.push_back(it.index);
  }
  return out;
}

std::string SchemePlan::name() const {
  std::ostringstream os;
  if (alpha == 0.0) {
    os << 'b';
  } else if (alpha == 1.0) {
    os << 's';
  } else {
    os << "a(" << alpha << ")";
  }
  os << to_string(variant) << order << '-' << to_string(node_family);
  return os.str();
}

int optimal_subintervals(NodeFamily family, int order) {
  if (order < 2) throw InvalidOrder("order must be >= 2, got " + std::to_string(order));
  return family == NodeFamily::Equispaced ? order - 1 : (order + 1) / 2;
}

namespace {

IterationPlan make_iteration(int index, const NodeSet& nodes, double alpha) {
  IterationPlan it;
  it.index = index;
  it.coeffs = make_coefficients(nodes);
  const Matrix gamma = it.coeffs.gamma_matrix();
  it.explicit_part = it.coeffs.theta - alpha * gamma;
  it.implicit_part = alpha * gamma;
  return it;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidParameters("alpha must lie in [0, 1]");
  }
}

// Node count per iteration -> full plan with interpolation wherever the count grows.
SchemePlan build_plan(Variant variant, double alpha, int order, NodeFamily family, int M,
                      bool euler_first, const std::vector<int>& counts) {
  SchemePlan plan;
  plan.variant = variant;
  plan.alpha = alpha;
  plan.order = order;
  plan.node_family = family;
  plan.M = M;
  plan.euler_first_iteration = euler_first;
  std::vector<NodeSet> sets;
  for (int k = 2; k <= *std::max_element(counts.begin(), counts.end()); ++k) {
    sets.push_back(make_nodes(family, k - 1));
  }
  for (std::size_t p = 0; p < counts.size(); ++p) {
    const NodeSet& nodes = sets[counts[p] - 2];
    IterationPlan it = make_iteration(static_cast<int>(p) + 1, nodes, alpha);
    if (p > 0 && counts[p] != counts[p - 1]) {
      it.interpolate_before = true;
      it.interp = make_interp_matrix(sets[counts[p - 1] - 2], nodes);
    }
    plan.iterations.push_back(std::move(it));
  }
  return plan;
}

}  // namespace

SchemePlan plan_scheme(Variant variant, double alpha, int order, NodeFamily family,
                       bool euler_first_iteration) {
  check_alpha(alpha);
  const int M = optimal_subintervals(family, order);
  std::vector<int> counts(order);
  for (int p = 1; p <= order; ++p) {
    counts[p - 1] = variant == Variant::AlphaDec ? M + 1 : std::min(p, M) + 1;
  }
  return build_plan(variant, alpha, order, family, M, euler_first_iteration, counts);
}

SchemePlan plan_growing(Variant variant, double alpha, NodeFamily family, int iterations,
                        bool euler_first_iteration) {
  check_alpha(alpha);
  if (iterations < 2) throw InvalidOrder("growing plan needs at least two iterations");
  if (variant == Variant::AlphaDec) {
    throw InvalidParameters("node growth needs the DeCu or DeCdu variant");
  }
  std::vector<int> counts(iterations);
  for (int p = 1; p <= iterations; ++p) counts[p - 1] = std::min(p, iterations - 1) + 1;
  return build_plan(variant, alpha, iterations, family, iterations - 1, euler_first_iteration,
                    counts);
}

// ---------------------------------------------------------------------------

IterationEngine::IterationEngine(const OdeSystem& sys, Variant variant, double alpha,
                                 bool euler_first_iteration, double t_n, const Vector& u_n,
                                 double dt)
    : sys_(sys),
      variant_(variant),
      alpha_(alpha),
      euler_first_(euler_first_iteration),
      t_n_(t_n),
      dt_(dt),
      u0_(u_n) {
  if (!(dt > 0.0)) throw InvalidParameters("dt must be positive");
  if (u_n.size() != sys.dimension) throw InvalidParameters("state has the wrong dimension");
  g0_ = sys_.rhs(t_n_, u0_);
  ++evaluations_;
  if (!g0_.allFinite()) throw NumericalFailure(t_n_, 0, 0, "non-finite right-hand side");
}

IterationEngine::NodeState IterationEngine::fresh_state(const std::vector<double>& nodes,
                                                        const Matrix& U) const {
  NodeState s;
  s.nodes = nodes;
  s.U = U;
  s.G = Matrix::Zero(U.rows(), U.cols());
  s.G.row(0) = g0_.transpose();
  s.has_g.assign(nodes.size(), 0);
  s.has_g[0] = 1;
  return s;
}

void IterationEngine::evaluate(NodeState& s, int row) {
  if (s.has_g[row]) return;
  const double t = t_n_ + dt_ * s.nodes[row];
  Vector g = sys_.rhs(t, s.U.row(row).transpose());
  ++evaluations_;
  if (!g.allFinite()) throw NumericalFailure(t, iteration_, row, "non-finite right-hand side");
  s.G.row(row) = g.transpose();
  s.has_g[row] = 1;
}

void IterationEngine::evaluate_all(NodeState& s) {
  for (int r = 0; r < static_cast<int>(s.nodes.size()); ++r) evaluate(s, r);
}

void IterationEngine::run(const IterationPlan& it) {
  const int p = ++iteration_;
  const auto& nodes = it.coeffs.node_set.nodes;
  const int n = static_cast<int>(nodes.size());
  const int q = sys_.dimension;

  Matrix U(n, q);
  U.row(0) = u0_.transpose();

  if (p == 1 && euler_first_) {
    for (int m = 1; m < n; ++m) U.row(m) = (u0_ + dt_ * it.coeffs.beta(m) * g0_).transpose();
    cur_ = fresh_state(nodes, U);
    return;
  }

  Matrix source_g;
  if (p == 1) {
    // U^(0) = u_n at every subtimenode of the first iteration
    cur_ = fresh_state(nodes, u0_.transpose().replicate(n, 1));
    evaluate_all(cur_);
    source_g = cur_.G;
  } else if (it.interpolate_before) {
    if (variant_ == Variant::AlphaDecU) {
      NodeState star = fresh_state(nodes, it.interp * cur_.U);
      evaluate_all(star);
      source_g = star.G;
    } else {
      evaluate_all(cur_);
      source_g = it.interp * cur_.G;
    }
  } else {
    evaluate_all(cur_);
    source_g = cur_.G;
  }

  NodeState next = fresh_state(nodes, U);
  const Matrix explicit_sum = it.explicit_part * source_g;
  for (int m = 1; m < n; ++m) {
    Vector u = u0_ + dt_ * explicit_sum.row(m).transpose();
    if (alpha_ != 0.0) {
      for (int l = 0; l < m; ++l) {
        evaluate(next, l);
        u += dt_ * it.implicit_part(m, l) * next.G.row(l).transpose();
      }
    }
    if (!u.allFinite()) throw NumericalFailure(t_n_ + dt_ * nodes[m], p, m, "non-finite state");
    next.U.row(m) = u.transpose();
  }
  cur_ = std::move(next);
}

Vector IterationEngine::final_node() const {
  return cur_.U.row(cur_.U.rows() - 1).transpose();
}

StepReport step(const SchemePlan& plan, const OdeSystem& sys, double t_n, const Vector& u_n,
                double dt) {
  IterationEngine engine(sys, plan.variant, plan.alpha, plan.euler_first_iteration, t_n, u_n, dt);
  StepReport report;
  for (const auto& it : plan.iterations) {
    engine.run(it);
    report.iterates.push_back(engine.final_node());
  }
  report.u_next = engine.final_node();
  report.rhs_evaluations = engine.rhs_evaluations();
  report.iterations_used = engine.iterations_done();
  report.final_nodes = engine.states();
  return report;
}

Vector sdec_residual_step(const DecCoefficients& coeffs, const OdeSystem& sys, double t_n,
                          const Vector& u_n, double dt, int iterations) {
  const int M = coeffs.node_set.M();
  const int P = iterations < 0 ? M + 1 : iterations;
  const auto& t = coeffs.node_set.nodes;
  auto eval = [&](int m, const Vector& u) {
    Vector g = sys.rhs(t_n + dt * t[m], u);
    if (!g.allFinite()) throw NumericalFailure(t_n + dt * t[m], 0, m, "non-finite right-hand side");
    return g;
  };

  std::vector<Vector> u(M + 1, u_n);
  for (int p = 1; p <= P; ++p) {
    std::vector<Vector> g_prev(M + 1);
    for (int l = 0; l <= M; ++l) g_prev[l] = eval(l, u[l]);

    // residual r^m = u_n + spectral integral of G over [t^0, t^m] - u^m
    std::vector<Vector> residual(M + 1, Vector::Zero(u_n.size()));
    for (int m = 1; m <= M; ++m) {
      Vector integral = Vector::Zero(u_n.size());
      for (int l = 0; l <= M; ++l) integral += coeffs.theta(m, l) * g_prev[l];
      residual[m] = u_n + dt * integral - u[m];
    }

    // Euler sweep for the error equation over the small subintervals
    std::vector<Vector> error(M + 1, Vector::Zero(u_n.size()));
    for (int m = 1; m <= M; ++m) {
      const Vector corrected = u[m - 1] + error[m - 1];
      error[m] = error[m - 1] + dt * coeffs.gamma(m) * (eval(m - 1, corrected) - g_prev[m - 1]) +
                 residual[m] - residual[m - 1];
    }
    for (int m = 1; m <= M; ++m) u[m] += error[m];
  }
  return u[M];
}

std::vector<double> step_sizes(double t0, double T, double dt) {
  if (!(T > t0)) throw InvalidParameters("final time must exceed the initial time");
  if (!(dt > 0.0)) throw InvalidParameters("dt must be positive");
  std::vector<double> sizes;
  double t = t0;
  while (true) {
    const double remaining = T - t;
    if (remaining <= 1e-12 * dt) break;
    // absorb a sliver left over by rounding into the last step
    const double h = remaining < dt * (1.0 + 1e-10) ? remaining : dt;
    sizes.push_back(h);
    t = h == remaining ? T : t + h;
  }
  return sizes;
}

Trajectory integrate(const SchemePlan& plan, const OdeSystem& sys, double t0, const Vector& u0,
                     double T, double dt) {
  Trajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(u0);
  double t = t0;
  Vector u = u0;
  const auto sizes = step_sizes(t0, T, dt);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    StepReport r;
    try {
      r = step(plan, sys, t, u, sizes[k]);
    } catch (const NumericalFailure& e) {
      throw NumericalFailure(e.t(), e.iteration(), e.node(),
                             "step " + std::to_string(k) + " failed");
    }
    u = r.u_next;
    t = k + 1 == sizes.size() ? T : t + sizes[k];
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.rhs_evaluations += r.rhs_evaluations;
  }
  return traj;
}

}  // namespace dec
