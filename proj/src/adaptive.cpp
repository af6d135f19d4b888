#include "dec/adaptive.hpp"

#include <cmath>

#include "dec/errors.hpp"

namespace dec {

SchemePlan adaptive_plan(const AdaptiveConfig& cfg) {
  if (cfg.variant == Variant::AlphaDec) {
    throw InvalidParameters("adaptive stepping needs the DeCu or DeCdu variant");
  }
  if (!(cfg.epsilon >= 0.0)) throw InvalidParameters("epsilon must be non-negative");
  if (cfg.p_max < 2) throw InvalidOrder("p_max must be at least 2");
  return plan_growing(cfg.variant, cfg.alpha, cfg.node_family, cfg.p_max);
}

AdaptiveStep adaptive_step(const AdaptiveConfig& cfg, const SchemePlan& plan,
                           const OdeSystem& sys, double t_n, const Vector& u_n, double dt) {
  IterationEngine engine(sys, plan.variant, plan.alpha, plan.euler_first_iteration, t_n, u_n, dt);
  AdaptiveStep out;
  Vector previous;
  for (const auto& it : plan.iterations) {
    engine.run(it);
    Vector current = engine.final_node();
    if (it.index >= 2) {
      const double diff = (current - previous).norm();
      const double size = current.norm();
      if (size > 0.0 ? diff <= cfg.epsilon * size : diff <= cfg.epsilon) {
        out.converged = true;
        previous = std::move(current);
        break;
      }
    }
    previous = std::move(current);
  }
  out.u_next = std::move(previous);
  out.p_used = engine.iterations_done();
  out.rhs_evaluations = engine.rhs_evaluations();
  return out;
}

AdaptiveStep adaptive_step(const AdaptiveConfig& cfg, const OdeSystem& sys, double t_n,
                           const Vector& u_n, double dt) {
  return adaptive_step(cfg, adaptive_plan(cfg), sys, t_n, u_n, dt);
}

AdaptiveTrajectory adaptive_integrate(const AdaptiveConfig& cfg, const OdeSystem& sys, double t0,
                                      const Vector& u0, double T, double dt) {
  const SchemePlan plan = adaptive_plan(cfg);
  AdaptiveTrajectory out;
  auto& traj = out.trajectory;
  traj.times.push_back(t0);
  traj.states.push_back(u0);
  double t = t0;
  Vector u = u0;
  const auto sizes = step_sizes(t0, T, dt);
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    AdaptiveStep s;
    try {
      s = adaptive_step(cfg, plan, sys, t, u, sizes[k]);
    } catch (const NumericalFailure& e) {
      throw NumericalFailure(e.t(), e.iteration(), e.node(),
                             "step " + std::to_string(k) + " failed");
    }
    u = s.u_next;
    t = k + 1 == sizes.size() ? T : t + sizes[k];
    traj.times.push_back(t);
    traj.states.push_back(u);
    traj.rhs_evaluations += s.rhs_evaluations;
    out.p_used.push_back(s.p_used);
    if (!s.converged) ++out.unconverged_steps;
  }
  double sum = 0.0;
  for (int p : out.p_used) sum += p;
  out.mean_p = sum / out.p_used.size();
  double var = 0.0;
  for (int p : out.p_used) var += (p - out.mean_p) * (p - out.mean_p);
  out.std_p = std::sqrt(var / out.p_used.size());
  return out;
}

}  // namespace dec
