#pragma once

#include <vector>

#include "dec/dec_ode.hpp"

namespace dec {

struct AdaptiveConfig {
  Variant variant = Variant::AlphaDecDu;  // AlphaDecU or AlphaDecDu
  double alpha = 0.0;
  double epsilon = 1e-8;
  int p_max = 15;
  NodeFamily node_family = NodeFamily::Equispaced;
};

struct AdaptiveStep {
  Vector u_next;
  int p_used = 0;
  long rhs_evaluations = 0;
  bool converged = false;
};

/// Growing-node plan for cfg; validates cfg (InvalidParameters / InvalidOrder).
SchemePlan adaptive_plan(const AdaptiveConfig& cfg);

/// Iterates until the final-node update satisfies
///   |u^(p) - u^(p-1)| <= epsilon |u^(p)|   (Euclidean norms, p >= 2),
/// or the absolute test |u^(p) - u^(p-1)| <= epsilon when u^(p) = 0.
/// Stops at p_max with converged = false otherwise.
AdaptiveStep adaptive_step(const AdaptiveConfig& cfg, const OdeSystem& sys, double t_n,
                           const Vector& u_n, double dt);
AdaptiveStep adaptive_step(const AdaptiveConfig& cfg, const SchemePlan& plan,
                           const OdeSystem& sys, double t_n, const Vector& u_n, double dt);

struct AdaptiveTrajectory {
  Trajectory trajectory;
  std::vector<int> p_used;
  int unconverged_steps = 0;
  double mean_p = 0.0;
  double std_p = 0.0;  // population standard deviation
};

AdaptiveTrajectory adaptive_integrate(const AdaptiveConfig& cfg, const OdeSystem& sys, double t0,
                                      const Vector& u0, double T, double dt);

}  // namespace dec
