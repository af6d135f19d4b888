#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "dec/coeffs.hpp"
#include "dec/linalg.hpp"

namespace dec {

/// du/dt = rhs(t, u) with u in R^dimension. rhs must be pure.
struct OdeSystem {
  int dimension = 1;
  std::function<Vector(double, const Vector&)> rhs;
};

/// AlphaDec: fixed subtimenodes. AlphaDecU: subtimenodes grow between
/// iterations by interpolating the states. AlphaDecDu: they grow by
/// interpolating the stored right-hand side values.
enum class Variant { AlphaDec, AlphaDecU, AlphaDecDu };

std::string to_string(Variant v);

/// Everything one DeC iteration needs, precomputed.
struct IterationPlan {
  int index = 0;  // 1-based
  DecCoefficients coeffs;
  Matrix explicit_part;  // Theta - alpha * Gamma
  Matrix implicit_part;  // alpha * Gamma (strictly lower triangular)
  bool interpolate_before = false;
  Matrix interp;  // previous node set -> this node set, when interpolate_before

  int node_count() const { return coeffs.node_set.size(); }
};

struct SchemePlan {
  Variant variant = Variant::AlphaDec;
  double alpha = 0.0;
  int order = 2;
  NodeFamily node_family = NodeFamily::Equispaced;
  int M = 1;
  bool euler_first_iteration = true;
  std::vector<IterationPlan> iterations;

  int iteration_count() const { return static_cast<int>(iterations.size()); }
  std::vector<int> node_counts() const;
  /// 1-based iterations that are preceded by an interpolation.
  std::vector<int> interpolation_schedule() const;
  /// Short human-readable label such as "bDeCu5-eq" or "sDeC3-gl".
  std::string name() const;
};

/// Number of subintervals used by an order-P scheme on the given family.
int optimal_subintervals(NodeFamily family, int order);

/// Resolve a scheme: M, one IterationPlan per iteration, interpolation matrices.
/// Throws InvalidOrder for order < 2, InvalidParameters for alpha outside [0, 1].
SchemePlan plan_scheme(Variant variant, double alpha, int order, NodeFamily family,
                       bool euler_first_iteration = true);

/// Plan whose node count grows by one per iteration up to `iterations`
/// iterations, without the cap at M. The last iteration reuses the node set
/// of the one before it. Used by the p-adaptive stepper.
SchemePlan plan_growing(Variant variant, double alpha, NodeFamily family, int iterations,
                        bool euler_first_iteration = true);

struct StepReport {
  Vector u_next;
  long rhs_evaluations = 0;
  int iterations_used = 0;
  /// Final-node value after each iteration (u^{last,(p)}, p = 1..iterations_used).
  std::vector<Vector> iterates;
  /// All subtimenode states of the last iteration. Informational only.
  Matrix final_nodes;
};

/// Runs DeC iterations one at a time on a single step, evaluating the
/// right-hand side lazily so every evaluation corresponds to one RK stage.
class IterationEngine {
 public:
  IterationEngine(const OdeSystem& sys, Variant variant, double alpha, bool euler_first_iteration,
                  double t_n, const Vector& u_n, double dt);

  void run(const IterationPlan& it);

  Vector final_node() const;
  const Matrix& states() const { return cur_.U; }
  long rhs_evaluations() const { return evaluations_; }
  int iterations_done() const { return iteration_; }

 private:
  struct NodeState {
    std::vector<double> nodes;
    Matrix U;
    Matrix G;
    std::vector<char> has_g;
  };

  NodeState fresh_state(const std::vector<double>& nodes, const Matrix& U) const;
  void evaluate(NodeState& s, int row);
  void evaluate_all(NodeState& s);

  const OdeSystem& sys_;
  Variant variant_;
  double alpha_;
  bool euler_first_;
  double t_n_;
  double dt_;
  Vector u0_;
  Vector g0_;
  NodeState cur_;
  long evaluations_ = 0;
  int iteration_ = 0;
};

StepReport step(const SchemePlan& plan, const OdeSystem& sys, double t_n, const Vector& u_n,
                double dt);

/// Classical spectral DeC written with error and residual functions: each
/// iteration integrates the error equation with explicit Euler on the small
/// subintervals and the residual by spectral quadrature. Mathematically the
/// same map as AlphaDec with alpha = 1 and no Euler first iteration.
/// `iterations` defaults to M + 1.
Vector sdec_residual_step(const DecCoefficients& coeffs, const OdeSystem& sys, double t_n,
                          const Vector& u_n, double dt, int iterations = -1);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  long rhs_evaluations = 0;
};

/// Uniform steps of size dt from t0; the last step is shortened to land on T.
Trajectory integrate(const SchemePlan& plan, const OdeSystem& sys, double t0, const Vector& u0,
                     double T, double dt);

/// Step sizes of the time loop used by integrate().
std::vector<double> step_sizes(double t0, double T, double dt);

}  // namespace dec
