#include "dec/cg1d.hpp"

#include <cmath>
#include <numbers>

#include "dec/errors.hpp"

namespace dec {

BasisSpec parse_basis(const std::string& name) {
  BasisSpec spec;
  std::string digits;
  if (name.rfind("pgl", 0) == 0) {
    spec.kind = BasisKind::LagrangeGL;
    digits = name.substr(3);
  } else if (name.rfind("p", 0) == 0) {
    spec.kind = BasisKind::LagrangeEquispaced;
    digits = name.substr(1);
  } else if (name.rfind("b", 0) == 0) {
    spec.kind = BasisKind::Bernstein;
    digits = name.substr(1);
  } else {
    throw InvalidParameters("unknown basis '" + name + "'");
  }
  if (digits.size() != 1 || digits[0] < '2' || digits[0] > '4') {
    throw InvalidParameters("unknown basis '" + name + "' (degree must be 2, 3 or 4)");
  }
  spec.degree = digits[0] - '0';
  return spec;
}

std::string to_string(const BasisSpec& basis) {
  const char* prefix = basis.kind == BasisKind::Bernstein            ? "b"
                       : basis.kind == BasisKind::LagrangeEquispaced ? "p"
                                                                     : "pgl";
  return prefix + std::to_string(basis.degree);
}

double default_cip(const BasisSpec& basis) {
  const std::string name = to_string(basis);
  if (name == "b2") return 0.016;
  if (name == "p2") return 0.00242;
  if (name == "pgl2") return 0.00346;
  if (name == "b3" || name == "p3") return 0.00702;
  if (name == "pgl3" || name == "pgl4") return 0.000113;
  throw InvalidParameters("no tuned CIP coefficient for basis " + name);
}

ReferenceBasis::ReferenceBasis(BasisSpec spec) : spec_(spec) {
  const int n = spec.degree;
  if (spec.kind == BasisKind::LagrangeGL) {
    points_ = make_nodes(NodeFamily::GaussLobatto, n).nodes;
  } else {
    points_ = make_nodes(NodeFamily::Equispaced, n).nodes;
  }
}

namespace {

// All Bernstein polynomials of degree n at x by the de Casteljau triangle.
std::vector<double> bernstein(int n, double x) {
  std::vector<double> b(n + 1, 0.0);
  b[0] = 1.0;
  for (int k = 1; k <= n; ++k) {
    for (int j = k; j >= 1; --j) b[j] = (1.0 - x) * b[j] + x * b[j - 1];
    b[0] *= 1.0 - x;
  }
  return b;
}

}  // namespace

std::vector<double> ReferenceBasis::values(double xi) const {
  if (spec_.kind == BasisKind::Bernstein) return bernstein(spec_.degree, xi);
  return lagrange_basis(points_, xi);
}

std::vector<double> ReferenceBasis::derivatives(double xi) const {
  if (spec_.kind != BasisKind::Bernstein) return lagrange_basis_derivative(points_, xi);
  const int n = spec_.degree;
  const auto lower = bernstein(n - 1, xi);
  std::vector<double> d(n + 1, 0.0);
  for (int j = 0; j <= n; ++j) {
    const double left = j >= 1 ? lower[j - 1] : 0.0;
    const double right = j <= n - 1 ? lower[j] : 0.0;
    d[j] = n * (left - right);
  }
  return d;
}

FemSpace1D build_space(int n_elements, BasisSpec basis) {
  if (n_elements < 3) throw InvalidParameters("need at least 3 elements");
  if (basis.degree < 2 || basis.degree > 4) throw InvalidParameters("degree must be 2, 3 or 4");
  FemSpace1D s;
  s.n_elements = n_elements;
  s.h = 1.0 / n_elements;
  s.basis = basis;
  s.reference = ReferenceBasis(basis);
  const int n = basis.degree;
  s.dof_count = n_elements * n;
  s.connectivity.resize(n_elements);
  for (int e = 0; e < n_elements; ++e) {
    for (int j = 0; j <= n; ++j) s.connectivity[e].push_back((e * n + j) % s.dof_count);
  }

  const QuadratureRule rule = gauss_legendre(n + 1);
  s.element_mass = Matrix::Zero(n + 1, n + 1);
  s.element_advection = Matrix::Zero(n + 1, n + 1);
  std::vector<double> local_mass(n + 1, 0.0);
  for (std::size_t q = 0; q < rule.points.size(); ++q) {
    const auto phi = s.reference.values(rule.points[q]);
    const auto dphi = s.reference.derivatives(rule.points[q]);
    const double w = rule.weights[q];
    for (int i = 0; i <= n; ++i) {
      local_mass[i] += s.h * w * phi[i];
      for (int j = 0; j <= n; ++j) {
        s.element_mass(i, j) += s.h * w * phi[i] * phi[j];
        // the 1/h of d/dx cancels the h of dx
        s.element_advection(i, j) += w * phi[i] * dphi[j];
      }
    }
  }
  s.lumped_masses = Vector::Zero(s.dof_count);
  for (int e = 0; e < n_elements; ++e) {
    for (int j = 0; j <= n; ++j) s.lumped_masses(s.connectivity[e][j]) += local_mass[j];
  }
  s.dphi_left = s.reference.derivatives(0.0);
  s.dphi_right = s.reference.derivatives(1.0);
  for (int j = 0; j <= n; ++j) {
    s.dphi_left[j] /= s.h;
    s.dphi_right[j] /= s.h;
  }
  return s;
}

Vector space_residual(const FemSpace1D& space, const Vector& c, double delta_cip) {
  const int n = space.basis.degree;
  Vector r = Vector::Zero(space.dof_count);
  Vector local(n + 1);
  for (int e = 0; e < space.n_elements; ++e) {
    const auto& dofs = space.connectivity[e];
    for (int j = 0; j <= n; ++j) local(j) = c(dofs[j]);
    const Vector contrib = space.element_advection * local;
    for (int i = 0; i <= n; ++i) r(dofs[i]) += contrib(i);
  }
  if (delta_cip == 0.0) return r;

  const double alpha = delta_cip * space.h * space.h;
  for (int e = 0; e < space.n_elements; ++e) {
    // interface at the right end of element e
    const auto& left = space.connectivity[e];
    const auto& right = space.connectivity[(e + 1) % space.n_elements];
    double jump = 0.0;
    for (int j = 0; j <= n; ++j) {
      jump += c(right[j]) * space.dphi_left[j] - c(left[j]) * space.dphi_right[j];
    }
    for (int j = 0; j <= n; ++j) {
      r(right[j]) += alpha * jump * space.dphi_left[j];
      r(left[j]) -= alpha * jump * space.dphi_right[j];
    }
  }
  return r;
}

Vector apply_mass(const FemSpace1D& space, const Vector& v) {
  const int n = space.basis.degree;
  Vector out = Vector::Zero(space.dof_count);
  Vector local(n + 1);
  for (int e = 0; e < space.n_elements; ++e) {
    const auto& dofs = space.connectivity[e];
    for (int j = 0; j <= n; ++j) local(j) = v(dofs[j]);
    const Vector contrib = space.element_mass * local;
    for (int i = 0; i <= n; ++i) out(dofs[i]) += contrib(i);
  }
  return out;
}

namespace {

void check_lumping(const FemSpace1D& space) {
  for (int i = 0; i < space.dof_count; ++i) {
    if (!(space.lumped_masses(i) > 0.0)) {
      throw LumpingInvalid("lumped mass C_" + std::to_string(i) + " is not positive");
    }
  }
}

void check_finite(const Vector& v, int iteration, int node) {
  if (!v.allFinite()) throw NumericalFailure(0.0, iteration, node, "non-finite PDE state");
}

PdeStep mass_free_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                       double dt, double delta_cip) {
  check_lumping(space);
  if (plan.alpha != 0.0) throw InvalidParameters("the PDE update needs alpha = 0");
  const Vector inv_c = space.lumped_masses.cwiseInverse();
  PdeStep out;
  const Vector r0 = space_residual(space, c_n, delta_cip);
  out.residual_evaluations = 1;
  check_finite(r0, 0, 0);

  // c^(0) = c_n at every node, so its residuals are all r0
  std::vector<Vector> states(plan.iterations.front().node_count(), c_n);
  std::vector<Vector> residuals(states.size(), r0);
  for (const auto& it : plan.iterations) {
    const int n = it.node_count();
    if (it.index > 1) {
      if (it.interpolate_before) {
        std::vector<Vector> star(n, Vector::Zero(space.dof_count));
        for (int i = 0; i < n; ++i) {
          for (int m = 0; m < static_cast<int>(states.size()); ++m) {
            star[i] += it.interp(i, m) * states[m];
          }
        }
        star[0] = c_n;
        states = std::move(star);
      }
      residuals.assign(n, Vector());
      residuals[0] = r0;
      for (int m = 1; m < n; ++m) {
        residuals[m] = space_residual(space, states[m], delta_cip);
        ++out.residual_evaluations;
        check_finite(residuals[m], it.index, m);
      }
    }
    std::vector<Vector> next(n, c_n);
    for (int m = 1; m < n; ++m) {
      Vector integral = Vector::Zero(space.dof_count);
      for (int l = 0; l < n; ++l) integral += it.coeffs.theta(m, l) * residuals[l];
      next[m] = states[m] - inv_c.cwiseProduct(apply_mass(space, states[m] - c_n) + dt * integral);
      check_finite(next[m], it.index, m);
    }
    states = std::move(next);
  }
  out.c = states.back();
  return out;
}

}  // namespace

PdeStep bdec_pde_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                      double dt, double delta_cip) {
  if (plan.variant != Variant::AlphaDec) throw InvalidParameters("bdec_pde_step needs a bDeC plan");
  return mass_free_step(space, plan, c_n, dt, delta_cip);
}

PdeStep bdecu_pde_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                       double dt, double delta_cip) {
  if (plan.variant != Variant::AlphaDecU) {
    throw InvalidParameters("bdecu_pde_step needs a bDeCu plan");
  }
  return mass_free_step(space, plan, c_n, dt, delta_cip);
}

PdeStep ode_mode_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                      double dt, double delta_cip) {
  if (space.basis.kind != BasisKind::LagrangeGL) {
    throw InvalidParameters("the ODE path needs a Gauss-Lobatto Lagrange basis");
  }
  check_lumping(space);
  const Vector inv_c = space.lumped_masses.cwiseInverse();
  OdeSystem sys;
  sys.dimension = space.dof_count;
  sys.rhs = [&](double, const Vector& c) -> Vector {
    return -inv_c.cwiseProduct(space_residual(space, c, delta_cip));
  };
  const StepReport r = step(plan, sys, 0.0, c_n, dt);
  return {r.u_next, r.rhs_evaluations};
}

Vector interpolate(const FemSpace1D& space, const std::function<double(double)>& f) {
  const int n = space.basis.degree;
  const auto& pts = space.reference.points();
  Vector c = Vector::Zero(space.dof_count);
  Eigen::PartialPivLU<Matrix> vandermonde;
  if (space.basis.kind == BasisKind::Bernstein) {
    Matrix V(n + 1, n + 1);
    for (int i = 0; i <= n; ++i) {
      const auto b = space.reference.values(pts[i]);
      for (int j = 0; j <= n; ++j) V(i, j) = b[j];
    }
    vandermonde.compute(V);
  }
  for (int e = 0; e < space.n_elements; ++e) {
    Vector samples(n + 1);
    for (int i = 0; i <= n; ++i) samples(i) = f((e + pts[i]) * space.h);
    const Vector local =
        space.basis.kind == BasisKind::Bernstein ? Vector(vandermonde.solve(samples)) : samples;
    for (int j = 0; j <= n; ++j) c(space.connectivity[e][j]) = local(j);
  }
  return c;
}

double integral(const FemSpace1D& space, const Vector& c) {
  return space.lumped_masses.dot(c);
}

ErrorNorms error_norms(const FemSpace1D& space, const Vector& c,
                       const std::function<double(double)>& exact) {
  const int n = space.basis.degree;
  const QuadratureRule rule = gauss_legendre(n + 4);
  ErrorNorms err;
  for (int e = 0; e < space.n_elements; ++e) {
    const auto& dofs = space.connectivity[e];
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto phi = space.reference.values(rule.points[q]);
      double uh = 0.0;
      for (int j = 0; j <= n; ++j) uh += c(dofs[j]) * phi[j];
      const double d = std::abs(uh - exact((e + rule.points[q]) * space.h));
      err.l1 += space.h * rule.weights[q] * d;
      err.l2 += space.h * rule.weights[q] * d * d;
      err.linf = std::max(err.linf, d);
    }
  }
  err.l2 = std::sqrt(err.l2);
  return err;
}

PdeResult run_pde(const PdeRunConfig& cfg) {
  if (!(cfg.cfl > 0.0)) throw InvalidParameters("CFL must be positive");
  if (cfg.delta_cip < 0.0) throw InvalidParameters("CIP coefficient must be non-negative");
  const FemSpace1D space = build_space(cfg.n_elements, cfg.basis);
  const int order = cfg.order > 0 ? cfg.order : cfg.basis.degree + 1;
  const Variant variant = cfg.scheme == PdeScheme::BDec ? Variant::AlphaDec : Variant::AlphaDecU;
  const SchemePlan plan = plan_scheme(variant, 0.0, order, NodeFamily::Equispaced);
  const bool ode = cfg.mode == PdeMode::Ode ||
                   (cfg.mode == PdeMode::Auto && cfg.basis.kind == BasisKind::LagrangeGL);

  const auto u0 = [](double x) { return std::cos(2.0 * std::numbers::pi * x); };
  Vector c = interpolate(space, u0);
  PdeResult res;
  res.n_elements = cfg.n_elements;
  res.h = space.h;
  double mass = integral(space, c);
  for (double dt : step_sizes(0.0, cfg.T, cfg.cfl * space.h)) {
    PdeStep s;
    if (ode) {
      s = ode_mode_step(space, plan, c, dt, cfg.delta_cip);
    } else if (cfg.scheme == PdeScheme::BDec) {
      s = bdec_pde_step(space, plan, c, dt, cfg.delta_cip);
    } else {
      s = bdecu_pde_step(space, plan, c, dt, cfg.delta_cip);
    }
    c = std::move(s.c);
    res.residual_evaluations += s.residual_evaluations;
    ++res.steps;
    const double next_mass = integral(space, c);
    res.max_mass_drift = std::max(res.max_mass_drift, std::abs(next_mass - mass));
    mass = next_mass;
  }
  const double T = cfg.T;
  res.errors = error_norms(space, c, [&](double x) { return u0(x - T); });
  return res;
}

}  // namespace dec
