#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dec/dec_ode.hpp"

namespace dec {

enum class BasisKind { Bernstein, LagrangeEquispaced, LagrangeGL };

struct BasisSpec {
  BasisKind kind = BasisKind::Bernstein;
  int degree = 2;
};

/// "b2".."b4", "p2".."p4", "pgl2".."pgl4".
BasisSpec parse_basis(const std::string& name);
std::string to_string(const BasisSpec& basis);

/// Stabilization coefficient tuned for each basis at CFL 0.1. P3 shares the B3
/// value. Throws InvalidParameters for bases without a tuned value.
double default_cip(const BasisSpec& basis);

/// Local basis on the reference element [0, 1]; local function 0 is attached
/// to the left end point and function `degree` to the right one.
class ReferenceBasis {
 public:
  explicit ReferenceBasis(BasisSpec spec);

  int size() const { return spec_.degree + 1; }
  const BasisSpec& spec() const { return spec_; }
  std::vector<double> values(double xi) const;
  std::vector<double> derivatives(double xi) const;
  /// Lagrange nodes, or the equispaced points used to fit Bernstein coefficients.
  const std::vector<double>& points() const { return points_; }

 private:
  BasisSpec spec_;
  std::vector<double> points_;
};

/// Periodic 1D mesh of [0, 1] with a continuous piecewise-polynomial space.
struct FemSpace1D {
  int n_elements = 0;
  double h = 0.0;
  BasisSpec basis;
  int dof_count = 0;
  std::vector<std::vector<int>> connectivity;  // element -> global DoFs
  Vector lumped_masses;  // C_i = integral of phi_i
  Matrix element_mass;  // integral over one element of phi_i phi_j (same for every element)
  Matrix element_advection;  // integral of phi_i d(phi_j)/dx over one element
  std::vector<double> dphi_left;  // d(phi_j)/dx at the left end of an element
  std::vector<double> dphi_right;  // d(phi_j)/dx at the right end
  ReferenceBasis reference{BasisSpec{}};
};

/// Throws InvalidParameters for n_elements < 3 or degree outside 2..4.
FemSpace1D build_space(int n_elements, BasisSpec basis);

/// Galerkin advection residual (unit speed) plus the interior penalty on the
/// jumps of du/dx: alpha_f = delta_cip * h^2 at every interface.
Vector space_residual(const FemSpace1D& space, const Vector& c, double delta_cip);

/// Consistent mass matrix applied to v.
Vector apply_mass(const FemSpace1D& space, const Vector& v);

struct PdeStep {
  Vector c;
  long residual_evaluations = 0;
};

/// Mass-matrix-free bDeC update: every iteration corrects with the lumped
/// masses C_i while the consistent mass acts on the difference to c_n.
/// `plan` must be a bDeC plan (AlphaDec, alpha = 0).
PdeStep bdec_pde_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                      double dt, double delta_cip);

/// Same update with states interpolated between growing node sets.
/// `plan` must be a bDeCu plan (AlphaDecU, alpha = 0).
PdeStep bdecu_pde_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                       double dt, double delta_cip);

/// dc/dt = -r(c) / C as an ODE, stepped by dec::step. Gauss-Lobatto Lagrange bases only.
PdeStep ode_mode_step(const FemSpace1D& space, const SchemePlan& plan, const Vector& c_n,
                      double dt, double delta_cip);

/// Coefficients of the initial condition: nodal interpolation for Lagrange
/// bases, element-wise interpolation at equispaced points for Bernstein.
Vector interpolate(const FemSpace1D& space, const std::function<double(double)>& f);

/// Integral of u_h over [0, 1].
double integral(const FemSpace1D& space, const Vector& c);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;  // maximum over quadrature points
};

ErrorNorms error_norms(const FemSpace1D& space, const Vector& c,
                       const std::function<double(double)>& exact);

enum class PdeScheme { BDec, BDecU };
/// Auto uses the ODE path for Gauss-Lobatto Lagrange bases and the
/// mass-matrix-free update otherwise.
enum class PdeMode { Auto, MassFree, Ode };

struct PdeRunConfig {
  BasisSpec basis;
  int n_elements = 16;
  double cfl = 0.1;
  double delta_cip = 0.0;
  PdeScheme scheme = PdeScheme::BDec;
  int order = 0;  // 0: degree + 1
  PdeMode mode = PdeMode::Auto;
  double T = 1.0;
};

struct PdeResult {
  int n_elements = 0;
  double h = 0.0;
  ErrorNorms errors;
  long residual_evaluations = 0;
  int steps = 0;
  double max_mass_drift = 0.0;  // largest per-step change of the integral of u_h
};

/// Advects u0(x) = cos(2 pi x) once around the periodic domain and compares
/// with u0(x - T).
PdeResult run_pde(const PdeRunConfig& cfg);

}  // namespace dec
