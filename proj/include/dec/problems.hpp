#pragma once

#include <complex>
#include <functional>
#include <string>

#include "dec/dec_ode.hpp"

namespace dec {

struct TestProblem {
  std::string name;
  OdeSystem system;
  std::function<Vector(double)> exact;
  double t0 = 0.0;
  double T = 1.0;
  Vector u0;
};

/// u' = -5u + v, v' = 5u - v on [0, 1], (u, v)(0) = (0.9, 0.1).
TestProblem linear_system();

struct VibratingParameters {
  double m = 5.0;
  double r = 2.0;
  double k = 5.0;
  double F = 1.0;
  double Omega = 2.0;
  double phi = 0.1;
  double A = 0.5;  // y(0)
  double B = 0.25;  // y'(0)
  double T = 4.0;
};

/// Forced damped oscillator m y'' + r y' + k y = F cos(Omega t + phi) as the
/// first-order system (y, y'). Throws InvalidParameters for m, k, Omega <= 0
/// or negative r, F.
TestProblem vibrating_system(const VibratingParameters& p = {});

/// u' = lambda u for complex lambda, stored as (Re u, Im u). Starts at (1, 0).
TestProblem dahlquist(std::complex<double> lambda, double T = 1.0);

/// Lookup by CLI name: "linear", "vibrating", "dahlquist" (lambda = -1).
TestProblem problem_by_name(const std::string& name);

}  // namespace dec
