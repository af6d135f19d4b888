#include "dec/problems.hpp"

#include <cmath>

#include "dec/errors.hpp"

namespace dec {

TestProblem linear_system() {
  TestProblem p;
  p.name = "linear";
  p.system.dimension = 2;
  p.system.rhs = [](double, const Vector& u) {
    Vector g(2);
    g << -5.0 * u(0) + u(1), 5.0 * u(0) - u(1);
    return g;
  };
  p.u0 = Vector(2);
  p.u0 << 0.9, 0.1;
  p.t0 = 0.0;
  p.T = 1.0;
  // eigenvalues 0 and -6; u + v is conserved and the equilibrium is (s/6, 5s/6)
  const double u0 = p.u0(0);
  const double s = p.u0(0) + p.u0(1);
  p.exact = [u0, s](double t) {
    Vector e(2);
    e(0) = s / 6.0 + (u0 - s / 6.0) * std::exp(-6.0 * t);
    e(1) = s - e(0);
    return e;
  };
  return p;
}

TestProblem vibrating_system(const VibratingParameters& prm) {
  if (!(prm.m > 0.0) || !(prm.k > 0.0) || !(prm.Omega > 0.0)) {
    throw InvalidParameters("vibrating system needs m, k, Omega > 0");
  }
  if (prm.r < 0.0 || prm.F < 0.0) throw InvalidParameters("vibrating system needs r, F >= 0");

  TestProblem p;
  p.name = "vibrating";
  p.system.dimension = 2;
  p.system.rhs = [prm](double t, const Vector& u) {
    Vector g(2);
    g << u(1), (prm.F * std::cos(prm.Omega * t + prm.phi) - prm.r * u(1) - prm.k * u(0)) / prm.m;
    return g;
  };
  p.u0 = Vector(2);
  p.u0 << prm.A, prm.B;
  p.t0 = 0.0;
  p.T = prm.T;

  // particular solution Yp cos(Omega t + psi) from the phasor equation
  const double re = prm.k - prm.m * prm.Omega * prm.Omega;
  const double im = prm.Omega * prm.r;
  if (prm.F > 0.0 && re == 0.0 && im == 0.0) {
    throw InvalidParameters("undamped forcing at the natural frequency has no periodic solution");
  }
  const double Yp = prm.F == 0.0 ? 0.0 : prm.F / std::hypot(re, im);
  const double psi = prm.phi - std::atan2(im, re);
  const double yp0 = Yp * std::cos(psi);
  const double dyp0 = -Yp * prm.Omega * std::sin(psi);

  // homogeneous part y_h = C1 f1 + C2 f2 with f1(0) = 1, f1'(0) = a, f2(0) = 0, f2'(0) = 1
  // except in the underdamped case below; C1, C2 from y_h(0), y_h'(0)
  const double ya = prm.A - yp0;
  const double yb = prm.B - dyp0;
  const double disc = prm.r * prm.r - 4.0 * prm.k * prm.m;
  const double a = -prm.r / (2.0 * prm.m);
  std::function<std::pair<double, double>(double)> homogeneous;
  if (disc > 0.0) {
    const double s = std::sqrt(disc) / (2.0 * prm.m);
    const double l1 = a + s;
    const double l2 = a - s;
    // C1 + C2 = ya, l1 C1 + l2 C2 = yb
    const double C1 = (yb - l2 * ya) / (l1 - l2);
    const double C2 = ya - C1;
    homogeneous = [=](double t) {
      const double e1 = std::exp(l1 * t);
      const double e2 = std::exp(l2 * t);
      return std::pair{C1 * e1 + C2 * e2, C1 * l1 * e1 + C2 * l2 * e2};
    };
  } else if (disc == 0.0) {
    const double C1 = ya;
    const double C2 = yb - a * ya;
    homogeneous = [=](double t) {
      const double e = std::exp(a * t);
      return std::pair{(C1 + C2 * t) * e, (C2 + a * (C1 + C2 * t)) * e};
    };
  } else {
    const double w = std::sqrt(-disc) / (2.0 * prm.m);
    const double C1 = ya;
    const double C2 = (yb - a * C1) / w;
    homogeneous = [=](double t) {
      const double e = std::exp(a * t);
      const double c = std::cos(w * t);
      const double s = std::sin(w * t);
      const double y = e * (C1 * c + C2 * s);
      const double dy = a * y + e * w * (-C1 * s + C2 * c);
      return std::pair{y, dy};
    };
  }
  p.exact = [=](double t) {
    const auto [yh, dyh] = homogeneous(t);
    Vector e(2);
    e(0) = yh + Yp * std::cos(prm.Omega * t + psi);
    e(1) = dyh - Yp * prm.Omega * std::sin(prm.Omega * t + psi);
    return e;
  };
  return p;
}

TestProblem dahlquist(std::complex<double> lambda, double T) {
  TestProblem p;
  p.name = "dahlquist";
  p.system.dimension = 2;
  const double a = lambda.real();
  const double b = lambda.imag();
  p.system.rhs = [a, b](double, const Vector& u) {
    Vector g(2);
    g << a * u(0) - b * u(1), b * u(0) + a * u(1);
    return g;
  };
  p.u0 = Vector(2);
  p.u0 << 1.0, 0.0;
  p.t0 = 0.0;
  p.T = T;
  p.exact = [lambda](double t) {
    const std::complex<double> z = std::exp(lambda * t);
    Vector e(2);
    e << z.real(), z.imag();
    return e;
  };
  return p;
}

TestProblem problem_by_name(const std::string& name) {
  if (name == "linear") return linear_system();
  if (name == "vibrating") return vibrating_system();
  if (name == "dahlquist") return dahlquist({-1.0, 0.0});
  throw InvalidParameters("unknown problem '" + name + "'");
}

}  // namespace dec
