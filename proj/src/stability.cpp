#include "dec/stability.hpp"

#include <cmath>
#include <cstdio>

#include "dec/errors.hpp"

namespace dec {

std::complex<double> StabilityPolynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * z + *it;
  return acc;
}

namespace {

void trim(StabilityPolynomial& poly) {
  while (poly.coefficients.size() > 1 && std::abs(poly.coefficients.back()) < 1e-14) {
    poly.coefficients.pop_back();
  }
}

}  // namespace

StabilityPolynomial stability_polynomial(const ButcherTableau& tab) {
  const int S = tab.stages;
  for (int i = 0; i < S; ++i) {
    for (int j = i; j < S; ++j) {
      if (tab.A(i, j) != 0.0) throw NonExplicitTableau("A is not strictly lower triangular");
    }
  }
  StabilityPolynomial poly;
  poly.coefficients.push_back(1.0);
  Vector v = Vector::Ones(S);
  for (int r = 0; r < S; ++r) {
    poly.coefficients.push_back(tab.b.dot(v));
    v = tab.A * v;
  }
  trim(poly);
  return poly;
}

StabilityPolynomial stability_polynomial(const SchemePlan& plan) {
  // every rhs evaluation raises the degree by at most one
  int bound = 1;
  for (const auto& it : plan.iterations) bound += it.node_count();
  OdeSystem shift;
  shift.dimension = bound + 1;
  shift.rhs = [](double, const Vector& u) {
    Vector g = Vector::Zero(u.size());
    g.tail(u.size() - 1) = u.head(u.size() - 1);
    return g;
  };
  Vector one = Vector::Zero(bound + 1);
  one(0) = 1.0;
  const Vector r = step(plan, shift, 0.0, one, 1.0).u_next;
  StabilityPolynomial poly;
  poly.coefficients.assign(r.data(), r.data() + r.size());
  trim(poly);
  return poly;
}

StabilityGrid region_grid(const StabilityPolynomial& poly, double re0, double re1, double im0,
                          double im1, int nx, int ny) {
  if (nx < 2 || ny < 2) throw InvalidParameters("grid needs at least 2 points per axis");
  if (!(re1 > re0) || !(im1 > im0)) throw InvalidParameters("grid interval is empty");
  StabilityGrid g;
  g.re0 = re0;
  g.re1 = re1;
  g.im0 = im0;
  g.im1 = im1;
  g.nx = nx;
  g.ny = ny;
  g.magnitudes.resize(nx, ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) g.magnitudes(i, j) = std::abs(poly({g.re(i), g.im(j)}));
  }
  return g;
}

void write_grid_csv(const StabilityGrid& grid, std::ostream& os) {
  os << "re,im,abs_R\n";
  char buf[96];
  for (int i = 0; i < grid.nx; ++i) {
    for (int j = 0; j < grid.ny; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", grid.re(i), grid.im(j),
                    grid.magnitudes(i, j));
      os << buf;
    }
  }
}

void write_grid_pgm(const StabilityGrid& grid, std::ostream& os) {
  os << "P5\n" << grid.nx << ' ' << grid.ny << "\n255\n";
  for (int j = grid.ny - 1; j >= 0; --j) {
    for (int i = 0; i < grid.nx; ++i) os.put(static_cast<char>(grid.stable(i, j) ? 255 : 0));
  }
}

}  // namespace dec
