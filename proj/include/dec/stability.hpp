#pragma once

#include <complex>
#include <ostream>
#include <vector>

#include "dec/rk_export.hpp"

namespace dec {

struct StabilityPolynomial {
  std::vector<double> coefficients;  // coefficients[r] multiplies z^r

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  std::complex<double> operator()(std::complex<double> z) const;
};

/// R(z) = 1 + sum_r b^T A^r 1 z^{r+1}. Coefficients below 1e-14 in magnitude
/// are dropped from the tail. Throws NonExplicitTableau unless A is strictly
/// lower triangular.
StabilityPolynomial stability_polynomial(const ButcherTableau& tab);

/// Same polynomial obtained by running the iterative stepper on u' = u with
/// states stored as polynomials in z = dt; works for every variant, including
/// DeCu with alpha != 0, which has no tableau.
StabilityPolynomial stability_polynomial(const SchemePlan& plan);

struct StabilityGrid {
  double re0 = -12.0, re1 = 2.0;
  double im0 = -12.0, im1 = 12.0;
  int nx = 600, ny = 600;
  /// magnitudes(i, j) = |R(re_i + I im_j)|
  Matrix magnitudes;

  double re(int i) const { return re0 + (re1 - re0) * i / (nx - 1); }
  double im(int j) const { return im0 + (im1 - im0) * j / (ny - 1); }
  bool stable(int i, int j) const { return magnitudes(i, j) < 1.0; }
};

/// Throws InvalidParameters for nx or ny below 2 or an empty interval.
StabilityGrid region_grid(const StabilityPolynomial& poly, double re0, double re1, double im0,
                          double im1, int nx, int ny);

/// Rows "re,im,abs_R" with a header line.
void write_grid_csv(const StabilityGrid& grid, std::ostream& os);
/// Binary 8-bit PGM; stable points white, image rows run from +Im to -Im.
void write_grid_pgm(const StabilityGrid& grid, std::ostream& os);

}  // namespace dec
