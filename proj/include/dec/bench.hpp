#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dec/adaptive.hpp"
#include "dec/problems.hpp"

namespace dec {

struct SchemeSpec {
  Variant variant = Variant::AlphaDec;
  double alpha = 0.0;
  int order = 3;
  NodeFamily family = NodeFamily::Equispaced;
  bool adaptive = false;
  double epsilon = 1e-8;  // adaptive only
  int p_max = 15;  // adaptive only

  /// "bDeCu5-eq", or "adaptive-bDeCdu-eq(1e-08)" for adaptive schemes.
  std::string label() const;
};

/// "bdec", "sdecu", "decdu" (with the alpha argument), ... Throws
/// InvalidParameters for unknown names.
std::pair<Variant, double> parse_variant(const std::string& name, double alpha);

struct ConvergenceRow {
  double dt = 0.0;
  double error = 0.0;  // Euclidean norm at T
  long rhs_evaluations = 0;
  double mean_p = 0.0;  // adaptive only
  double std_p = 0.0;
  bool failed = false;
  std::string failure;
  double slope = 0.0;  // against the previous row; 0 on the first row
};

struct ConvergenceSeries {
  SchemeSpec scheme;
  std::vector<ConvergenceRow> rows;  // decreasing dt
  /// Least-squares slope of log2(error) against log2(dt) over the rows that
  /// did not fail; NaN with fewer than two such rows.
  double slope = 0.0;
};

struct ConvergenceReport {
  std::string problem;
  std::vector<ConvergenceSeries> series;
};

/// Default step sequence (T - t0) / 2^k for k = first..last.
std::vector<double> halving_sequence(double span, int first = 3, int last = 9);

/// One integration per (scheme, dt) cell, run concurrently. A failing cell
/// is recorded in its row and does not stop the sweep.
ConvergenceReport run_convergence(const TestProblem& problem, const std::vector<SchemeSpec>& schemes,
                                  std::vector<double> dts);

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);

void write_convergence_csv(const ConvergenceReport& report, std::ostream& os);
ConvergenceReport read_convergence_csv(std::istream& is);
void write_convergence_json(const ConvergenceReport& report, std::ostream& os);

struct SpeedupRow {
  int order = 0;
  long base_evaluations = 0;  // per step
  long efficient_evaluations = 0;
  double ratio = 0.0;
};

/// Measured right-hand side evaluations of one step of each scheme; the
/// order and node family in `base` and `efficient` are overridden per row.
std::vector<SpeedupRow> run_speedup(const TestProblem& problem, const SchemeSpec& base,
                                    const SchemeSpec& efficient, const std::vector<int>& orders);

void write_speedup_csv(const std::vector<SpeedupRow>& rows, std::ostream& os);
void write_speedup_json(const std::vector<SpeedupRow>& rows, std::ostream& os);

/// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(int n, const std::function<void(int)>& fn);

/// printf("%.17g")
std::string format_double(double x);

}  // namespace dec
