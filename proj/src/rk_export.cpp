#include "dec/rk_export.hpp"

#include <cstdio>

#include "dec/errors.hpp"

namespace dec {

namespace {

// Stage-coefficient rows of a set of states: row m holds a(m, j) so that
// state_m = u_n + dt * sum_j a(m, j) k_j. Grown as stages are appended.
class Builder {
 public:
  int add_stage(const std::vector<double>& row, int block) {
    rows_.push_back(row);
    block_.push_back(block);
    return static_cast<int>(rows_.size()) - 1;
  }
  int size() const { return static_cast<int>(rows_.size()); }

  ButcherTableau finish(const std::vector<double>& b) const {
    ButcherTableau tab;
    const int S = size();
    tab.stages = S;
    tab.A = Matrix::Zero(S, S);
    tab.b = Vector::Zero(S);
    for (int i = 0; i < S; ++i) {
      for (int j = 0; j < static_cast<int>(rows_[i].size()); ++j) tab.A(i, j) = rows_[i][j];
    }
    for (int j = 0; j < static_cast<int>(b.size()); ++j) tab.b(j) = b[j];
    tab.c = tab.A.rowwise().sum();
    tab.block = block_;
    return tab;
  }

 private:
  std::vector<std::vector<double>> rows_;
  std::vector<int> block_;
};

using Rows = std::vector<std::vector<double>>;

void axpy(std::vector<double>& y, double a, const std::vector<double>& x) {
  if (y.size() < x.size()) y.resize(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) y[j] += a * x[j];
}

std::vector<double> unit(int j) {
  std::vector<double> e(j + 1, 0.0);
  e[j] = 1.0;
  return e;
}

}  // namespace

ButcherTableau build_tableau(const SchemePlan& plan) {
  if (!plan.euler_first_iteration) {
    throw UnsupportedExport("tableau export needs the Euler first iteration");
  }
  if (plan.variant == Variant::AlphaDecU && plan.alpha != 0.0) {
    throw UnsupportedExport("DeCu with alpha != 0 has no reduced tableau");
  }
  const int P = plan.iteration_count();
  const bool implicit = plan.alpha != 0.0;
  Builder builder;
  builder.add_stage({}, 0);

  // Iteration 1: u^{m,(1)} = u_n + dt beta_m k_0.
  const auto& first = plan.iterations[0];
  Rows rows(first.node_count());
  for (int m = 1; m < first.node_count(); ++m) rows[m] = {first.coeffs.beta(m)};

  // source[l]: stage combination whose k feeds node l of the next iteration
  Rows source;
  for (int p = 2; p <= P; ++p) {
    const auto& it = plan.iterations[p - 1];
    const int n = it.node_count();
    const int n_prev = static_cast<int>(rows.size());
    // states of iteration p - 1 that are evaluated here; for alpha != 0 the
    // first n_prev - 1 of them are stages already
    if (it.interpolate_before && plan.variant == Variant::AlphaDecU) {
      source.assign(n, {});
      source[0] = unit(0);
      for (int i = 1; i < n; ++i) {
        std::vector<double> w;
        for (int m = 1; m < n_prev; ++m) axpy(w, it.interp(i, m), rows[m]);
        source[i] = unit(builder.add_stage(w, p - 1));
      }
    } else {
      Rows evaluated(n_prev);
      evaluated[0] = unit(0);
      for (int m = 1; m < n_prev; ++m) {
        evaluated[m] = source.empty() || !implicit || m == n_prev - 1
                           ? unit(builder.add_stage(rows[m], p - 1))
                           : source[m];
      }
      if (it.interpolate_before) {
        source.assign(n, {});
        for (int i = 0; i < n; ++i) {
          for (int m = 0; m < n_prev; ++m) axpy(source[i], it.interp(i, m), evaluated[m]);
        }
      } else {
        source = evaluated;
      }
    }

    // new states: explicit part on the sources, implicit part on the new
    // states of this iteration, which become stages as soon as they are used
    Rows next(n);
    Rows next_stage(n);
    next_stage[0] = unit(0);
    for (int m = 1; m < n; ++m) {
      for (int l = 0; l < n; ++l) axpy(next[m], it.explicit_part(m, l), source[l]);
      if (implicit) {
        for (int l = 0; l < m; ++l) axpy(next[m], it.implicit_part(m, l), next_stage[l]);
        if (m < n - 1) next_stage[m] = unit(builder.add_stage(next[m], p));
      }
    }
    rows = std::move(next);
    // for alpha != 0 the stages made for nodes 1..n-2 stand in for those states
    source = implicit ? next_stage : Rows{};
  }

  ButcherTableau tab = builder.finish(rows.back());
  tab.order = plan.order;
  tab.variant = plan.name();
  tab.family = plan.node_family;
  return tab;
}

int stage_count(Variant variant, bool alpha_zero, int order, NodeFamily family) {
  const int M = optimal_subintervals(family, order);
  const int P = order;
  switch (variant) {
    case Variant::AlphaDec:
      return alpha_zero ? M * (P - 1) + 1 : M * P;
    case Variant::AlphaDecU:
      return alpha_zero ? M * (P - 1) + 1 - (M - 1) * (M - 2) / 2 : M * P;
    case Variant::AlphaDecDu:
      return alpha_zero ? M * (P - 1) + 1 - M * (M - 1) / 2 : M * P - M * (M - 1) / 2;
  }
  return 0;
}

Vector apply_tableau(const ButcherTableau& tab, const OdeSystem& sys, double t_n,
                     const Vector& u_n, double dt) {
  const int S = tab.stages;
  std::vector<Vector> k(S);
  for (int i = 0; i < S; ++i) {
    Vector u = u_n;
    for (int j = 0; j < i; ++j) {
      if (tab.A(i, j) != 0.0) u += dt * tab.A(i, j) * k[j];
    }
    k[i] = sys.rhs(t_n + tab.c(i) * dt, u);
    if (!k[i].allFinite()) {
      throw NumericalFailure(t_n + tab.c(i) * dt, 0, i, "non-finite right-hand side");
    }
  }
  Vector u = u_n;
  for (int j = 0; j < S; ++j) u += dt * tab.b(j) * k[j];
  return u;
}

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void write_tableau_json(const ButcherTableau& tab, std::ostream& os) {
  os << "{\n  \"order\": " << tab.order << ",\n  \"variant\": \"" << tab.variant
     << "\",\n  \"nodes\": \"" << to_string(tab.family) << "\",\n  \"S\": " << tab.stages
     << ",\n  \"A\": [";
  for (int i = 0; i < tab.stages; ++i) {
    os << (i ? ",\n    [" : "\n    [");
    for (int j = 0; j < tab.stages; ++j) os << (j ? ", " : "") << num(tab.A(i, j));
    os << ']';
  }
  os << "\n  ],\n  \"b\": [";
  for (int j = 0; j < tab.stages; ++j) os << (j ? ", " : "") << num(tab.b(j));
  os << "],\n  \"c\": [";
  for (int j = 0; j < tab.stages; ++j) os << (j ? ", " : "") << num(tab.c(j));
  os << "]\n}\n";
}

}  // namespace dec
