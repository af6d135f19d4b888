// dec-bench: convergence sweeps, stage counts, tableaux, stability regions and
// the 1D advection solver from the command line.
//
// Exit status: 0 success, 1 usage error, 2 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "dec/bench.hpp"
#include "dec/cg1d.hpp"
#include "dec/errors.hpp"
#include "dec/rk_export.hpp"
#include "dec/stability.hpp"

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;

struct Global {
  std::string out;
  bool json = false;
};

// Writes to --out (or stdout); with --json a JSON mirror goes to <out>.json,
// or replaces the CSV on stdout when there is no --out.
template <class Csv, class Json>
void emit(const Global& g, Csv csv, Json json) {
  if (g.out.empty()) {
    if (g.json) {
      json(std::cout);
    } else {
      csv(std::cout);
    }
    return;
  }
  std::ofstream os(g.out);
  if (!os) throw std::runtime_error("cannot open " + g.out);
  csv(os);
  if (g.json) {
    std::ofstream js(g.out + ".json");
    json(js);
  }
}

struct SchemeOptions {
  std::string variant = "bdec";
  double alpha = 0.0;
  int order = 3;
  std::string nodes = "eq";

  void add(CLI::App* app) {
    app->add_option("--variant", variant, "bdec|bdecu|bdecdu|sdec|sdecu|sdecdu|dec|decu|decdu")
        ->capture_default_str();
    app->add_option("--alpha", alpha, "alpha for dec|decu|decdu")->capture_default_str();
    app->add_option("--order", order, "order P")->capture_default_str();
    app->add_option("--nodes", nodes, "eq|gl")->capture_default_str();
  }

  dec::SchemePlan plan() const {
    const auto [v, a] = dec::parse_variant(variant, alpha);
    return dec::plan_scheme(v, a, order, dec::parse_node_family(nodes));
  }
};

int cmd_solve(const Global& g, const std::string& problem_name, const SchemeOptions& so,
              double dt, bool adaptive, double eps, int p_max) {
  const dec::TestProblem problem = dec::problem_by_name(problem_name);
  dec::Trajectory traj;
  double mean_p = 0.0, std_p = 0.0;
  if (adaptive) {
    const auto [v, a] = dec::parse_variant(so.variant, so.alpha);
    dec::AdaptiveConfig cfg{v, a, eps, p_max, dec::parse_node_family(so.nodes)};
    auto res = dec::adaptive_integrate(cfg, problem.system, problem.t0, problem.u0, problem.T, dt);
    traj = std::move(res.trajectory);
    mean_p = res.mean_p;
    std_p = res.std_p;
  } else {
    traj = dec::integrate(so.plan(), problem.system, problem.t0, problem.u0, problem.T, dt);
  }
  const double error = (traj.states.back() - problem.exact(problem.T)).norm();
  emit(
      g,
      [&](std::ostream& os) {
        os << "t";
        for (int q = 0; q < problem.system.dimension; ++q) os << ",u" << q;
        os << '\n';
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
          os << dec::format_double(traj.times[k]);
          for (int q = 0; q < problem.system.dimension; ++q) {
            os << ',' << dec::format_double(traj.states[k](q));
          }
          os << '\n';
        }
        std::cerr << "error=" << dec::format_double(error)
                  << " rhs_evaluations=" << traj.rhs_evaluations;
        if (adaptive) std::cerr << " mean_p=" << mean_p << " std_p=" << std_p;
        std::cerr << '\n';
      },
      [&](std::ostream& os) {
        nlohmann::json j{{"problem", problem.name},
                         {"error", error},
                         {"rhs_evaluations", traj.rhs_evaluations},
                         {"times", traj.times}};
        if (adaptive) {
          j["mean_p"] = mean_p;
          j["std_p"] = std_p;
        }
        nlohmann::json states = nlohmann::json::array();
        for (const auto& s : traj.states) states.push_back(std::vector<double>(s.begin(), s.end()));
        j["states"] = states;
        os << j.dump(2) << '\n';
      });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deferred correction time integrators: benchmarks and exports"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with option values; flags override it");
  Global g;
  app.add_option("--out", g.out, "output file (CSV; JSON path for tableau; prefix for stability)");
  app.add_flag("--json", g.json, "JSON output (mirror next to --out, or on stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "integrate a test problem");
  SchemeOptions solve_scheme;
  solve_scheme.add(solve);
  std::string solve_problem = "linear";
  double solve_dt = 1.0 / 32;
  bool solve_adaptive = false;
  double solve_eps = 1e-8;
  int solve_pmax = 15;
  solve->add_option("--problem", solve_problem, "linear|vibrating|dahlquist")->capture_default_str();
  solve->add_option("--dt", solve_dt, "step size")->capture_default_str();
  solve->add_flag("--adaptive", solve_adaptive, "p-adaptive stepping (decu/decdu variants)");
  solve->add_option("--eps", solve_eps, "adaptive tolerance")->capture_default_str();
  solve->add_option("--p-max", solve_pmax, "adaptive iteration cap")->capture_default_str();

  // convergence
  auto* conv = app.add_subcommand("convergence", "error against dt for several schemes");
  std::string conv_problem = "linear";
  std::vector<std::string> conv_variants{"bdec"};
  std::vector<int> conv_orders{3};
  std::vector<std::string> conv_nodes{"eq"};
  double conv_alpha = 0.0;
  int kmin = 3, kmax = 9;
  std::vector<double> conv_dts;
  bool conv_adaptive = false;
  double conv_eps = 1e-8;
  int conv_pmax = 15;
  conv->add_option("--problem", conv_problem, "linear|vibrating|dahlquist")->capture_default_str();
  conv->add_option("--variant", conv_variants, "one or more variants")->capture_default_str();
  conv->add_option("--order", conv_orders, "one or more orders")->capture_default_str();
  conv->add_option("--nodes", conv_nodes, "one or more node families")->capture_default_str();
  conv->add_option("--alpha", conv_alpha, "alpha for dec|decu|decdu")->capture_default_str();
  conv->add_option("--kmin", kmin, "dt = T/2^k from kmin")->capture_default_str();
  conv->add_option("--kmax", kmax, "... to kmax")->capture_default_str();
  conv->add_option("--dt", conv_dts, "explicit step sizes (overrides kmin/kmax)");
  conv->add_flag("--adaptive", conv_adaptive, "p-adaptive schemes instead of fixed orders");
  conv->add_option("--eps", conv_eps, "adaptive tolerance")->capture_default_str();
  conv->add_option("--p-max", conv_pmax, "adaptive iteration cap")->capture_default_str();

  // speedup
  auto* speed = app.add_subcommand("speedup", "rhs evaluation ratio of two schemes");
  std::string sp_problem = "linear", sp_base = "bdec", sp_eff = "bdecdu", sp_nodes = "eq";
  double sp_alpha = 0.0;
  std::vector<int> sp_orders{2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  speed->add_option("--problem", sp_problem, "linear|vibrating|dahlquist")->capture_default_str();
  speed->add_option("--base", sp_base, "reference variant")->capture_default_str();
  speed->add_option("--efficient", sp_eff, "compared variant")->capture_default_str();
  speed->add_option("--alpha", sp_alpha, "alpha for dec|decu|decdu")->capture_default_str();
  speed->add_option("--orders", sp_orders, "orders")->capture_default_str();
  speed->add_option("--nodes", sp_nodes, "eq|gl")->capture_default_str();

  // tableau
  auto* tab = app.add_subcommand("tableau", "export the Butcher tableau as JSON");
  SchemeOptions tab_scheme;
  tab_scheme.add(tab);

  // stability
  auto* stab = app.add_subcommand("stability", "stability polynomial and region grid");
  SchemeOptions stab_scheme;
  stab_scheme.add(stab);
  std::vector<double> grid{-12, 2, -12, 12, 600, 600};
  stab->add_option("--grid", grid, "re0,re1,im0,im1,nx,ny")->delimiter(',')->expected(6);

  // pde1d
  auto* pde = app.add_subcommand("pde1d", "periodic linear advection with continuous Galerkin");
  std::string basis = "b2", scheme = "bdec", mode = "auto";
  std::vector<int> elements{16, 32, 64, 128};
  double cfl = 0.1, T = 1.0;
  int pde_order = 0;
  double cip = -1.0;
  pde->add_option("--basis", basis, "b2|b3|b4|p2|p3|p4|pgl2|pgl3|pgl4")->capture_default_str();
  pde->add_option("--elements", elements, "element counts")->capture_default_str();
  pde->add_option("--cfl", cfl, "dt = cfl * h")->capture_default_str();
  pde->add_option("--cip", cip, "CIP coefficient (default: tuned value of the basis)");
  pde->add_option("--scheme", scheme, "bdec|bdecu")->capture_default_str();
  pde->add_option("--order", pde_order, "time order (default degree + 1)");
  pde->add_option("--mode", mode, "auto|massfree|ode")->capture_default_str();
  pde->add_option("--T", T, "final time")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*solve) {
      return cmd_solve(g, solve_problem, solve_scheme, solve_dt, solve_adaptive, solve_eps,
                       solve_pmax);
    }

    if (*conv) {
      const dec::TestProblem problem = dec::problem_by_name(conv_problem);
      std::vector<dec::SchemeSpec> schemes;
      for (const auto& nodes : conv_nodes) {
        for (const auto& name : conv_variants) {
          const auto [v, a] = dec::parse_variant(name, conv_alpha);
          const auto family = dec::parse_node_family(nodes);
          if (conv_adaptive) {
            schemes.push_back({v, a, 0, family, true, conv_eps, conv_pmax});
            continue;
          }
          for (int order : conv_orders) schemes.push_back({v, a, order, family});
        }
      }
      const auto dts = conv_dts.empty() ? dec::halving_sequence(problem.T - problem.t0, kmin, kmax)
                                        : conv_dts;
      const auto report = dec::run_convergence(problem, schemes, dts);
      emit(
          g, [&](std::ostream& os) { dec::write_convergence_csv(report, os); },
          [&](std::ostream& os) { dec::write_convergence_json(report, os); });
      for (const auto& s : report.series) {
        for (const auto& r : s.rows) {
          if (r.failed) return kNumerical;
        }
      }
      return 0;
    }

    if (*speed) {
      const dec::TestProblem problem = dec::problem_by_name(sp_problem);
      const auto family = dec::parse_node_family(sp_nodes);
      const auto [bv, ba] = dec::parse_variant(sp_base, sp_alpha);
      const auto [ev, ea] = dec::parse_variant(sp_eff, sp_alpha);
      const auto rows = dec::run_speedup(problem, {bv, ba, 2, family}, {ev, ea, 2, family},
                                         sp_orders);
      emit(
          g, [&](std::ostream& os) { dec::write_speedup_csv(rows, os); },
          [&](std::ostream& os) { dec::write_speedup_json(rows, os); });
      return 0;
    }

    if (*tab) {
      const auto tableau = dec::build_tableau(tab_scheme.plan());
      if (g.out.empty()) {
        dec::write_tableau_json(tableau, std::cout);
      } else {
        std::ofstream os(g.out);
        if (!os) throw std::runtime_error("cannot open " + g.out);
        dec::write_tableau_json(tableau, os);
      }
      return 0;
    }

    if (*stab) {
      if (g.out.empty()) throw CLI::RequiredError("--out <prefix>");
      const auto poly = dec::stability_polynomial(stab_scheme.plan());
      const auto region = dec::region_grid(poly, grid[0], grid[1], grid[2], grid[3],
                                           static_cast<int>(grid[4]), static_cast<int>(grid[5]));
      std::ofstream csv(g.out + ".csv");
      std::ofstream pgm(g.out + ".pgm", std::ios::binary);
      if (!csv || !pgm) throw std::runtime_error("cannot open output files at " + g.out);
      dec::write_grid_csv(region, csv);
      dec::write_grid_pgm(region, pgm);
      if (g.json) {
        std::ofstream js(g.out + ".json");
        js << nlohmann::json{{"coefficients", poly.coefficients}}.dump(2) << '\n';
      }
      for (std::size_t r = 0; r < poly.coefficients.size(); ++r) {
        std::cout << r << ',' << dec::format_double(poly.coefficients[r]) << '\n';
      }
      return 0;
    }

    if (*pde) {
      dec::PdeRunConfig cfg;
      cfg.basis = dec::parse_basis(basis);
      cfg.cfl = cfl;
      cfg.T = T;
      cfg.delta_cip = cip >= 0.0 ? cip : dec::default_cip(cfg.basis);
      cfg.order = pde_order;
      if (scheme == "bdec") {
        cfg.scheme = dec::PdeScheme::BDec;
      } else if (scheme == "bdecu") {
        cfg.scheme = dec::PdeScheme::BDecU;
      } else {
        throw dec::InvalidParameters("unknown PDE scheme '" + scheme + "'");
      }
      if (mode == "auto") {
        cfg.mode = dec::PdeMode::Auto;
      } else if (mode == "massfree") {
        cfg.mode = dec::PdeMode::MassFree;
      } else if (mode == "ode") {
        cfg.mode = dec::PdeMode::Ode;
      } else {
        throw dec::InvalidParameters("unknown mode '" + mode + "'");
      }
      std::vector<dec::PdeResult> results(elements.size());
      dec::parallel_for(static_cast<int>(elements.size()), [&](int i) {
        dec::PdeRunConfig c = cfg;
        c.n_elements = elements[i];
        results[i] = dec::run_pde(c);
      });
      emit(
          g,
          [&](std::ostream& os) {
            os << "N,h,L1_error,L2_error,Linf_error,residual_evals\n";
            for (const auto& r : results) {
              os << r.n_elements << ',' << dec::format_double(r.h) << ','
                 << dec::format_double(r.errors.l1) << ',' << dec::format_double(r.errors.l2)
                 << ',' << dec::format_double(r.errors.linf) << ',' << r.residual_evaluations
                 << '\n';
            }
          },
          [&](std::ostream& os) {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& r : results) {
              j.push_back({{"N", r.n_elements},
                           {"h", r.h},
                           {"L1_error", r.errors.l1},
                           {"L2_error", r.errors.l2},
                           {"Linf_error", r.errors.linf},
                           {"residual_evals", r.residual_evaluations}});
            }
            os << j.dump(2) << '\n';
          });
      for (const auto& r : results) {
        if (!std::isfinite(r.errors.l2)) return kNumerical;
      }
      return 0;
    }
  } catch (const dec::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return 0;
}
