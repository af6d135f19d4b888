#include "dec/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dec/errors.hpp"

namespace dec {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string SchemeSpec::label() const {
  SchemePlan stub;
  stub.variant = variant;
  stub.alpha = alpha;
  stub.order = order;
  stub.node_family = family;
  if (!adaptive) return stub.name();
  std::string name = stub.name();
  // drop the order digits: the adaptive scheme picks its own order
  const auto dash = name.rfind('-');
  auto end = dash;
  while (end > 0 && std::isdigit(static_cast<unsigned char>(name[end - 1]))) --end;
  char eps[32];
  std::snprintf(eps, sizeof eps, "%g", epsilon);
  return "adaptive-" + name.substr(0, end) + name.substr(dash) + "(" + eps + ")";
}

std::pair<Variant, double> parse_variant(const std::string& name, double alpha) {
  std::string lower;
  for (char ch : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  double a = alpha;
  std::string rest;
  if (lower.rfind("bdec", 0) == 0) {
    a = 0.0;
    rest = lower.substr(4);
  } else if (lower.rfind("sdec", 0) == 0) {
    a = 1.0;
    rest = lower.substr(4);
  } else if (lower.rfind("dec", 0) == 0) {
    rest = lower.substr(3);
  } else {
    throw InvalidParameters("unknown variant '" + name + "'");
  }
  if (rest.empty()) return {Variant::AlphaDec, a};
  if (rest == "u") return {Variant::AlphaDecU, a};
  if (rest == "du") return {Variant::AlphaDecDu, a};
  throw InvalidParameters("unknown variant '" + name + "'");
}

std::vector<double> halving_sequence(double span, int first, int last) {
  std::vector<double> out;
  for (int k = first; k <= last; ++k) out.push_back(span / std::ldexp(1.0, k));
  return out;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min<int>(n, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

std::string sanitize(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

void finish_series(ConvergenceSeries& s) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> x, y;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    auto& row = s.rows[i];
    if (i == 0) {
      row.slope = 0.0;
    } else {
      const auto& prev = s.rows[i - 1];
      row.slope = prev.failed || row.failed
                      ? nan
                      : std::log2(prev.error / row.error) / std::log2(prev.dt / row.dt);
    }
    if (!row.failed) {
      x.push_back(std::log2(row.dt));
      y.push_back(std::log2(row.error));
    }
  }
  s.slope = least_squares_slope(x, y);
}

ConvergenceRow run_cell(const TestProblem& problem, const SchemeSpec& scheme, double dt) {
  ConvergenceRow row;
  row.dt = dt;
  try {
    Vector final_state;
    if (scheme.adaptive) {
      AdaptiveConfig cfg{scheme.variant, scheme.alpha, scheme.epsilon, scheme.p_max, scheme.family};
      const auto res = adaptive_integrate(cfg, problem.system, problem.t0, problem.u0, problem.T, dt);
      final_state = res.trajectory.states.back();
      row.rhs_evaluations = res.trajectory.rhs_evaluations;
      row.mean_p = res.mean_p;
      row.std_p = res.std_p;
    } else {
      const SchemePlan plan = plan_scheme(scheme.variant, scheme.alpha, scheme.order, scheme.family);
      const auto traj = integrate(plan, problem.system, problem.t0, problem.u0, problem.T, dt);
      final_state = traj.states.back();
      row.rhs_evaluations = traj.rhs_evaluations;
    }
    row.error = (final_state - problem.exact(problem.T)).norm();
    if (!std::isfinite(row.error)) throw NumericalFailure(problem.T, 0, 0, "non-finite error");
  } catch (const std::exception& e) {
    row.failed = true;
    row.failure = sanitize(e.what());
    row.error = std::numeric_limits<double>::quiet_NaN();
  }
  return row;
}

}  // namespace

ConvergenceReport run_convergence(const TestProblem& problem, const std::vector<SchemeSpec>& schemes,
                                  std::vector<double> dts) {
  if (dts.empty()) throw InvalidParameters("need at least one step size");
  std::sort(dts.begin(), dts.end(), std::greater<>());
  ConvergenceReport report;
  report.problem = problem.name;
  report.series.resize(schemes.size());
  const int per = static_cast<int>(dts.size());
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    report.series[s].scheme = schemes[s];
    report.series[s].rows.resize(per);
  }
  parallel_for(static_cast<int>(schemes.size()) * per, [&](int cell) {
    const int s = cell / per;
    const int k = cell % per;
    report.series[s].rows[k] = run_cell(problem, schemes[s], dts[k]);
  });
  for (auto& s : report.series) finish_series(s);
  return report;
}

namespace {

const char* kConvergenceHeader =
    "problem,scheme,variant,alpha,order,nodes,adaptive,epsilon,p_max,dt,error,rhs_evaluations,"
    "mean_p,std_p,status,slope,ls_slope";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Variant variant_from_string(const std::string& s) {
  if (s == "DeC") return Variant::AlphaDec;
  if (s == "DeCu") return Variant::AlphaDecU;
  if (s == "DeCdu") return Variant::AlphaDecDu;
  throw InvalidParameters("unknown variant '" + s + "' in report");
}

}  // namespace

void write_convergence_csv(const ConvergenceReport& report, std::ostream& os) {
  os << kConvergenceHeader << '\n';
  for (const auto& s : report.series) {
    const auto& sc = s.scheme;
    for (const auto& row : s.rows) {
      os << report.problem << ',' << sc.label() << ',' << to_string(sc.variant) << ','
         << format_double(sc.alpha) << ',' << sc.order << ',' << to_string(sc.family) << ','
         << (sc.adaptive ? 1 : 0) << ',' << format_double(sc.epsilon) << ',' << sc.p_max << ','
         << format_double(row.dt) << ',' << format_double(row.error) << ','
         << row.rhs_evaluations << ',' << format_double(row.mean_p) << ','
         << format_double(row.std_p) << ',' << (row.failed ? "failed: " + row.failure : "ok")
         << ',' << format_double(row.slope) << ',' << format_double(s.slope) << '\n';
    }
  }
}

ConvergenceReport read_convergence_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kConvergenceHeader) {
    throw InvalidParameters("not a convergence report");
  }
  ConvergenceReport report;
  std::map<std::string, std::size_t> index;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 17) throw InvalidParameters("malformed report line: " + line);
    report.problem = f[0];
    auto it = index.find(f[1]);
    if (it == index.end()) {
      ConvergenceSeries s;
      s.scheme.variant = variant_from_string(f[2]);
      s.scheme.alpha = std::stod(f[3]);
      s.scheme.order = std::stoi(f[4]);
      s.scheme.family = parse_node_family(f[5]);
      s.scheme.adaptive = f[6] == "1";
      s.scheme.epsilon = std::stod(f[7]);
      s.scheme.p_max = std::stoi(f[8]);
      s.slope = std::stod(f[16]);
      it = index.emplace(f[1], report.series.size()).first;
      report.series.push_back(std::move(s));
    }
    ConvergenceRow row;
    row.dt = std::stod(f[9]);
    row.error = std::stod(f[10]);
    row.rhs_evaluations = std::stol(f[11]);
    row.mean_p = std::stod(f[12]);
    row.std_p = std::stod(f[13]);
    if (f[14] != "ok") {
      row.failed = true;
      row.failure = f[14].substr(std::string("failed: ").size());
    }
    row.slope = std::stod(f[15]);
    report.series[it->second].rows.push_back(row);
  }
  return report;
}

namespace {

nlohmann::json number(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr);
}

}  // namespace

void write_convergence_json(const ConvergenceReport& report, std::ostream& os) {
  nlohmann::json j;
  j["problem"] = report.problem;
  j["series"] = nlohmann::json::array();
  for (const auto& s : report.series) {
    nlohmann::json js;
    js["scheme"] = s.scheme.label();
    js["variant"] = to_string(s.scheme.variant);
    js["alpha"] = s.scheme.alpha;
    js["order"] = s.scheme.order;
    js["nodes"] = to_string(s.scheme.family);
    js["adaptive"] = s.scheme.adaptive;
    js["slope"] = number(s.slope);
    js["rows"] = nlohmann::json::array();
    for (const auto& r : s.rows) {
      nlohmann::json jr{{"dt", r.dt},
                        {"error", number(r.error)},
                        {"rhs_evaluations", r.rhs_evaluations},
                        {"slope", number(r.slope)}};
      if (s.scheme.adaptive) {
        jr["mean_p"] = r.mean_p;
        jr["std_p"] = r.std_p;
      }
      if (r.failed) jr["failure"] = r.failure;
      js["rows"].push_back(jr);
    }
    j["series"].push_back(js);
  }
  os << j.dump(2) << '\n';
}

std::vector<SpeedupRow> run_speedup(const TestProblem& problem, const SchemeSpec& base,
                                    const SchemeSpec& efficient, const std::vector<int>& orders) {
  if (base.family != efficient.family) {
    throw InvalidParameters("speed-up schemes must share the node family");
  }
  const double dt = (problem.T - problem.t0) / 8.0;
  std::vector<SpeedupRow> rows;
  for (int order : orders) {
    const auto count = [&](const SchemeSpec& s) {
      const SchemePlan plan = plan_scheme(s.variant, s.alpha, order, s.family);
      return step(plan, problem.system, problem.t0, problem.u0, dt).rhs_evaluations;
    };
    SpeedupRow row;
    row.order = order;
    row.base_evaluations = count(base);
    row.efficient_evaluations = count(efficient);
    row.ratio = static_cast<double>(row.base_evaluations) / row.efficient_evaluations;
    rows.push_back(row);
  }
  return rows;
}

void write_speedup_csv(const std::vector<SpeedupRow>& rows, std::ostream& os) {
  os << "order,base_evaluations,efficient_evaluations,speedup\n";
  for (const auto& r : rows) {
    os << r.order << ',' << r.base_evaluations << ',' << r.efficient_evaluations << ','
       << format_double(r.ratio) << '\n';
  }
}

void write_speedup_json(const std::vector<SpeedupRow>& rows, std::ostream& os) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rows) {
    j.push_back({{"order", r.order},
                 {"base_evaluations", r.base_evaluations},
                 {"efficient_evaluations", r.efficient_evaluations},
                 {"speedup", r.ratio}});
  }
  os << j.dump(2) << '\n';
}

}  // namespace dec
