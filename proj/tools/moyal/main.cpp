// Copyright 2026 The Moyal Trajectories Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "moyal/classical_flow.hpp"
#include "moyal/error.hpp"
#include "moyal/example1.hpp"
#include "moyal/expr.hpp"
#include "moyal/expr_brackets.hpp"
#include "moyal/polynomial.hpp"
#include "moyal/semiclassical.hpp"
#include "moyal/suites.hpp"

namespace {

using moyal::Bindings;
using moyal::Expr;
using moyal::PhasePolynomial;
using json = nlohmann::ordered_json;

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Numeric parameters kept as exact text so exact commands stay exact.
struct Params {
  std::map<std::string, std::string> text = {{"m", "1"},    {"l", "1"},     {"lambda", "1"}, {"omega", "1"},
                                             {"beta", "1"}, {"gamma", "1"}, {"hbar", "0.1"}};

  moyal::ExactScalar exact(const std::string& name) const { return moyal::ExactScalar(moyal::parse_rational(text.at(name))); }
  double number(const std::string& name) const { return moyal::to_double(moyal::parse_rational(text.at(name))); }

  /// Exact substitution of every parameter except those listed.
  moyal::Substitution substitution(const std::vector<std::string>& skip = {}) const {
    moyal::Substitution s;
    for (const auto& [name, value] : text) {
      if (std::find(skip.begin(), skip.end(), name) != skip.end()) continue;
      s.emplace(name, Expr(exact(name)));
    }
    return s;
  }

  Bindings bindings() const {
    Bindings b;
    for (const auto& [name, value] : text) b[name] = number(name);
    return b;
  }
};

void add_params(CLI::App* cmd, Params& params, const std::vector<std::string>& names) {
  for (const std::string& name : names) {
    cmd->add_option("--" + name, params.text[name], name + " (exact decimal or rational)")->capture_default_str();
  }
}

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 4;

  std::vector<double> times() const {
    std::vector<double> out;
    for (int k = 0; k <= steps; ++k) out.push_back(k == steps ? t1 : t0 + (t1 - t0) * k / steps);
    return out;
  }
};

void add_grid(CLI::App* cmd, TimeGrid& grid) {
  cmd->add_option("--t0", grid.t0, "first time")->capture_default_str();
  cmd->add_option("--t1", grid.t1, "last time")->capture_default_str();
  cmd->add_option("--t-steps", grid.steps, "number of time intervals")->capture_default_str()->check(CLI::PositiveNumber);
}

void add_format(CLI::App* cmd, std::string& format, const std::vector<std::string>& allowed, const std::string& def) {
  format = def;
  cmd->add_option("--format", format, "output format")->check(CLI::IsMember(allowed))->capture_default_str();
}

/// Rows of string cells printed as csv, json (array of objects) or aligned text.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string render(const std::string& format) const {
    std::ostringstream out;
    if (format == "csv") {
      for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
      }
    } else if (format == "json") {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[header[i]] = row[i];
        arr.push_back(obj);
      }
      out << arr.dump(2) << '\n';
    } else {
      std::vector<std::size_t> width(header.size());
      for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
      }
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
          out << (i ? "  " : "") << cells[i] << std::string(width[i] - cells[i].size(), ' ');
        }
        out << '\n';
      };
      line(header);
      for (const auto& row : rows) line(row);
    }
    return out.str();
  }
};

// ---------------------------------------------------------------- star

struct StarArgs {
  std::string f;
  std::string g;
  std::optional<unsigned> grade;
  std::string format;
};

int cmd_star(const StarArgs& a) {
  PhasePolynomial f = PhasePolynomial::parse(a.f);
  PhasePolynomial g = PhasePolynomial::parse(a.g);
  PhasePolynomial result;
  if (a.grade) {
    if (*a.grade > moyal::kDefaultBracketCap) throw moyal::CapExceeded("grade exceeds the cap " + std::to_string(moyal::kDefaultBracketCap));
    result = moyal::star_n(f, g, *a.grade);
  } else {
    result = moyal::star_product(f, g);
  }
  if (a.format == "json") {
    json j;
    j["f"] = f.str();
    j["g"] = g.str();
    j["grade"] = a.grade ? json(*a.grade) : json(nullptr);
    j["result"] = result.str();
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << result.str() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- bracket

struct BracketArgs {
  std::string f;
  std::string g;
  std::optional<unsigned> grade;
  bool numeric = false;
  unsigned depth = 8;
  double q0 = 0.5;
  double p0 = 0.5;
  double t = 0.0;
  double tol = 1e-12;
  unsigned cap = moyal::kDefaultBracketCap;
  std::string format;
  Params params;
};

int cmd_bracket(const BracketArgs& a) {
  if (!a.numeric) {
    PhasePolynomial f = PhasePolynomial::parse(a.f);
    PhasePolynomial g = PhasePolynomial::parse(a.g);
    PhasePolynomial result = a.grade ? moyal::bracket_2n(f, g, *a.grade) : moyal::moyal_bracket(f, g);
    if (a.format == "json") {
      json j;
      j["f"] = f.str();
      j["g"] = g.str();
      j["grade"] = a.grade ? json(*a.grade) : json(nullptr);
      j["result"] = result.str();
      std::cout << j.dump(2) << '\n';
    } else {
      std::cout << result.str() << '\n';
    }
    return 0;
  }
  moyal::Substitution exact = a.params.substitution({"hbar"});
  Expr f = moyal::substitute(Expr::parse(a.f), exact);
  Expr g = moyal::substitute(Expr::parse(a.g), exact);
  Bindings at{{"q", a.q0}, {"p", a.p0}, {"t", a.t}, {"hbar", a.params.number("hbar")}};
  moyal::BracketReport r = moyal::moyal_bracket_truncated(f, g, a.depth, at, a.tol, a.cap);
  double poisson = moyal::eval_expr(moyal::poisson_expr(f, g), at).real();
  if (a.format == "json") {
    json j;
    j["f"] = f.str();
    j["g"] = g.str();
    j["q"] = a.q0;
    j["p"] = a.p0;
    j["t"] = a.t;
    j["hbar"] = at.at("hbar");
    j["poisson"] = poisson;
    json sums = json::array();
    for (const auto& s : r.partial_sums) sums.push_back({s.real(), s.imag()});
    j["partial_sums"] = sums;
    j["value"] = r.partial_sums.back().real();
    j["converged"] = r.converged;
    j["last_term_magnitude"] = r.last_term_magnitude;
    std::cout << j.dump(2) << '\n';
  } else {
    Table t{{"grade", "partial_sum_re", "partial_sum_im"}, {}};
    for (std::size_t n = 0; n < r.partial_sums.size(); ++n) {
      t.rows.push_back({std::to_string(2 * n), fmt(r.partial_sums[n].real()), fmt(r.partial_sums[n].imag())});
    }
    std::cout << t.render(a.format == "csv" ? "csv" : "text");
    if (a.format != "csv") {
      std::cout << "poisson " << fmt(poisson) << "\nconverged " << (r.converged ? "true" : "false") << "\nlast_term "
                << fmt(r.last_term_magnitude) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------------- hierarchy

struct HierarchyArgs {
  std::string hamiltonian = "q^2*p^2/(4*m*l^2)";
  double q0 = 1.0;
  double p0 = 1.0;
  TimeGrid grid{0.0, 0.3, 3};
  int quad_nodes = 64;
  std::optional<int> steps;
  unsigned depth = 0;
  std::string format;
  Params params;
};

int cmd_hierarchy(const HierarchyArgs& a) {
  Expr h = moyal::substitute(Expr::parse(a.hamiltonian), a.params.substitution({"hbar"}));
  moyal::HamiltonianSpec spec(h, {});
  moyal::Hbar2Options opt;
  opt.t0 = a.grid.t0;
  opt.quad_nodes_per_unit_time = a.quad_nodes;
  opt.samples = a.grid.steps;
  double span = a.grid.t1 - a.grid.t0;
  int steps = a.steps.value_or(moyal::default_steps(span));
  moyal::PhasePoint z0{a.q0, a.p0};
  std::vector<moyal::Hbar2Result> results = {moyal::hbar2_transport(spec, z0, a.grid.t1, opt),
                                             moyal::hbar2_ode(spec, z0, a.grid.t1, steps, opt)};
  if (a.depth > 0) {
    PhasePolynomial poly = moyal::to_polynomial(h);
    moyal::TimeTaylorFlow flow = moyal::taylor_flow(poly, a.depth, moyal::FlowKind::moyal);
    moyal::Hbar2Result series;
    series.method = "taylor";
    for (double t : a.grid.times()) {
      series.times.push_back(t);
      series.q2.push_back(flow.grade_value(0, 2, a.q0, a.p0, t - a.grid.t0));
      series.p2.push_back(flow.grade_value(1, 2, a.q0, a.p0, t - a.grid.t0));
    }
    results.push_back(series);
  }
  Table t{{"t", "Q2", "P2", "method"}, {}};
  for (const moyal::Hbar2Result& r : results) {
    for (std::size_t i = 0; i < r.times.size(); ++i) t.rows.push_back({fmt(r.times[i]), fmt(r.q2[i]), fmt(r.p2[i]), r.method});
  }
  std::cout << t.render(a.format);
  return 0;
}

// ---------------------------------------------------------------- example1

struct Example1Args {
  double q0 = 1.0;
  double p0 = 1.0;
  TimeGrid grid{0.0, 1.0, 4};
  unsigned depth = 6;
  double tol = 1e-12;
  std::string format;
  Params params;
};

int cmd_example1(const Example1Args& a) {
  const moyal::Example1& ex = moyal::builtin_example1();
  moyal::Substitution fixed = a.params.substitution({"hbar", "lambda", "omega", "beta", "gamma"});
  auto bind = [&](const Expr& e) { return moyal::substitute(e, fixed); };
  Expr qc = bind(ex.q_classical.expr);
  Expr pc = bind(ex.p_classical.expr);
  Expr qm = bind(ex.q_moyal.expr);
  Expr pm = bind(ex.p_moyal.expr);
  Expr poisson_c = moyal::poisson_expr(qc, pc);
  Expr poisson_m = moyal::poisson_expr(qm, pm);
  moyal::HamiltonianSpec spec(bind(ex.hamiltonian.expr), {});
  double hbar = a.params.number("hbar");
  Table t{{"q", "p", "t", "hbar", "Q_C", "P_C", "Q_M", "P_M", "poisson_C", "poisson_M", "moyal_C", "moyal_C_converged",
           "moyal_M", "moyal_M_converged", "residual", "Q2", "Q2_closed", "P2", "P2_closed"},
          {}};
  for (double time : a.grid.times()) {
    Bindings at = a.params.bindings();
    at["q"] = a.q0;
    at["p"] = a.p0;
    at["t"] = time;
    auto value = [&](const moyal::ClosedForm& f) { return f(at); };
    std::complex<double> qmv = value(ex.q_moyal);
    std::complex<double> pmv = value(ex.p_moyal);
    std::complex<double> residual = value(ex.a_moyal) - (qmv * pmv + std::complex<double>(0, hbar / 2));
    Bindings point{{"q", a.q0}, {"p", a.p0}, {"t", time}, {"hbar", hbar}};
    moyal::BracketReport mc = moyal::moyal_bracket_truncated(qc, pc, a.depth, point, a.tol);
    moyal::BracketReport mm = moyal::moyal_bracket_truncated(qm, pm, a.depth, point, a.tol);
    double q2 = 0.0;
    double p2 = 0.0;
    if (time != 0.0) {
      moyal::Hbar2Result r = moyal::hbar2_ode(spec, {a.q0, a.p0}, time, moyal::default_steps(time));
      q2 = r.q2.back();
      p2 = r.p2.back();
    }
    t.rows.push_back({fmt(a.q0), fmt(a.p0), fmt(time), fmt(hbar), fmt(value(ex.q_classical).real()),
                      fmt(value(ex.p_classical).real()), fmt(qmv.real()), fmt(pmv.real()),
                      fmt(moyal::eval_expr(poisson_c, point).real()), fmt(moyal::eval_expr(poisson_m, point).real()),
                      fmt(mc.partial_sums.back().real()), mc.converged ? "true" : "false",
                      fmt(mm.partial_sums.back().real()), mm.converged ? "true" : "false", fmt(residual.real()),
                      fmt(q2), fmt(value(ex.q2).real()), fmt(p2), fmt(value(ex.p2).real())});
  }
  std::cout << t.render(a.format);
  return 0;
}

// ---------------------------------------------------------------- example2

struct Example2Args {
  std::string potential = "m*omega^2*q^2/2 + lambda*q^4/24";
  unsigned depth = 7;
  std::optional<double> t1;
  double q0 = 1.0;
  double p0 = 0.0;
  Params params;
};

json report_json(const moyal::DivergenceReport& r) { return json::parse(r.to_json()); }

int cmd_example2(const Example2Args& a) {
  moyal::ExactScalar m = a.params.exact("m");
  Expr v = moyal::substitute(Expr::parse(a.potential), a.params.substitution({"hbar"}));
  PhasePolynomial vp = moyal::to_polynomial(v);
  PhasePolynomial h = PhasePolynomial::monomial({0, 2, 0}, moyal::ExactScalar(1) / (moyal::ExactScalar(2) * m)) + vp;
  moyal::potential_of(h, m);
  auto reports = moyal::divergence_order(h, a.depth, std::max(a.depth, moyal::kDefaultTaylorCap));
  json out;
  out["hamiltonian"] = h.str();
  out["depth"] = a.depth;
  out["series_convention"] = "difference is the t^n/n! coefficient; the t^n coefficient is difference/n!";
  out["reports"] = json::array({report_json(reports[0]), report_json(reports[1])});
  bool cubic = !vp.is_zero() && vp.degree() == 3;
  if (cubic) {
    moyal::CubicTermReport c = moyal::cubic_term_report(vp, m);
    json cj;
    cj["quoted"] = c.quoted.str();
    json seeds = json::array();
    for (std::size_t s = 0; s < 2; ++s) {
      json sj;
      sj["seed"] = s == 0 ? "q" : "p";
      sj["difference_order7"] = c.difference_order7[s].str();
      sj["first_divergent_order"] = c.first_divergent_order[s] ? json(*c.first_divergent_order[s]) : json(nullptr);
      sj["matches_quoted"] = c.matches_quoted[s];
      seeds.push_back(sj);
    }
    cj["seeds"] = seeds;
    out["cubic_term"] = cj;
  }
  if (a.t1) {
    moyal::HamiltonianSpec spec(Expr::from_polynomial(h), {});
    double t = *a.t1;
    moyal::Hbar2Result r = moyal::hbar2_ode(spec, {a.q0, a.p0}, t, moyal::default_steps(t));
    json checks = json::array();
    for (std::size_t s = 0; s < 2; ++s) {
      const moyal::DivergenceReport& rep = reports[s];
      if (!rep.first_divergent_order) continue;
      unsigned n = *rep.first_divergent_order;
      PhasePolynomial grade2 = moyal::hbar_component(rep.difference, 2);
      double coefficient = moyal::eval_poly(grade2, {a.q0, a.p0, 1.0, {}}).real() / moyal::to_double(moyal::factorial(n));
      double numeric = (s == 0 ? r.q2.back() : r.p2.back()) / std::pow(t, n);
      json cj;
      cj["seed"] = rep.seed;
      cj["order"] = n;
      cj["t"] = t;
      cj["numeric_ratio"] = numeric;
      cj["series_coefficient"] = coefficient;
      cj["relative_error"] = coefficient != 0.0 ? std::abs(numeric / coefficient - 1.0) : std::abs(numeric);
      checks.push_back(cj);
    }
    out["hbar2_small_t"] = checks;
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::vector<std::string> only;
  std::optional<unsigned> cases;
  std::optional<unsigned> order;
  std::optional<unsigned> depth;
  std::uint64_t seed = 1;
  double tol = 1.0;
  std::string format;
};

int cmd_check(const CheckArgs& a) {
  moyal::SuiteOptions opt;
  opt.seed = a.seed;
  if (a.cases) opt.cases = *a.cases;
  if (a.order) opt.bch_order = *a.order;
  if (a.depth) opt.depth = *a.depth;
  opt.tolerance_scale = a.tol;
  std::vector<std::string> names = a.only.empty() ? moyal::suite_names() : a.only;
  std::vector<moyal::SuiteResult> results;
  for (const std::string& name : names) results.push_back(moyal::run_suite(name, opt));
  std::cout << (a.format == "json" ? moyal::suites_to_json(results) + "\n" : moyal::suites_to_text(results));
  bool all = std::all_of(results.begin(), results.end(), [](const moyal::SuiteResult& r) { return r.ok(); });
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moyal star-product calculus and semiclassical trajectories"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "moyal 0.1.0");
  const std::vector<std::string> all_params = {"m", "l", "lambda", "omega", "beta", "gamma", "hbar"};

  StarArgs star;
  CLI::App* star_cmd = app.add_subcommand("star", "exact star product of two polynomials");
  star_cmd->add_option("f", star.f, "left polynomial")->required();
  star_cmd->add_option("g", star.g, "right polynomial")->required();
  star_cmd->add_option("--grade", star.grade, "print only the grade-n component (without hbar^n)");
  add_format(star_cmd, star.format, {"text", "json"}, "text");

  BracketArgs bracket;
  CLI::App* bracket_cmd = app.add_subcommand("bracket", "Moyal bracket: exact on polynomials, truncated numeric on expressions");
  bracket_cmd->add_option("f", bracket.f, "left symbol")->required();
  bracket_cmd->add_option("g", bracket.g, "right symbol")->required();
  bracket_cmd->add_option("--grade", bracket.grade, "print only the grade-2n component (without hbar^2n)");
  bracket_cmd->add_flag("--numeric", bracket.numeric, "treat inputs as expressions and sum the truncated series");
  bracket_cmd->add_option("--depth", bracket.depth, "highest grade index N of the truncated series")->capture_default_str();
  bracket_cmd->add_option("--cap", bracket.cap, "grade cap")->capture_default_str();
  bracket_cmd->add_option("--q0", bracket.q0, "q at the evaluation point")->capture_default_str();
  bracket_cmd->add_option("--p0", bracket.p0, "p at the evaluation point")->capture_default_str();
  bracket_cmd->add_option("--t0", bracket.t, "t at the evaluation point")->capture_default_str();
  bracket_cmd->add_option("--tol", bracket.tol, "convergence tolerance")->capture_default_str();
  add_params(bracket_cmd, bracket.params, all_params);
  add_format(bracket_cmd, bracket.format, {"text", "json", "csv"}, "text");

  HierarchyArgs hier;
  CLI::App* hier_cmd = app.add_subcommand("hierarchy", "order-hbar^2 corrections by transport quadrature, ODE and Taylor series");
  hier_cmd->add_option("--hamiltonian", hier.hamiltonian, "H(q, p) with parameters")->capture_default_str();
  hier_cmd->add_option("--q0", hier.q0, "initial q")->capture_default_str();
  hier_cmd->add_option("--p0", hier.p0, "initial p")->capture_default_str();
  add_grid(hier_cmd, hier.grid);
  hier_cmd->add_option("--quad-nodes", hier.quad_nodes, "quadrature nodes per unit time")->capture_default_str();
  hier_cmd->add_option("--steps", hier.steps, "RK4 steps of the ODE route (default 2000 per unit time)");
  hier_cmd->add_option("--depth", hier.depth, "exact Taylor depth for the series rows (0 disables)")->capture_default_str();
  add_params(hier_cmd, hier.params, all_params);
  add_format(hier_cmd, hier.format, {"csv", "json", "text"}, "csv");

  Example1Args ex1;
  CLI::App* ex1_cmd = app.add_subcommand("example1", "closed-form table for H = q^2 p^2 / (4 m l^2)");
  ex1_cmd->add_option("--q0", ex1.q0, "q")->capture_default_str();
  ex1_cmd->add_option("--p0", ex1.p0, "p")->capture_default_str();
  add_grid(ex1_cmd, ex1.grid);
  ex1_cmd->add_option("--grade", ex1.depth, "highest grade index N of the truncated Moyal brackets")->capture_default_str();
  ex1_cmd->add_option("--tol", ex1.tol, "convergence tolerance")->capture_default_str();
  add_params(ex1_cmd, ex1.params, {"m", "l", "hbar"});
  add_format(ex1_cmd, ex1.format, {"csv", "json", "text"}, "csv");

  Example2Args ex2;
  CLI::App* ex2_cmd = app.add_subcommand("example2", "classical/Moyal divergence orders for H = p^2/2m + V(q)");
  ex2_cmd->add_option("--potential", ex2.potential, "V(q), polynomial with parameters")->capture_default_str();
  ex2_cmd->add_option("--depth", ex2.depth, "Taylor depth")->capture_default_str();
  ex2_cmd->add_option("--t1", ex2.t1, "run the small-t hbar^2 ratio check at this time");
  ex2_cmd->add_option("--q0", ex2.q0, "initial q for the ratio check")->capture_default_str();
  ex2_cmd->add_option("--p0", ex2.p0, "initial p for the ratio check")->capture_default_str();
  add_params(ex2_cmd, ex2.params, {"m", "lambda", "omega", "beta", "gamma"});

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check", "run the verification suites; exit 0 iff all pass");
  check_cmd->add_option("--only", check.only, "suites to run")->delimiter(',')->check(CLI::IsMember(moyal::suite_names()));
  check_cmd->add_option("--cases", check.cases, "random cases per property suite");
  check_cmd->add_option("--order", check.order, "BCH truncation order");
  check_cmd->add_option("--depth", check.depth, "Taylor depth of the quadratic suite");
  check_cmd->add_option("--seed", check.seed, "random seed")->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "scale applied to numeric tolerances")->capture_default_str();
  add_format(check_cmd, check.format, {"text", "json"}, "text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (star_cmd->parsed()) return cmd_star(star);
    if (bracket_cmd->parsed()) return cmd_bracket(bracket);
    if (hier_cmd->parsed()) return cmd_hierarchy(hier);
    if (ex1_cmd->parsed()) return cmd_example1(ex1);
    if (ex2_cmd->parsed()) return cmd_example2(ex2);
    if (check_cmd->parsed()) return cmd_check(check);
  } catch (const moyal::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
