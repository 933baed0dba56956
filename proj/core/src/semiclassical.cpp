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

#include "moyal/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "moyal/error.hpp"
#include "moyal/example1.hpp"

namespace moyal {

namespace {

using Jet2 = std::array<TaylorJet, 2>;

/// Symplectic form with index 0 = q, 1 = p.
constexpr int kJ[2][2] = {{0, 1}, {-1, 0}};

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Partial of a jet along the multi-index given as a list of variable indices.
template <class... I>
double partial_along(const TaylorJet& j, I... idx) {
  int a = 0;
  int b = 0;
  ((idx == 0 ? ++a : ++b), ...);
  return j.partial(a, b);
}

Jet2 jet_at(const PhasePoint& z, int order) {
  return {TaylorJet::variable(z[0], 0, order), TaylorJet::variable(z[1], 1, order)};
}

void check_hbar_free(const PhasePolynomial& h) {
  if (!h.is_hbar_free()) throw InvalidArgument("Hamiltonian must be hbar-free: " + h.str());
}

}  // namespace

IteratedBrackets iterated_brackets(const PhasePolynomial& h, unsigned depth, unsigned cap) {
  check_hbar_free(h);
  if (depth > cap) {
    throw CapExceeded("depth " + std::to_string(depth) + " exceeds the cap " + std::to_string(cap));
  }
  IteratedBrackets out;
  for (auto [chain, seed] : {std::pair{&out.q, PhasePolynomial::q()}, std::pair{&out.p, PhasePolynomial::p()}}) {
    chain->lambda.push_back(seed);
    chain->omega.push_back(seed);
    for (unsigned n = 1; n <= depth; ++n) {
      chain->lambda.push_back(poisson_bracket(chain->lambda.back(), h));
      chain->omega.push_back(moyal_bracket(chain->omega.back(), h));
    }
  }
  return out;
}

double TimeTaylorFlow::grade_value(int c, unsigned r, double q, double p, double t) const {
  if (c != 0 && c != 1) throw InvalidArgument("component must be 0 or 1");
  double sum = 0.0;
  double weight = 1.0;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    if (n > 0) weight *= t / static_cast<double>(n);
    PhasePolynomial grade = hbar_component(coefficients[n][static_cast<std::size_t>(c)], r);
    sum += weight * eval_poly(grade, {q, p, 1.0, {}}).real();
  }
  return sum;
}

TimeTaylorFlow taylor_flow(const PhasePolynomial& h, unsigned depth, FlowKind kind, unsigned cap) {
  IteratedBrackets it = iterated_brackets(h, depth, cap);
  TimeTaylorFlow flow;
  flow.depth = depth;
  flow.kind = kind;
  for (unsigned n = 0; n <= depth; ++n) {
    if (kind == FlowKind::classical) {
      flow.coefficients.push_back({it.q.lambda[n], it.p.lambda[n]});
    } else {
      flow.coefficients.push_back({it.q.omega[n], it.p.omega[n]});
    }
  }
  return flow;
}

std::string DivergenceReport::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["first_divergent_order"] = first_divergent_order ? nlohmann::ordered_json(*first_divergent_order)
                                                    : nlohmann::ordered_json(nullptr);
  j["difference_polynomial"] = difference.str();
  j["per_order_equal"] = per_order_equal;
  return j.dump();
}

std::array<DivergenceReport, 2> divergence_order(const PhasePolynomial& h, unsigned depth, unsigned cap) {
  IteratedBrackets it = iterated_brackets(h, depth, cap);
  std::array<DivergenceReport, 2> out;
  const BracketChain* chains[2] = {&it.q, &it.p};
  for (int s = 0; s < 2; ++s) {
    DivergenceReport& r = out[static_cast<std::size_t>(s)];
    r.seed = s == 0 ? "q" : "p";
    for (unsigned n = 0; n <= depth; ++n) {
      PhasePolynomial diff = chains[s]->omega[n] - chains[s]->lambda[n];
      r.per_order_equal.push_back(diff.is_zero());
      if (!diff.is_zero() && !r.first_divergent_order) {
        r.first_divergent_order = n;
        r.difference = diff;
      }
    }
  }
  return out;
}

PhasePolynomial potential_of(const PhasePolynomial& h, const ExactScalar& m) {
  check_hbar_free(h);
  if (m.is_zero()) throw InvalidArgument("mass must be nonzero");
  PhasePolynomial kinetic = PhasePolynomial::monomial({0, 2, 0}, ExactScalar(1) / (ExactScalar(2) * m));
  PhasePolynomial v = h - kinetic;
  for (const auto& [e, c] : v.terms()) {
    if (e.p != 0) throw InvalidArgument("H - p^2/2m depends on p: " + v.str());
  }
  return v;
}

std::string CubicTermReport::summary() const {
  std::ostringstream out;
  out << "H = " << hamiltonian.str() << "\n";
  out << "quoted 5 hbar^2 (V''')^3 / (4 m^4) = " << quoted.str() << "\n";
  for (int s = 0; s < 2; ++s) {
    auto i = static_cast<std::size_t>(s);
    out << "seed " << (s == 0 ? "q" : "p") << ": omega7 - lambda7 = " << difference_order7[i].str()
        << "; first divergent order = "
        << (first_divergent_order[i] ? std::to_string(*first_divergent_order[i]) : std::string("none through 7"))
        << "; matches quoted = " << (matches_quoted[i] ? "yes" : "no") << "\n";
  }
  return out.str();
}

CubicTermReport cubic_term_report(const PhasePolynomial& potential, const ExactScalar& m) {
  check_hbar_free(potential);
  if (m.is_zero()) throw InvalidArgument("mass must be nonzero");
  for (const auto& [e, c] : potential.terms()) {
    if (e.p != 0) throw InvalidArgument("potential must depend on q alone: " + potential.str());
    if (e.q > 3) throw InvalidArgument("potential must be at most cubic: " + potential.str());
  }
  CubicTermReport r;
  r.hamiltonian = PhasePolynomial::monomial({0, 2, 0}, ExactScalar(1) / (ExactScalar(2) * m)) + potential;
  PhasePolynomial v3 = derivative(potential, PhaseVar::q, 3);
  r.quoted = PhasePolynomial::hbar() * PhasePolynomial::hbar() * pow(v3, 3) *
             (ExactScalar(5) / (ExactScalar(4) * m.pow(4)));
  IteratedBrackets it = iterated_brackets(r.hamiltonian, 7, 7);
  auto reports = divergence_order(r.hamiltonian, 7, 7);
  const BracketChain* chains[2] = {&it.q, &it.p};
  for (std::size_t s = 0; s < 2; ++s) {
    r.difference_order7[s] = chains[s]->omega[7] - chains[s]->lambda[7];
    r.first_divergent_order[s] = reports[s].first_divergent_order;
    r.matches_quoted[s] = r.difference_order7[s] == r.quoted;
  }
  return r;
}

Expr star_exp_A2(const Expr& b) {
  const char* vars[2] = {"q", "p"};
  Expr d[2];
  Expr dd[2][2];
  for (int i = 0; i < 2; ++i) d[i] = differentiate(b, vars[i]);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) dd[i][j] = differentiate(d[i], vars[j]);
  }
  Expr sum;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      if (kJ[i][k] == 0) continue;
      for (int j = 0; j < 2; ++j) {
        for (int l = 0; l < 2; ++l) {
          if (kJ[j][l] == 0) continue;
          Expr inner = Expr(ExactScalar::rational(1, 16)) * dd[k][l] + Expr(ExactScalar::rational(1, 24)) * d[k] * d[l];
          sum += Expr(static_cast<long>(kJ[i][k] * kJ[j][l])) * dd[i][j] * inner;
        }
      }
    }
  }
  return -sum;
}

std::string PrefactorReport::summary() const {
  std::ostringstream out;
  out.precision(12);
  out << "c = " << c << "\n";
  out << "hbar^2 constant: oracle " << oracle_constant << ", closed form " << closed_form_constant << "\n";
  out << "hbar^2 qp coefficient: oracle " << oracle_qp << ", closed form " << closed_form_qp << "\n";
  out << "implied sec power: oracle " << implied_sec_power_oracle << ", closed form " << implied_sec_power_closed_form
      << "\n";
  out << "consistent: " << (consistent ? "yes" : "no") << "\n";
  return out.str();
}

PrefactorReport prefactor_report(double c) {
  if (c == 0.0 || !std::isfinite(c)) throw InvalidArgument("c must be finite and nonzero");
  PrefactorReport r;
  r.c = c;
  Expr b = Expr(ExactScalar::from_double(c)) * Expr::variable("q") * Expr::variable("p");
  Expr a2 = star_exp_A2(b);
  r.oracle_constant = evaluate<double>(a2, {{"q", 0.0}, {"p", 0.0}});
  r.oracle_qp = evaluate<double>(a2, {{"q", 1.0}, {"p", 1.0}}) - r.oracle_constant;

  // With m = l = 1 and t = 4c the closed-form phi_plus is the star exponential of c qp.
  const ClosedForm& phi = builtin_example1().phi_plus;
  auto g = [&](double hbar, double q, double p) {
    double v = phi({{"q", q}, {"p", p}, {"t", 4.0 * c}, {"m", 1.0}, {"l", 1.0}, {"hbar", hbar}}).real();
    return v * std::exp(-c * q * p);
  };
  auto hbar2 = [&](double q, double p) {
    double h = 1e-2 / std::max(1.0, std::abs(c));
    auto s = [&](double x) { return (g(x, q, p) + g(-x, q, p) - 2.0) / (2.0 * x * x); };
    return (4.0 * s(h) - s(2.0 * h)) / 3.0;
  };
  r.closed_form_constant = hbar2(0.0, 0.0);
  r.closed_form_qp = hbar2(1.0, 1.0) - r.closed_form_constant;
  r.implied_sec_power_closed_form = 8.0 * r.closed_form_constant / (c * c);
  r.implied_sec_power_oracle = 8.0 * r.oracle_constant / (c * c);
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); };
  r.consistent = close(r.closed_form_constant, r.oracle_constant) && close(r.closed_form_qp, r.oracle_qp);
  return r;
}

std::array<TaylorJet, 2> Hbar2Inhomogeneity::field_partials(const PhasePoint& z) const {
  Jet2 w = jet_at(z, 3);
  return h_.field(w[0], w[1]);
}

Hbar2Inhomogeneity::Terms Hbar2Inhomogeneity::operator()(const Jet2& z) const {
  return (*this)(z, field_partials({z[0].value(), z[1].value()}));
}

Hbar2Inhomogeneity::Terms Hbar2Inhomogeneity::operator()(const Jet2& z, const Jet2& field) const {
  if (z[0].order() < 2 || z[1].order() < 2) throw InvalidArgument("flow jet must have order >= 2");
  if (field[0].order() < 3 || field[1].order() < 3) throw InvalidArgument("field jet must have order >= 3");
  double zi[2][2];
  double zij[2][2][2];
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 2; ++i) {
      zi[a][i] = partial_along(z[static_cast<std::size_t>(a)], i);
      for (int j = 0; j < 2; ++j) zij[a][i][j] = partial_along(z[static_cast<std::size_t>(a)], i, j);
    }
  }
  Terms t;
  for (int d = 0; d < 2; ++d) {
    const TaylorJet& f = field[static_cast<std::size_t>(d)];
    double s16 = 0.0;
    double s24 = 0.0;
    for (int i = 0; i < 2; ++i) {
      for (int k = 0; k < 2; ++k) {
        if (kJ[i][k] == 0) continue;
        for (int j = 0; j < 2; ++j) {
          for (int l = 0; l < 2; ++l) {
            if (kJ[j][l] == 0) continue;
            double w = kJ[i][k] * kJ[j][l];
            for (int a = 0; a < 2; ++a) {
              for (int b = 0; b < 2; ++b) {
                s16 += w * partial_along(f, a, b) * zij[a][i][j] * zij[b][k][l];
                for (int c = 0; c < 2; ++c) {
                  s24 += w * partial_along(f, a, b, c) * zij[a][i][j] * zi[b][k] * zi[c][l];
                }
              }
            }
          }
        }
      }
    }
    t.term16[static_cast<std::size_t>(d)] = -s16 / 16.0;
    t.term24[static_cast<std::size_t>(d)] = -s24 / 24.0;
  }
  return t;
}

Hbar2Inhomogeneity hbar2_inhomogeneity(const HamiltonianSpec& h) { return Hbar2Inhomogeneity(h); }

std::string Hbar2Result::to_csv() const {
  std::ostringstream out;
  out << "t,Q2,P2,method\n";
  for (std::size_t i = 0; i < times.size(); ++i) {
    out << format17(times[i]) << ',' << format17(q2[i]) << ',' << format17(p2[i]) << ',' << method << '\n';
  }
  return out.str();
}

namespace {

void check_options(const Hbar2Options& o) {
  if (o.samples < 1) throw InvalidArgument("samples must be >= 1");
  if (o.quad_nodes_per_unit_time < 1) throw InvalidArgument("quadrature nodes per unit time must be >= 1");
  if (!(o.steps_per_unit_time > 0)) throw InvalidArgument("steps per unit time must be positive");
}

int steps_for(double span, double per_unit) {
  return std::max(1, static_cast<int>(std::ceil(std::abs(span) * per_unit)));
}

/// [f, H]_2 from partials of order 3 of f and H at one point.
double bracket2(const TaylorJet& f, const TaylorJet& g) {
  return -(f.partial(3, 0) * g.partial(0, 3) - 3.0 * f.partial(2, 1) * g.partial(1, 2) +
           3.0 * f.partial(1, 2) * g.partial(2, 1) - f.partial(0, 3) * g.partial(3, 0)) /
         24.0;
}

/// Z2 at t0 + span by Simpson quadrature starting from w0 = Φ at t0.
std::array<double, 2> transport_once(const HamiltonianSpec& h, const PhasePoint& w0, double span,
                                     const Hbar2Options& o) {
  int nodes = std::max(16, static_cast<int>(std::ceil(std::abs(span) * o.quad_nodes_per_unit_time)));
  if (nodes % 2 != 0) ++nodes;
  double dtau = span / nodes;
  int sub = steps_for(dtau, o.steps_per_unit_time);
  PhasePoint w = w0;
  std::array<double, 2> acc{0.0, 0.0};
  for (int n = 0; n <= nodes; ++n) {
    if (n > 0) w = integrate_flow(h, w, dtau, sub).states.back();
    double remaining = span - n * dtau;
    FlowJet z = flow_jet(h, w, remaining, 3, steps_for(remaining, o.steps_per_unit_time));
    Jet2 at = jet_at(w, 3);
    TaylorJet hj = evaluate<TaylorJet>(h.hamiltonian(), {{"q", at[0]}, {"p", at[1]}});
    double weight = (n == 0 || n == nodes) ? 1.0 : (n % 2 == 1 ? 4.0 : 2.0);
    for (std::size_t c = 0; c < 2; ++c) acc[c] += weight * bracket2(z.z[c], hj);
  }
  return {acc[0] * dtau / 3.0, acc[1] * dtau / 3.0};
}

}  // namespace

Hbar2Result hbar2_transport(const HamiltonianSpec& h, const PhasePoint& z0, double t_final,
                            const Hbar2Options& options) {
  check_options(options);
  Hbar2Result r;
  r.method = "transport";
  double span = t_final - options.t0;
  for (int k = 0; k <= options.samples; ++k) {
    double s = span * k / options.samples;
    std::array<double, 2> z2 = k == 0 ? std::array<double, 2>{0.0, 0.0} : transport_once(h, z0, s, options);
    r.times.push_back(k == options.samples ? t_final : options.t0 + s);
    r.q2.push_back(z2[0]);
    r.p2.push_back(z2[1]);
  }
  return r;
}

Hbar2Result hbar2_ode(const HamiltonianSpec& h, const PhasePoint& z0, double t_final, int steps,
                      const Hbar2Options& options) {
  check_options(options);
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  struct State {
    Jet2 z;
    std::array<double, 2> z2;
  };
  Hbar2Inhomogeneity inhom(h);
  auto rhs = [&](const State& s) {
    State d;
    d.z = h.field(s.z[0], s.z[1]);
    Jet2 fp = inhom.field_partials({s.z[0].value(), s.z[1].value()});
    Hbar2Inhomogeneity::Terms t = inhom(s.z, fp);
    std::array<double, 2> src = t.total();
    for (int c = 0; c < 2; ++c) {
      const TaylorJet& f = fp[static_cast<std::size_t>(c)];
      d.z2[static_cast<std::size_t>(c)] = f.partial(1, 0) * s.z2[0] + f.partial(0, 1) * s.z2[1] + src[static_cast<std::size_t>(c)];
    }
    return d;
  };
  auto axpy = [](const State& s, double a, const State& k) {
    State out;
    for (std::size_t c = 0; c < 2; ++c) {
      out.z[c] = s.z[c] + TaylorJet(a) * k.z[c];
      out.z2[c] = s.z2[c] + a * k.z2[c];
    }
    return out;
  };
  int per_sample = std::max(1, (steps + options.samples - 1) / options.samples);
  double span = t_final - options.t0;
  double dt = span / (per_sample * options.samples);
  State s{jet_at(z0, 2), {0.0, 0.0}};
  Hbar2Result r;
  r.method = "ode";
  r.times.push_back(options.t0);
  r.q2.push_back(0.0);
  r.p2.push_back(0.0);
  for (int k = 1; k <= options.samples; ++k) {
    for (int n = 0; n < per_sample; ++n) {
      double t_now = options.t0 + ((k - 1) * per_sample + n + 1) * dt;
      try {
        State k1 = rhs(s);
        State k2 = rhs(axpy(s, dt / 2, k1));
        State k3 = rhs(axpy(s, dt / 2, k2));
        State k4 = rhs(axpy(s, dt, k3));
        for (std::size_t c = 0; c < 2; ++c) {
          s.z[c] = s.z[c] + TaylorJet(dt / 6) * (k1.z[c] + TaylorJet(2.0) * k2.z[c] + TaylorJet(2.0) * k3.z[c] + k4.z[c]);
          s.z2[c] += dt / 6 * (k1.z2[c] + 2.0 * k2.z2[c] + 2.0 * k3.z2[c] + k4.z2[c]);
        }
      } catch (const DomainError& e) {
        throw FlowBlowUp(e.what(), t_now);
      }
      if (!std::isfinite(s.z2[0]) || !std::isfinite(s.z2[1]) || !std::isfinite(s.z[0].value()) ||
          !std::isfinite(s.z[1].value())) {
        throw FlowBlowUp("non-finite state", t_now);
      }
    }
    r.times.push_back(k == options.samples ? t_final : options.t0 + k * span / options.samples);
    r.q2.push_back(s.z2[0]);
    r.p2.push_back(s.z2[1]);
  }
  return r;
}

}  // namespace moyal
