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

#include "moyal/classical_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "moyal/error.hpp"
#include "moyal/expr_brackets.hpp"

namespace moyal {

namespace {

constexpr std::array<PhasePoint, 3> kProbePoints = {{{0.3, -0.7}, {1.1, 0.4}, {-0.9, 1.3}}};

template <class Num>
std::array<Num, 2> axpy(const std::array<Num, 2>& z, double a, const std::array<Num, 2>& k) {
  return {z[0] + Num(a) * k[0], z[1] + Num(a) * k[1]};
}

template <class Num, class Field>
std::array<Num, 2> rk4(const Field& f, const std::array<Num, 2>& z, double dt) {
  std::array<Num, 2> k1 = f(z);
  std::array<Num, 2> k2 = f(axpy(z, dt / 2, k1));
  std::array<Num, 2> k3 = f(axpy(z, dt / 2, k2));
  std::array<Num, 2> k4 = f(axpy(z, dt, k3));
  std::array<Num, 2> out;
  for (int i = 0; i < 2; ++i) out[i] = z[i] + Num(dt / 6) * (k1[i] + Num(2.0) * k2[i] + Num(2.0) * k3[i] + k4[i]);
  return out;
}

void check_finite(const PhasePoint& z, double t) {
  if (!std::isfinite(z[0]) || !std::isfinite(z[1])) throw FlowBlowUp("non-finite state", t);
}

void check_steps(int steps) {
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
}

std::string column_name(int k, int a, char component) {
  std::string name = k == 1 ? "d" : "d" + std::to_string(k);
  name += component;
  int b = k - a;
  if (a > 0) name += a == 1 ? "dq" : "dq" + std::to_string(a);
  if (b > 0) name += b == 1 ? "dp" : "dp" + std::to_string(b);
  return name;
}

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(const Expr& h, const Bindings& params) {
  Substitution exact;
  for (const auto& [name, value] : params) {
    if (name == "q" || name == "p") continue;
    exact.emplace(name, Expr(ExactScalar::from_double(value)));
  }
  h_ = substitute(h, exact);
  for (const std::string& v : free_variables(h_)) {
    if (v != "q" && v != "p" && v != "pi") {
      throw InvalidArgument("Hamiltonian depends on '" + v + "'; bind it to a number (H must be time- and hbar-free)");
    }
  }
  for (const auto& [m, c] : h_.terms()) {
    if (!c.is_real()) throw InvalidArgument("Hamiltonian must have real coefficients: " + h_.str());
  }
  for (const PhasePoint& z : kProbePoints) {
    try {
      std::complex<double> v = eval_expr(h_, {{"q", z[0]}, {"p", z[1]}});
      if (std::abs(v.imag()) > 1e-12) throw InvalidArgument("Hamiltonian is not real: " + h_.str());
    } catch (const DomainError&) {
      // a probe on a pole says nothing about reality
    }
  }
  field_ = {differentiate(h_, "p"), -differentiate(h_, "q")};
}

HamiltonianSpec HamiltonianSpec::parse(std::string_view text, const Bindings& params) {
  return HamiltonianSpec(Expr::parse(text), params);
}

double HamiltonianSpec::energy(const PhasePoint& z) const { return evaluate<double>(h_, {{"q", z[0]}, {"p", z[1]}}); }

std::array<TaylorJet, 2> HamiltonianSpec::field(const TaylorJet& q, const TaylorJet& p) const {
  NumericBindings<TaylorJet> at{{"q", q}, {"p", p}};
  return {evaluate<TaylorJet>(field_[0], at), evaluate<TaylorJet>(field_[1], at)};
}

PhasePoint HamiltonianSpec::field(const PhasePoint& z) const {
  Bindings at{{"q", z[0]}, {"p", z[1]}};
  return {evaluate<double>(field_[0], at), evaluate<double>(field_[1], at)};
}

int default_steps(double span) {
  return std::max(1, static_cast<int>(std::ceil(std::abs(span) * kDefaultStepsPerUnitTime)));
}

std::array<TaylorJet, 2> rk4_step(const HamiltonianSpec& h, const std::array<TaylorJet, 2>& z, double dt) {
  return rk4([&](const std::array<TaylorJet, 2>& w) { return h.field(w[0], w[1]); }, z, dt);
}

Trajectory integrate_flow(const HamiltonianSpec& h, const PhasePoint& z0, double t_final, int steps, double t0) {
  check_steps(steps);
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  double dt = (t_final - t0) / steps;
  PhasePoint z = z0;
  check_finite(z, t0);
  traj.times.push_back(t0);
  traj.states.push_back(z);
  auto field = [&](const PhasePoint& w) { return h.field(w); };
  for (int n = 1; n <= steps; ++n) {
    double t = t0 + n * dt;
    try {
      z = rk4(field, z, dt);
    } catch (const DomainError& e) {
      throw FlowBlowUp(e.what(), t);
    }
    check_finite(z, t);
    traj.times.push_back(n == steps ? t_final : t);
    traj.states.push_back(z);
  }
  return traj;
}

Trajectory integrate_flow_jets(const HamiltonianSpec& h, const PhasePoint& z0, double t_final, int steps, int order,
                               double t0) {
  check_steps(steps);
  if (order < 1 || order > TaylorJet::kMaxOrder) throw InvalidArgument("jet order must be 1.." + std::to_string(TaylorJet::kMaxOrder));
  Trajectory traj;
  double dt = (t_final - t0) / steps;
  std::array<TaylorJet, 2> z = {TaylorJet::variable(z0[0], 0, order), TaylorJet::variable(z0[1], 1, order)};
  traj.times.push_back(t0);
  traj.states.push_back(z0);
  traj.jets.push_back({order, z});
  for (int n = 1; n <= steps; ++n) {
    double t = t0 + n * dt;
    try {
      z = rk4_step(h, z, dt);
    } catch (const DomainError& e) {
      throw FlowBlowUp(e.what(), t);
    }
    PhasePoint value = {z[0].value(), z[1].value()};
    check_finite(value, t);
    traj.times.push_back(n == steps ? t_final : t);
    traj.states.push_back(value);
    traj.jets.push_back({order, z});
  }
  return traj;
}

FlowJet flow_jet(const HamiltonianSpec& h, const PhasePoint& z0, double duration, int order, int steps) {
  check_steps(steps);
  std::array<TaylorJet, 2> z = {TaylorJet::variable(z0[0], 0, order), TaylorJet::variable(z0[1], 1, order)};
  double dt = duration / steps;
  for (int n = 1; n <= steps; ++n) {
    try {
      z = rk4_step(h, z, dt);
    } catch (const DomainError& e) {
      throw FlowBlowUp(e.what(), n * dt);
    }
    check_finite({z[0].value(), z[1].value()}, n * dt);
  }
  return {order, z};
}

double check_energy(const Trajectory& traj, const HamiltonianSpec& h) {
  if (traj.states.empty()) throw InvalidArgument("empty trajectory");
  double e0 = h.energy(traj.states.front());
  double worst = 0.0;
  for (const PhasePoint& z : traj.states) worst = std::max(worst, std::abs(h.energy(z) - e0));
  return worst;
}

double check_symplectic(const Trajectory& traj) {
  if (traj.jets.empty()) throw InvalidArgument("check_symplectic needs a trajectory with jets");
  double worst = 0.0;
  for (const FlowJet& j : traj.jets) {
    double det = j.z[0].partial(1, 0) * j.z[1].partial(0, 1) - j.z[0].partial(0, 1) * j.z[1].partial(1, 0);
    worst = std::max(worst, std::abs(det - 1.0));
  }
  return worst;
}

double check_transport(const Expr& a0, const HamiltonianSpec& h, const PhasePoint& z0, double t,
                       const TransportOptions& options) {
  if (options.samples < 1) throw InvalidArgument("samples must be >= 1");
  Expr bracket = poisson_expr(a0, h.hamiltonian());
  int per_sample = std::max(1, static_cast<int>(std::ceil(std::abs(t) * options.steps_per_unit_time / options.samples)));
  auto field = [&](const PhasePoint& w) { return h.field(w); };
  auto value = [](const Expr& e, const PhasePoint& z) { return eval_expr(e, {{"q", z[0]}, {"p", z[1]}}).real(); };
  PhasePoint z = z0;
  double dt = t / (options.samples * per_sample);
  double worst = 0.0;
  for (int k = 1; k <= options.samples; ++k) {
    for (int n = 0; n < per_sample; ++n) z = rk4(field, z, dt);
    check_finite(z, k * t / options.samples);
    double eps = options.fd_step;
    double rate = (value(a0, rk4(field, z, eps)) - value(a0, rk4(field, z, -eps))) / (2 * eps);
    worst = std::max(worst, std::abs(rate - value(bracket, z)));
  }
  return worst;
}

std::string to_csv(const Trajectory& traj) {
  std::ostringstream out;
  int order = traj.jets.empty() ? 0 : traj.jets.front().order;
  out << "t,Q,P";
  for (int k = 1; k <= order; ++k) {
    for (char component : {'Q', 'P'}) {
      for (int a = k; a >= 0; --a) out << ',' << column_name(k, a, component);
    }
  }
  out << '\n';
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    out << format17(traj.times[i]) << ',' << format17(traj.states[i][0]) << ',' << format17(traj.states[i][1]);
    for (int k = 1; k <= order; ++k) {
      for (int c = 0; c < 2; ++c) {
        for (int a = k; a >= 0; --a) out << ',' << format17(traj.jets[i].z[static_cast<std::size_t>(c)].partial(a, k - a));
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace moyal
