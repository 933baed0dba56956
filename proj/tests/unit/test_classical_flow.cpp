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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "moyal/classical_flow.hpp"
#include "moyal/error.hpp"
#include "moyal/jet.hpp"

namespace moyal {
namespace {

constexpr double kPi = std::numbers::pi;

HamiltonianSpec free_particle() { return HamiltonianSpec::parse("p^2/(2*m)", {{"m", 1.0}}); }
HamiltonianSpec harmonic() { return HamiltonianSpec::parse("(p^2 + q^2)/2"); }
HamiltonianSpec quartic() { return HamiltonianSpec::parse("p^2/2 + q^2/2 + q^4/24"); }
HamiltonianSpec example1() { return HamiltonianSpec::parse("q^2*p^2/(4*m*l^2)", {{"m", 1.0}, {"l", 1.0}}); }

// Nested central-difference stencils for orders 0..3, indexed by offset + 2.
const std::array<std::array<double, 5>, 4> kStencils = {{{0, 0, 1, 0, 0},
                                                         {0, -0.5, 0, 0.5, 0},
                                                         {0, 1, -2, 1, 0},
                                                         {-0.5, 1, 0, -1, 0.5}}};

double fd_partial(const HamiltonianSpec& h, PhasePoint z0, double t, int steps, int component, int a, int b,
                  double step) {
  double sum = 0.0;
  for (int i = -2; i <= 2; ++i) {
    double wq = kStencils[a][i + 2];
    if (wq == 0.0) continue;
    for (int j = -2; j <= 2; ++j) {
      double wp = kStencils[b][j + 2];
      if (wp == 0.0) continue;
      Trajectory tr = integrate_flow(h, {z0[0] + i * step, z0[1] + j * step}, t, steps);
      sum += wq * wp * tr.states.back()[component];
    }
  }
  return sum / std::pow(step, a + b);
}

TEST(Jet, MatchesSymbolicPartials) {
  Expr f = Expr::parse("exp(q)*sin(p)/(1 + q^2) + cosh(q*p) - tan(p - q)*sinh(q)");
  const double q0 = 0.3;
  const double p0 = -0.6;
  TaylorJet j = evaluate<TaylorJet>(f, {{"q", TaylorJet::variable(q0, 0, 4)}, {"p", TaylorJet::variable(p0, 1, 4)}});
  for (int k = 0; k <= 4; ++k) {
    for (int a = 0; a <= k; ++a) {
      Expr d = f;
      for (int n = 0; n < a; ++n) d = differentiate(d, "q");
      for (int n = 0; n < k - a; ++n) d = differentiate(d, "p");
      double expected = eval_expr(d, {{"q", q0}, {"p", p0}}).real();
      EXPECT_NEAR(j.partial(a, k - a), expected, 1e-11 * std::max(1.0, std::abs(expected))) << a << "," << k - a;
    }
  }
}

TEST(Jet, TruncationAndErrors) {
  TaylorJet x = TaylorJet::variable(2.0, 0, 2);
  TaylorJet cube = x * x * x;
  EXPECT_DOUBLE_EQ(cube.partial(2, 0), 12.0);
  EXPECT_DOUBLE_EQ(cube.coefficient(3, 0), 0.0);  // beyond order 2
  EXPECT_THROW(reciprocal(TaylorJet(0.0)), DomainError);
  EXPECT_THROW(TaylorJet::variable(1.0, 0, 5), InvalidArgument);
}

TEST(IntegrateFlow, Examples) {
  Trajectory free = integrate_flow(free_particle(), {1, 2}, 3.0, 7);
  EXPECT_NEAR(free.states.back()[0], 7.0, 1e-13);
  EXPECT_NEAR(free.states.back()[1], 2.0, 1e-13);
  EXPECT_EQ(free.times.size(), 8U);
  EXPECT_EQ(free.times.front(), 0.0);
  EXPECT_EQ(free.times.back(), 3.0);

  Trajectory rot = integrate_flow(harmonic(), {1, 0}, kPi / 2, 1000);
  EXPECT_NEAR(rot.states.back()[0], 0.0, 1e-9);
  EXPECT_NEAR(rot.states.back()[1], -1.0, 1e-9);

  Trajectory ex1 = integrate_flow(example1(), {1, 1}, 1.0, 2000);
  EXPECT_NEAR(ex1.states.back()[0], std::exp(0.5), 1e-8);
  EXPECT_NEAR(ex1.states.back()[1], std::exp(-0.5), 1e-8);
}

TEST(IntegrateFlow, Errors) {
  EXPECT_THROW(integrate_flow(harmonic(), {1, 0}, 1.0, 0), InvalidArgument);
  HamiltonianSpec unstable = HamiltonianSpec::parse("p^2/2 - q^6");
  try {
    integrate_flow(unstable, {2, 0}, 10.0, 100);
    FAIL();
  } catch (const FlowBlowUp& e) {
    EXPECT_GT(e.time(), 0.0);
    EXPECT_LE(e.time(), 10.0);
  }
  EXPECT_THROW(HamiltonianSpec::parse("q*t"), InvalidArgument);
  EXPECT_THROW(HamiltonianSpec::parse("hbar*q^2"), InvalidArgument);
  EXPECT_THROW(HamiltonianSpec::parse("i*q"), InvalidArgument);
  EXPECT_THROW(HamiltonianSpec::parse("p^2/(2*m)"), InvalidArgument);
}

TEST(IntegrateFlowJets, Examples) {
  const double t = 1.7;
  Trajectory free = integrate_flow_jets(free_particle(), {0.3, -1}, t, 10, 1);
  const FlowJet& j = free.jets.back();
  EXPECT_NEAR(j.z[0].partial(1, 0), 1.0, 1e-14);
  EXPECT_NEAR(j.z[0].partial(0, 1), t, 1e-14);
  EXPECT_NEAR(j.z[1].partial(1, 0), 0.0, 1e-14);
  EXPECT_NEAR(j.z[1].partial(0, 1), 1.0, 1e-14);

  Trajectory rot = integrate_flow_jets(harmonic(), {0.4, 0.2}, kPi / 2, 1000, 1);
  const FlowJet& r = rot.jets.back();
  EXPECT_NEAR(r.z[0].partial(1, 0), 0.0, 1e-9);
  EXPECT_NEAR(r.z[0].partial(0, 1), 1.0, 1e-9);
  EXPECT_NEAR(r.z[1].partial(1, 0), -1.0, 1e-9);
  EXPECT_NEAR(r.z[1].partial(0, 1), 0.0, 1e-9);

  Trajectory ex1 = integrate_flow_jets(example1(), {1, 1}, 0.5, 1000, 2);
  auto closed = [](double q) { return q * std::exp(q * 1.0 * 0.5 / 2); };
  double h = 1e-4;
  double fd = (closed(1 + h) - 2 * closed(1) + closed(1 - h)) / (h * h);
  EXPECT_NEAR(ex1.jets.back().z[0].partial(2, 0), fd, 1e-6);
  EXPECT_EQ(ex1.jets.front().z[0].partial(1, 0), 1.0);
  EXPECT_EQ(ex1.jets.front().z[0].partial(2, 0), 0.0);
}

TEST(Checks, Energy) {
  EXPECT_LT(check_energy(integrate_flow(free_particle(), {1, 2}, 3.0, 30), free_particle()), 1e-14);
  EXPECT_LT(check_energy(integrate_flow(quartic(), {1, 0.5}, 10.0, 10000), quartic()), 1e-8);
  // Along the closed forms Q_C P_C = qp, so the energy is exactly constant.
  HamiltonianSpec h = example1();
  Trajectory closed;
  for (double t = 0; t <= 5.0; t += 0.5) {
    closed.times.push_back(t);
    closed.states.push_back({0.8 * std::exp(0.8 * 0.6 * t / 2), 0.6 * std::exp(-0.8 * 0.6 * t / 2)});
  }
  EXPECT_LT(check_energy(closed, h), 1e-14);
}

TEST(Checks, Symplectic) {
  EXPECT_LT(check_symplectic(integrate_flow_jets(free_particle(), {1, 2}, 3.0, 30, 1)), 1e-14);
  EXPECT_LT(check_symplectic(integrate_flow_jets(quartic(), {1, 0.5}, 10.0, 20000, 1)), 1e-8);
  EXPECT_LT(check_symplectic(integrate_flow_jets(example1(), {0.9, 1.1}, 5.0, 10000, 1)), 1e-8);
  EXPECT_THROW(check_symplectic(integrate_flow(harmonic(), {1, 0}, 1.0, 10)), InvalidArgument);
}

TEST(Checks, Transport) {
  HamiltonianSpec h1 = quartic();
  EXPECT_LT(check_transport(h1.hamiltonian(), h1, {1, 0.3}, 2.0), 1e-8);
  EXPECT_LT(check_transport(Expr::parse("q"), harmonic(), {1, 0}, 3.0), 1e-6);
  EXPECT_LT(check_transport(Expr::parse("q*p"), example1(), {0.8, 1.2}, 2.0), 1e-6);
  // A non-conserved observable with a nonzero bracket still satisfies transport.
  EXPECT_LT(check_transport(Expr::parse("q^3 - p*q"), h1, {0.5, -0.4}, 1.5), 1e-6);
}

TEST(Properties, Rk4Order) {
  auto error = [](const HamiltonianSpec& h, int steps, PhasePoint exact) {
    PhasePoint z = integrate_flow(h, {1, 1}, 1.0, steps).states.back();
    return std::hypot(z[0] - exact[0], z[1] - exact[1]);
  };
  PhasePoint rot = {std::cos(1.0) + std::sin(1.0), std::cos(1.0) - std::sin(1.0)};
  double ratio_h = error(harmonic(), 20, rot) / error(harmonic(), 40, rot);
  EXPECT_NEAR(ratio_h, 16.0, 1.5);
  PhasePoint ex = {std::exp(0.5), std::exp(-0.5)};
  double ratio_e = error(example1(), 20, ex) / error(example1(), 40, ex);
  EXPECT_NEAR(ratio_e, 16.0, 1.5);
}

TEST(Properties, JetsMatchFiniteDifferences) {
  const std::array<double, 4> steps_by_order = {0, 1e-4, 1e-3, 1e-2};
  const std::array<double, 4> tolerance = {0, 1e-5, 1e-5, 1e-3};
  for (const HamiltonianSpec& h : {quartic(), example1()}) {
    PhasePoint z0 = {0.7, 0.4};
    const double t = 0.8;
    const int steps = 400;
    FlowJet jet = integrate_flow_jets(h, z0, t, steps, 3).jets.back();
    for (int k = 1; k <= 3; ++k) {
      for (int a = 0; a <= k; ++a) {
        for (int c = 0; c < 2; ++c) {
          double exact = jet.z[c].partial(a, k - a);
          double fd = fd_partial(h, z0, t, steps, c, a, k - a, steps_by_order[k]);
          EXPECT_LE(std::abs(fd - exact), tolerance[k] * std::max(1.0, std::abs(exact)))
              << "order " << k << " a=" << a << " component " << c;
        }
      }
    }
  }
}

TEST(TrajectoryCsv, Layout) {
  Trajectory tr = integrate_flow_jets(harmonic(), {1, 0}, 0.1, 1, 2);
  std::string csv = to_csv(tr);
  std::string header = csv.substr(0, csv.find('\n'));
  EXPECT_EQ(header, "t,Q,P,dQdq,dQdp,dPdq,dPdp,d2Qdq2,d2Qdqdp,d2Qdp2,d2Pdq2,d2Pdqdp,d2Pdp2");
  std::string first = csv.substr(header.size() + 1, csv.find('\n', header.size() + 1) - header.size() - 1);
  EXPECT_EQ(first, "0,1,0,1,0,0,1,0,0,0,0,0,0");
  EXPECT_EQ(to_csv(integrate_flow(harmonic(), {1, 0}, 0.1, 1)).substr(0, 6), "t,Q,P\n");
  EXPECT_NE(csv.find("0.10000000000000001"), std::string::npos);
}

}  // namespace
}  // namespace moyal
