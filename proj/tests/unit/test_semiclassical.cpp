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
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <json.hpp>

#include "moyal/error.hpp"
#include "moyal/example1.hpp"
#include "moyal/semiclassical.hpp"

namespace moyal {
namespace {

using P = PhasePolynomial;

P poly(const char* text) { return P::parse(text); }

const char* kQuarticPoly = "(1/2)*p^2 + (1/2)*q^2 + (1/24)*q^4";

HamiltonianSpec harmonic() { return HamiltonianSpec::parse("(p^2 + q^2)/2"); }
HamiltonianSpec quartic() { return HamiltonianSpec::parse("p^2/2 + q^2/2 + q^4/24"); }
HamiltonianSpec example1() { return HamiltonianSpec::parse("q^2*p^2/4"); }

double q2_closed(double q, double p, double t) {
  return builtin_example1().q2({{"q", q}, {"p", p}, {"t", t}, {"m", 1.0}, {"l", 1.0}, {"hbar", 1.0}}).real();
}
double p2_closed(double q, double p, double t) {
  return builtin_example1().p2({{"q", q}, {"p", p}, {"t", t}, {"m", 1.0}, {"l", 1.0}, {"hbar", 1.0}}).real();
}

/// Random polynomial in q, p with small rational coefficients.
P random_poly(std::mt19937& rng, unsigned max_degree) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  P f;
  for (int k = 0; k < 4; ++k) {
    unsigned a = deg(rng);
    unsigned b = deg(rng);
    if (a + b > max_degree) continue;
    f.add_term({a, b, 0}, ExactScalar::rational(coef(rng), 2));
  }
  return f;
}

TEST(IteratedBrackets, FreeParticleAndPotential) {
  P h = poly("(1/2)*p^2 + q^3 - 2*q^5");
  IteratedBrackets it = iterated_brackets(h, 6);
  EXPECT_EQ(it.q.lambda[1], P::p());
  for (unsigned n = 1; n <= 5; ++n) EXPECT_EQ(it.q.omega[n], it.q.lambda[n]) << n;
  P v = potential_of(h, ExactScalar(1));
  P expected = P::hbar() * P::hbar() * derivative(v, PhaseVar::q, 3) * derivative(v, PhaseVar::q, 4) *
               ExactScalar::rational(-1, 4);
  EXPECT_EQ(it.q.omega[6] - it.q.lambda[6], expected);
}

TEST(IteratedBrackets, SixthOrderWithMass) {
  for (long m : {1L, 2L, 3L}) {
    ExactScalar mass(m);
    P v = poly("q^4 - q^3 + 2*q^6");
    P h = P::monomial({0, 2, 0}, ExactScalar(1) / (ExactScalar(2) * mass)) + v;
    IteratedBrackets it = iterated_brackets(h, 6);
    P expected = P::hbar() * P::hbar() * derivative(v, PhaseVar::q, 3) * derivative(v, PhaseVar::q, 4) *
                 (ExactScalar(-1) / (ExactScalar(4) * mass.pow(4)));
    EXPECT_EQ(it.q.omega[6] - it.q.lambda[6], expected) << m;
  }
}

TEST(IteratedBrackets, Errors) {
  EXPECT_THROW(iterated_brackets(poly("p^2 + hbar*q"), 2), InvalidArgument);
  EXPECT_THROW(iterated_brackets(poly("p^2"), 11), CapExceeded);
  EXPECT_NO_THROW(iterated_brackets(poly("p^2"), 11, 11));
  EXPECT_THROW(taylor_flow(poly("p^2"), 11, FlowKind::moyal), CapExceeded);
}

TEST(TaylorFlow, FreeParticle) {
  for (FlowKind kind : {FlowKind::classical, FlowKind::moyal}) {
    TimeTaylorFlow f = taylor_flow(poly("(1/2)*p^2"), 8, kind);
    ASSERT_EQ(f.coefficients.size(), 9u);
    EXPECT_EQ(f.coefficients[0][0], P::q());
    EXPECT_EQ(f.coefficients[0][1], P::p());
    EXPECT_EQ(f.coefficients[1][0], P::p());
    EXPECT_TRUE(f.coefficients[1][1].is_zero());
    for (unsigned n = 2; n <= 8; ++n) {
      EXPECT_TRUE(f.coefficients[n][0].is_zero());
      EXPECT_TRUE(f.coefficients[n][1].is_zero());
    }
    EXPECT_NEAR(f.grade_value(0, 0, 0.5, 2.0, 0.25), 1.0, 1e-15);
  }
}

TEST(TaylorFlow, Example1SecondGradeAtSecondOrder) {
  TimeTaylorFlow f = taylor_flow(poly("(1/4)*q^2*p^2"), 3, FlowKind::moyal);
  // Q2 = q (t^2/16)(1 + t qp/6) + O(t^4 q exp) has t^2 / 2! coefficient q/8.
  EXPECT_EQ(hbar_component(f.coefficients[2][0], 2), poly("(1/8)*q"));
  EXPECT_EQ(hbar_component(f.coefficients[2][1], 2), poly("(1/8)*p"));
}

TEST(TaylorFlow, OddGradesVanish) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    P h = random_poly(rng, 4) + poly("(1/2)*p^2");
    TimeTaylorFlow f = taylor_flow(h, 5, FlowKind::moyal);
    for (const auto& pair : f.coefficients) {
      for (const P& c : pair) {
        for (unsigned r = 1; r <= c.degree_hbar(); r += 2) EXPECT_TRUE(hbar_component(c, r).is_zero()) << h.str();
      }
    }
  }
}

TEST(TaylorFlow, QuadraticEquivalence) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    P h = random_poly(rng, 2);
    TimeTaylorFlow c = taylor_flow(h, 10, FlowKind::classical);
    TimeTaylorFlow m = taylor_flow(h, 10, FlowKind::moyal);
    EXPECT_EQ(c.coefficients, m.coefficients) << h.str();
  }
}

TEST(Divergence, QuarticOscillator) {
  auto reports = divergence_order(poly(kQuarticPoly), 7);
  const DivergenceReport& q = reports[0];
  const DivergenceReport& p = reports[1];
  ASSERT_TRUE(q.first_divergent_order);
  ASSERT_TRUE(p.first_divergent_order);
  EXPECT_EQ(*p.first_divergent_order, 5u);
  EXPECT_EQ(*q.first_divergent_order, 6u);
  // lambda = m = 1: series coefficients -hbar^2 q / (4 n!) times n!.
  EXPECT_EQ(p.difference, poly("(-1/4)*hbar^2*q"));
  EXPECT_EQ(q.difference, poly("(-1/4)*hbar^2*q"));
  for (unsigned k = 0; k < 5; ++k) EXPECT_TRUE(p.per_order_equal[k]);
  EXPECT_FALSE(p.per_order_equal[5]);
  nlohmann::json j = nlohmann::json::parse(p.to_json());
  EXPECT_EQ(j["seed"], "p");
  EXPECT_EQ(j["first_divergent_order"], 5);
  EXPECT_EQ(j["difference_polynomial"], p.difference.str());
  EXPECT_EQ(j["per_order_equal"].size(), 8u);
}

TEST(Divergence, QuarticWithParameters) {
  // m = 2, omega = 1, lambda = 3: H = p^2/4 + q^2 + q^4/8.
  auto reports = divergence_order(poly("(1/4)*p^2 + q^2 + (1/8)*q^4"), 6);
  EXPECT_EQ(*reports[1].first_divergent_order, 5u);
  EXPECT_EQ(reports[1].difference, poly("(-9/32)*hbar^2*q"));  // -lambda^2 q / (4 m^3)
  EXPECT_EQ(*reports[0].first_divergent_order, 6u);
  EXPECT_EQ(reports[0].difference, poly("(-9/64)*hbar^2*q"));  // -lambda^2 q / (4 m^4)
}

TEST(Divergence, HarmonicNone) {
  auto reports = divergence_order(poly("(1/2)*p^2 + (1/2)*q^2"), 10);
  for (const DivergenceReport& r : reports) {
    EXPECT_FALSE(r.first_divergent_order);
    EXPECT_TRUE(r.difference.is_zero());
    EXPECT_EQ(nlohmann::json::parse(r.to_json())["first_divergent_order"], nullptr);
  }
}

TEST(CubicTerm, ExactReport) {
  for (long m : {1L, 2L}) {
    CubicTermReport r = cubic_term_report(poly("q^3 - q^2"), ExactScalar(m));
    EXPECT_EQ(r.quoted, P::hbar() * P::hbar() * (ExactScalar(270) / ExactScalar(m).pow(4)));
    // Position agrees through t^7; momentum first differs at t^7.
    EXPECT_FALSE(r.first_divergent_order[0]);
    EXPECT_TRUE(r.difference_order7[0].is_zero());
    EXPECT_FALSE(r.matches_quoted[0]);
    ASSERT_TRUE(r.first_divergent_order[1]);
    EXPECT_EQ(*r.first_divergent_order[1], 7u);
    EXPECT_TRUE(r.matches_quoted[1]);
    EXPECT_NE(r.summary().find("matches quoted = yes"), std::string::npos);
  }
  auto reports = divergence_order(poly("(1/2)*p^2 + q^3"), 8);
  EXPECT_EQ(*reports[0].first_divergent_order, 8u);
  EXPECT_THROW(cubic_term_report(poly("q^4"), ExactScalar(1)), InvalidArgument);
  EXPECT_THROW(potential_of(poly("p^2 + q*p"), ExactScalar(1)), InvalidArgument);
}

TEST(StarExpA2, Examples) {
  Expr q = Expr::variable("q");
  Expr p = Expr::variable("p");
  Expr c = Expr::variable("gamma");
  Expr a2 = star_exp_A2(c * q * p);
  Expr expected = Expr(ExactScalar::rational(1, 8)) * c * c + Expr(ExactScalar::rational(1, 12)) * pow(c, 3) * q * p;
  EXPECT_EQ(a2, expected) << a2.str();
  EXPECT_TRUE(star_exp_A2(Expr(3) * q - p + Expr(2)).is_zero());
  EXPECT_TRUE(star_exp_A2(q * q / Expr(2)).is_zero());
}

// The hbar^2 coefficient of sum_k s^k B^{*k} / k! at order s^k equals
// B^{k-2}/(k-2)! X + B^{k-3}/(k-3)! Y, where X and Y are the 1/16 and 1/24 parts of A2.
TEST(StarExpA2, AgreesWithStarPowers) {
  for (const char* text : {"q*p", "q^2 + p^2", "q^2*p + p", "q*p^2 - 2*q^2"}) {
    P b = poly(text);
    Expr be = Expr::from_polynomial(b);
    Expr a2 = star_exp_A2(be);
    Expr a2_24 = star_exp_A2(Expr(2) * be) - Expr(4) * a2;  // 4X + 8Y - 4X - 4Y = 4Y
    P y = to_polynomial(a2_24) * ExactScalar::rational(1, 4);
    P x = to_polynomial(a2) - y;
    P power = b;
    for (unsigned k = 2; k <= 6; ++k) {
      power = star_product(power, b);
      P lhs = hbar_component(power, 2) * (ExactScalar(1) / ExactScalar(factorial(k)));
      P rhs = pow(b, k - 2) * x * (ExactScalar(1) / ExactScalar(factorial(k - 2)));
      if (k >= 3) rhs += pow(b, k - 3) * y * (ExactScalar(1) / ExactScalar(factorial(k - 3)));
      EXPECT_EQ(lhs, rhs) << text << " k=" << k;
    }
  }
}

TEST(Prefactor, ReportsSecPower) {
  for (double c : {0.3, -0.7, 1.2}) {
    PrefactorReport r = prefactor_report(c);
    EXPECT_NEAR(r.oracle_constant, c * c / 8, 1e-14);
    EXPECT_NEAR(r.oracle_qp, c * c * c / 12, 1e-14);
    EXPECT_NEAR(r.closed_form_qp, r.oracle_qp, 1e-7);
    EXPECT_NEAR(r.implied_sec_power_oracle, 1.0, 1e-12);
    EXPECT_NEAR(r.implied_sec_power_closed_form, 2.0, 1e-6);
    EXPECT_FALSE(r.consistent);
  }
  EXPECT_THROW(prefactor_report(0.0), InvalidArgument);
}

TEST(Inhomogeneity, HarmonicVanishes) {
  HamiltonianSpec h = harmonic();
  Hbar2Inhomogeneity inh = hbar2_inhomogeneity(h);
  FlowJet j = flow_jet(h, {0.4, -1.1}, 0.8, 2, 800);
  auto t = inh(j.z);
  for (int d = 0; d < 2; ++d) {
    EXPECT_NEAR(t.term16[d], 0.0, 1e-12);
    EXPECT_NEAR(t.term24[d], 0.0, 1e-12);
  }
}

TEST(Inhomogeneity, Example1SmallTime) {
  HamiltonianSpec h = example1();
  Hbar2Inhomogeneity inh(h);
  auto at0 = inh(flow_jet(h, {1.0, 1.0}, 0.0, 2, 1).z).total();
  EXPECT_EQ(at0[0], 0.0);
  EXPECT_EQ(at0[1], 0.0);
  double prev = 0.0;
  for (double t : {1e-2, 5e-3}) {
    auto v = inh(flow_jet(h, {1.0, 1.0}, t, 2, 50).z).total();
    double mag = std::hypot(v[0], v[1]);
    if (prev > 0) EXPECT_NEAR(mag / prev, 0.5, 0.02);
    prev = mag;
  }
}

TEST(Inhomogeneity, FiniteDifferenceReconstruction) {
  HamiltonianSpec h = quartic();
  Hbar2Inhomogeneity inh(h);
  const PhasePoint z0 = {1.0, 0.0};
  const double t = 0.1;
  auto jets = flow_jet(h, z0, t, 2, 2000).z;
  auto value = inh(jets).total();

  // Flow partials by central differences of the classical flow.
  const double e = 1e-3;
  auto flow = [&](double dq, double dp) { return integrate_flow(h, {z0[0] + dq, z0[1] + dp}, t, 2000).states.back(); };
  double zi[2][2];
  double zij[2][2][2];
  for (int a = 0; a < 2; ++a) {
    auto comp = [&](double dq, double dp) { return flow(dq, dp)[a]; };
    zi[a][0] = (comp(e, 0) - comp(-e, 0)) / (2 * e);
    zi[a][1] = (comp(0, e) - comp(0, -e)) / (2 * e);
    zij[a][0][0] = (comp(e, 0) - 2 * comp(0, 0) + comp(-e, 0)) / (e * e);
    zij[a][1][1] = (comp(0, e) - 2 * comp(0, 0) + comp(0, -e)) / (e * e);
    zij[a][0][1] = zij[a][1][0] = (comp(e, e) - comp(e, -e) - comp(-e, e) + comp(-e, -e)) / (4 * e * e);
  }
  // Field partials by central differences of F at the flowed point.
  PhasePoint w = flow(0, 0);
  const double s = 1e-2;
  auto field = [&](double dq, double dp, int d) { return h.field({w[0] + dq, w[1] + dp})[d]; };
  auto shift = [&](int a) { return a == 0 ? std::array<double, 2>{s, 0} : std::array<double, 2>{0, s}; };
  std::array<double, 2> result{};
  const int J[2][2] = {{0, 1}, {-1, 0}};
  for (int d = 0; d < 2; ++d) {
    auto f2 = [&](int a, int b) {
      auto sa = shift(a);
      auto sb = shift(b);
      return (field(sa[0] + sb[0], sa[1] + sb[1], d) - field(sa[0] - sb[0], sa[1] - sb[1], d) -
              field(-sa[0] + sb[0], -sa[1] + sb[1], d) + field(-sa[0] - sb[0], -sa[1] - sb[1], d)) /
             (4 * s * s);
    };
    auto f3 = [&](int a, int b, int c) {
      auto sc = shift(c);
      auto plus = [&](double sign) {
        auto sa = shift(a);
        auto sb = shift(b);
        double x = sign * sc[0];
        double y = sign * sc[1];
        return (field(x + sa[0] + sb[0], y + sa[1] + sb[1], d) - field(x + sa[0] - sb[0], y + sa[1] - sb[1], d) -
                field(x - sa[0] + sb[0], y - sa[1] + sb[1], d) + field(x - sa[0] - sb[0], y - sa[1] - sb[1], d)) /
               (4 * s * s);
      };
      return (plus(1.0) - plus(-1.0)) / (2 * s);
    };
    double s16 = 0;
    double s24 = 0;
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l) {
            double wgt = J[i][k] * J[j][l];
            if (wgt == 0) continue;
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b) {
                s16 += wgt * f2(a, b) * zij[a][i][j] * zij[b][k][l];
                for (int c = 0; c < 2; ++c) s24 += wgt * f3(a, b, c) * zij[a][i][j] * zi[b][k] * zi[c][l];
              }
          }
    result[d] = -s16 / 16 - s24 / 24;
  }
  EXPECT_NEAR(value[0], result[0], 1e-4);
  EXPECT_NEAR(value[1], result[1], 1e-4);
  EXPECT_THROW(inh(flow_jet(h, z0, t, 1, 10).z), InvalidArgument);
}

TEST(Hbar2, HarmonicVanishes) {
  HamiltonianSpec h = harmonic();
  for (PhasePoint z0 : {PhasePoint{1.0, 0.5}, PhasePoint{-0.3, 2.0}}) {
    Hbar2Result tr = hbar2_transport(h, z0, 0.7);
    Hbar2Result od = hbar2_ode(h, z0, 0.7, 1400);
    for (const Hbar2Result* r : {&tr, &od}) {
      for (std::size_t i = 0; i < r->times.size(); ++i) {
        EXPECT_NEAR(r->q2[i], 0.0, 1e-9);
        EXPECT_NEAR(r->p2[i], 0.0, 1e-9);
      }
    }
  }
}

TEST(Hbar2, Example1ClosedForm) {
  HamiltonianSpec h = example1();
  const double t = 0.3;
  Hbar2Result tr = hbar2_transport(h, {1.0, 1.0}, t);
  Hbar2Result od = hbar2_ode(h, {1.0, 1.0}, t, 600);
  double q2 = q2_closed(1.0, 1.0, t);
  double p2 = p2_closed(1.0, 1.0, t);
  EXPECT_EQ(tr.method, "transport");
  EXPECT_EQ(od.method, "ode");
  EXPECT_EQ(tr.q2.front(), 0.0);
  EXPECT_EQ(od.p2.front(), 0.0);
  EXPECT_NEAR(tr.q2.back(), q2, 1e-6 * std::abs(q2));
  EXPECT_NEAR(tr.p2.back(), p2, 1e-6 * std::abs(p2));
  EXPECT_NEAR(od.q2.back(), q2, 1e-6 * std::abs(q2));
  EXPECT_NEAR(od.p2.back(), p2, 1e-6 * std::abs(p2));
  EXPECT_NEAR(od.q2.back(), tr.q2.back(), 1e-6);
}

TEST(Hbar2, QuarticSmallTimeLimit) {
  HamiltonianSpec h = quartic();
  const double t = 0.05;
  const double expected = -std::pow(t, 5) / 480.0;
  Hbar2Result tr = hbar2_transport(h, {1.0, 0.0}, t);
  Hbar2Result od = hbar2_ode(h, {1.0, 0.0}, t, 200);
  EXPECT_NEAR(tr.p2.back() / expected, 1.0, 0.01);
  EXPECT_NEAR(od.p2.back() / expected, 1.0, 0.01);
}

TEST(Hbar2, RouteAgreement) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Hbar2Options opt;
  opt.samples = 5;
  for (const HamiltonianSpec& h : {quartic(), example1()}) {
    for (int k = 0; k < 2; ++k) {
      PhasePoint z0 = {u(rng), u(rng)};
      Hbar2Result tr = hbar2_transport(h, z0, 0.5, opt);
      Hbar2Result od = hbar2_ode(h, z0, 0.5, 1000, opt);
      ASSERT_EQ(tr.times.size(), 6u);
      ASSERT_EQ(od.times.size(), 6u);
      for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_DOUBLE_EQ(tr.times[i], od.times[i]);
        EXPECT_NEAR(tr.q2[i], od.q2[i], 1e-6);
        EXPECT_NEAR(tr.p2[i], od.p2[i], 1e-6);
      }
    }
  }
}

TEST(Hbar2, SeriesConsistency) {
  // Depth 10 leaves t^11 / 11! terms, below 1e-6 of the t^5 leading value at t = 0.1.
  TimeTaylorFlow f = taylor_flow(poly(kQuarticPoly), 10, FlowKind::moyal);
  HamiltonianSpec h = quartic();
  const double t = 0.1;
  for (PhasePoint z0 : {PhasePoint{1.0, 0.0}, PhasePoint{0.5, 0.4}}) {
    Hbar2Result od = hbar2_ode(h, z0, t, 400);
    double sq = f.grade_value(0, 2, z0[0], z0[1], t);
    double sp = f.grade_value(1, 2, z0[0], z0[1], t);
    EXPECT_NEAR(od.p2.back() / sp, 1.0, 1e-3);
    if (std::abs(sq) > 1e-12) {
      EXPECT_NEAR(od.q2.back() / sq, 1.0, 1e-3);
    }
  }
}

TEST(Hbar2, CsvAndErrors) {
  Hbar2Result r = hbar2_ode(harmonic(), {1.0, 0.0}, 0.1, 10);
  std::string csv = r.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,Q2,P2,method");
  EXPECT_NE(csv.find(",ode\n"), std::string::npos);
  EXPECT_THROW(hbar2_ode(harmonic(), {1.0, 0.0}, 0.1, 0), InvalidArgument);
  Hbar2Options bad;
  bad.samples = 0;
  EXPECT_THROW(hbar2_transport(harmonic(), {1.0, 0.0}, 0.1, bad), InvalidArgument);
  EXPECT_THROW(hbar2_ode(HamiltonianSpec::parse("p^2/2 - q^6"), {3.0, 0.0}, 5.0, 500), FlowBlowUp);
}

}  // namespace
}  // namespace moyal
