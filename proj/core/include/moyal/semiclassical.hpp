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

#ifndef MOYAL_SEMICLASSICAL_HPP
#define MOYAL_SEMICLASSICAL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "moyal/classical_flow.hpp"
#include "moyal/expr.hpp"
#include "moyal/polynomial.hpp"

namespace moyal {

/// Default maximum depth of the exact time-Taylor route.
inline constexpr unsigned kDefaultTaylorCap = 10;

/// Iterates of one seed: lambda[n] = {lambda[n-1], H}, omega[n] = [omega[n-1], H],
/// with lambda[0] = omega[0] = seed.
struct BracketChain {
  std::vector<PhasePolynomial> lambda;
  std::vector<PhasePolynomial> omega;
};

struct IteratedBrackets {
  BracketChain q;
  BracketChain p;
};

/// Throws InvalidArgument if H carries hbar, CapExceeded if depth > cap.
IteratedBrackets iterated_brackets(const PhasePolynomial& h, unsigned depth, unsigned cap = kDefaultTaylorCap);

enum class FlowKind { classical, moyal };

/// Z(t) = sum_n (t^n / n!) coefficients[n], exact; coefficients[n] is the
/// (position, momentum) pair.
struct TimeTaylorFlow {
  unsigned depth = 0;
  FlowKind kind = FlowKind::classical;
  std::vector<std::array<PhasePolynomial, 2>> coefficients;

  /// Value of component c (0 = Q, 1 = P) at (q, p; t), restricted to the
  /// hbar^r grade.
  double grade_value(int c, unsigned r, double q, double p, double t) const;
};

TimeTaylorFlow taylor_flow(const PhasePolynomial& h, unsigned depth, FlowKind kind, unsigned cap = kDefaultTaylorCap);

struct DivergenceReport {
  std::string seed;
  std::optional<unsigned> first_divergent_order;
  /// omega[n] - lambda[n] at the first divergent order; zero if none.
  PhasePolynomial difference;
  /// per_order_equal[k] compares order k, for k = 0..depth.
  std::vector<bool> per_order_equal;

  std::string to_json() const;
};

/// Reports for the seeds q and p, in that order.
std::array<DivergenceReport, 2> divergence_order(const PhasePolynomial& h, unsigned depth,
                                                 unsigned cap = kDefaultTaylorCap);

/// V(q) = H - p^2 / 2m, checked to be a function of q alone.
PhasePolynomial potential_of(const PhasePolynomial& h, const ExactScalar& m);

/// Exact order-7 differences for a cubic potential against the quoted term
/// 5 hbar^2 (V''')^3 / (4 m^4), per seed.
struct CubicTermReport {
  PhasePolynomial hamiltonian;
  PhasePolynomial quoted;  ///< 5 hbar^2 (V''')^3 / (4 m^4)
  std::array<PhasePolynomial, 2> difference_order7;
  std::array<std::optional<unsigned>, 2> first_divergent_order;
  std::array<bool, 2> matches_quoted;

  std::string summary() const;
};

CubicTermReport cubic_term_report(const PhasePolynomial& potential, const ExactScalar& m);

/// A2 = -J_ik J_jl (∂i∂j B)[(1/16) ∂k∂l B + (1/24) ∂k B ∂l B] with J_qp = 1,
/// J_pq = -1, expanded over q and p.
Expr star_exp_A2(const Expr& b);

/// Compares the hbar^2 coefficient of the closed-form star exponential
/// sec^2(hbar c / 2) exp((2/hbar) tan(hbar c / 2) qp) with A2(c qp).
struct PrefactorReport {
  double c = 0.0;
  double oracle_constant = 0.0;       ///< qp-free part of A2(c qp)
  double closed_form_constant = 0.0;
  double oracle_qp = 0.0;             ///< qp coefficient of A2(c qp)
  double closed_form_qp = 0.0;
  /// sec power k that reproduces the closed-form constant, k c^2 / 8.
  double implied_sec_power_closed_form = 0.0;
  double implied_sec_power_oracle = 0.0;
  bool consistent = false;

  std::string summary() const;
};

PrefactorReport prefactor_report(double c);

/// Evaluator of the two hbar^2 inhomogeneous contractions driving Z2:
///   term16_d = -(1/16) J_ik J_jl ∂a∂b F_d ∂i∂j Z_a ∂k∂l Z_b
///   term24_d = -(1/24) J_ik J_jl ∂a∂b∂c F_d ∂i∂j Z_a ∂k Z_b ∂l Z_c
/// with F = (∂H/∂p, -∂H/∂q) evaluated at the flowed point and Z the flow jet.
class Hbar2Inhomogeneity {
 public:
  struct Terms {
    std::array<double, 2> term16{};
    std::array<double, 2> term24{};
    std::array<double, 2> total() const { return {term16[0] + term24[0], term16[1] + term24[1]}; }
  };

  explicit Hbar2Inhomogeneity(const HamiltonianSpec& h) : h_(h) {}

  /// Partials of F at z as a jet of order 3.
  std::array<TaylorJet, 2> field_partials(const PhasePoint& z) const;
  /// z is the (order >= 2) flow jet.
  Terms operator()(const std::array<TaylorJet, 2>& z) const;
  Terms operator()(const std::array<TaylorJet, 2>& z, const std::array<TaylorJet, 2>& field) const;

 private:
  HamiltonianSpec h_;
};

Hbar2Inhomogeneity hbar2_inhomogeneity(const HamiltonianSpec& h);

struct Hbar2Result {
  std::vector<double> times;
  std::vector<double> q2;
  std::vector<double> p2;
  std::string method;

  std::string to_csv() const;
};

struct Hbar2Options {
  double t0 = 0.0;
  /// Quadrature nodes per unit time (transport route); at least 16 are used.
  int quad_nodes_per_unit_time = 64;
  double steps_per_unit_time = kDefaultStepsPerUnitTime;
  /// Output rows at t0 + k (t_final - t0) / samples, k = 0..samples.
  int samples = 1;
};

/// Z2(z0, t) = ∫ [Z0 at time t - τ, H]_2 (Φ_τ(z0)) dτ over [t0, t] by composite
/// Simpson, one order-3 jet integration per node.
Hbar2Result hbar2_transport(const HamiltonianSpec& h, const PhasePoint& z0, double t_final,
                            const Hbar2Options& options = {});

/// Z2' = DF(Z0) Z2 + term16 + term24 integrated with the flow and its
/// order-2 jets in one RK4 pass; `steps` over the whole span.
Hbar2Result hbar2_ode(const HamiltonianSpec& h, const PhasePoint& z0, double t_final, int steps,
                      const Hbar2Options& options = {});

}  // namespace moyal

#endif  // MOYAL_SEMICLASSICAL_HPP
