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

#ifndef MOYAL_CLASSICAL_FLOW_HPP
#define MOYAL_CLASSICAL_FLOW_HPP

#include <array>
#include <string>
#include <vector>

#include "moyal/expr.hpp"
#include "moyal/jet.hpp"

namespace moyal {

/// Default RK4 resolution and finite-difference step.
inline constexpr double kDefaultStepsPerUnitTime = 2000.0;
inline constexpr double kDefaultFiniteDifferenceStep = 1e-5;

using PhasePoint = std::array<double, 2>;

/// A real, time- and hbar-independent Hamiltonian H(q, p).
class HamiltonianSpec {
 public:
  /// Binds numeric parameters exactly (each double converted to its exact
  /// rational value). The result may depend on q and p only. Throws
  /// InvalidArgument otherwise, or if H is not real at probe points.
  explicit HamiltonianSpec(const Expr& h, const Bindings& params = {});
  static HamiltonianSpec parse(std::string_view text, const Bindings& params = {});

  const Expr& hamiltonian() const noexcept { return h_; }
  /// (∂H/∂p, -∂H/∂q).
  const std::array<Expr, 2>& vector_field() const noexcept { return field_; }

  double energy(const PhasePoint& z) const;
  /// Vector field evaluated at jets, so the result carries derivatives.
  std::array<TaylorJet, 2> field(const TaylorJet& q, const TaylorJet& p) const;
  PhasePoint field(const PhasePoint& z) const;

 private:
  Expr h_;
  std::array<Expr, 2> field_;
};

/// Flow map derivatives at one time: Z[i] carries ∂^{a+b} Z_i/∂q^a∂p^b.
struct FlowJet {
  int order = 0;
  std::array<TaylorJet, 2> z;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<PhasePoint> states;
  /// Empty unless integrated with jets; otherwise one per time.
  std::vector<FlowJet> jets;
};

/// Number of steps for a span at the default resolution (at least 1).
int default_steps(double span);

/// Classical RK4 for q' = ∂H/∂p, p' = -∂H/∂q from (t0, z0) to t_final.
/// Throws FlowBlowUp with the failure time on a non-finite state.
Trajectory integrate_flow(const HamiltonianSpec& h, const PhasePoint& z0, double t_final, int steps,
                          double t0 = 0.0);

/// As integrate_flow, also carrying jets of the flow map of the given order
/// (1..TaylorJet::kMaxOrder) through the same stepper.
Trajectory integrate_flow_jets(const HamiltonianSpec& h, const PhasePoint& z0, double t_final, int steps, int order,
                               double t0 = 0.0);

/// One RK4 step on jets; exposed for callers that carry extra state.
std::array<TaylorJet, 2> rk4_step(const HamiltonianSpec& h, const std::array<TaylorJet, 2>& z, double dt);

/// Jet of order `order` of the time-`duration` flow map based at z0.
FlowJet flow_jet(const HamiltonianSpec& h, const PhasePoint& z0, double duration, int order, int steps);

/// max |H(state) - H(z0)|.
double check_energy(const Trajectory& traj, const HamiltonianSpec& h);
/// max |det(first-order jet) - 1|; throws InvalidArgument without jets.
double check_symplectic(const Trajectory& traj);

struct TransportOptions {
  int samples = 10;
  double fd_step = kDefaultFiniteDifferenceStep;
  double steps_per_unit_time = kDefaultStepsPerUnitTime;
};

/// max over sampled times s in (0, t] of |d/ds A0(Φ_s(z0)) - {A0, H}(Φ_s(z0))|,
/// the time derivative by central differences.
double check_transport(const Expr& a0, const HamiltonianSpec& h, const PhasePoint& z0, double t,
                       const TransportOptions& options = {});

/// CSV with header t,Q,P and, with jets, the partials of Q and P grouped by
/// order: for each order k, Q then P, and within each a = k..0 for
/// ∂^k/∂q^a∂p^(k-a) (columns such as dQdq, d2Qdqdp). 17 significant digits.
std::string to_csv(const Trajectory& traj);

}  // namespace moyal

#endif  // MOYAL_CLASSICAL_FLOW_HPP
