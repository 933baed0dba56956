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

#ifndef MOYAL_EXAMPLE1_HPP
#define MOYAL_EXAMPLE1_HPP

#include <complex>
#include <optional>
#include <string>
#include <utility>

#include "moyal/expr.hpp"

namespace moyal {

/// A closed form with an optional validity interval |t| < time_bound.
struct ClosedForm {
  std::string name;
  Expr expr;
  std::optional<Expr> time_bound;

  /// Evaluates after checking the interval; throws DomainError outside it.
  std::complex<double> operator()(const Bindings& at) const;
};

/// Closed forms for H = q^2 p^2 / (4 m l^2) in (q, p, t; m, l, hbar).
struct Example1 {
  ClosedForm hamiltonian;
  ClosedForm q_classical;  ///< q exp(qpt / 2ml^2)
  ClosedForm p_classical;  ///< p exp(-qpt / 2ml^2)
  ClosedForm q_moyal;      ///< sec^2(x) q exp((2/hbar) qp tan x), x = hbar t / 4ml^2
  ClosedForm p_moyal;      ///< sec^2(x) p exp(-(2/hbar) qp tan x)
  /// Star exponentials exp_⋆(±tqp / 4ml^2) in the closed form
  /// sec^2(y) exp(±(2/hbar) qp tan y), y = hbar t / 8ml^2.
  ClosedForm phi_plus;
  ClosedForm phi_minus;
  /// Inverse map (Q_M, P_M) -> (q, p); here q and p denote Q_M and P_M.
  ClosedForm q_inverse;
  ClosedForm p_inverse;
  /// cos^4(x) Q_M P_M + i hbar / 2 with Q_M, P_M substituted.
  ClosedForm a_moyal;
  /// Order-hbar^2 coefficients of Q_M and P_M:
  /// Q_C (t^2 / 16 m^2 l^4)(1 + tqp / 6ml^2) and P_C (t^2 / 16 m^2 l^4)(1 - tqp / 6ml^2).
  ClosedForm q2;
  ClosedForm p2;
};

const Example1& builtin_example1();

/// hbar^0 and hbar^1 coefficients of Q_M ⋆ P_M at a point, from the graded star
/// components up to `max_grade`, evaluated at hbar = ±h and ±2h and combined by
/// Richardson extrapolation. `at` must bind q, p, t, m, l; its hbar is ignored.
std::pair<std::complex<double>, std::complex<double>> example1_invariant_components(const Bindings& at, double h,
                                                                                     unsigned max_grade = 4);

}  // namespace moyal

#endif  // MOYAL_EXAMPLE1_HPP
