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

#include "moyal/example1.hpp"

#include <cmath>
#include <sstream>

#include "moyal/error.hpp"
#include "moyal/expr_brackets.hpp"

namespace moyal {

std::complex<double> ClosedForm::operator()(const Bindings& at) const {
  if (time_bound) {
    auto t = at.find("t");
    if (t == at.end()) throw InvalidArgument(name + ": t must be bound");
    double bound = std::abs(eval_expr(*time_bound, at).real());
    if (!(std::abs(t->second) < bound)) {
      std::ostringstream msg;
      msg << name << " is only valid for |t| < " << bound << " (got t = " << t->second << ")";
      throw DomainError(msg.str());
    }
  }
  return eval_expr(expr, at);
}

namespace {

Example1 build() {
  Expr q = Expr::variable("q");
  Expr p = Expr::variable("p");
  Expr t = Expr::variable("t");
  Expr m = Expr::variable("m");
  Expr l = Expr::variable("l");
  Expr hbar = Expr::variable("hbar");
  Expr pi = Expr::variable("pi");
  Expr ml2 = m * l * l;
  Expr qp = q * p;
  Expr x = hbar * t / (Expr(4) * ml2);
  Expr y = hbar * t / (Expr(8) * ml2);
  Expr bound = Expr(2) * pi * ml2 / hbar;

  Example1 ex;
  ex.hamiltonian = {"H", qp * qp / (Expr(4) * ml2), std::nullopt};
  Expr classical_phase = qp * t / (Expr(2) * ml2);
  ex.q_classical = {"Q_C", q * exp(classical_phase), std::nullopt};
  ex.p_classical = {"P_C", p * exp(-classical_phase), std::nullopt};

  Expr moyal_phase = Expr(2) / hbar * qp * tan(x);
  ex.q_moyal = {"Q_M", pow(sec(x), 2) * q * exp(moyal_phase), bound};
  ex.p_moyal = {"P_M", pow(sec(x), 2) * p * exp(-moyal_phase), bound};

  Expr phi_phase = Expr(2) / hbar * qp * tan(y);
  Expr phi_bound = Expr(4) * pi * ml2 / hbar;
  ex.phi_plus = {"phi_plus", pow(sec(y), 2) * exp(phi_phase), phi_bound};
  ex.phi_minus = {"phi_minus", pow(sec(y), 2) * exp(-phi_phase), phi_bound};

  Expr inverse_phase = qp / hbar * sin(Expr(2) * x) * pow(cos(x), 2);
  ex.q_inverse = {"q_inverse", pow(cos(x), 2) * q * exp(-inverse_phase), bound};
  ex.p_inverse = {"p_inverse", pow(cos(x), 2) * p * exp(inverse_phase), bound};

  Expr half_i_hbar = Expr(ExactScalar(mpq_class(0), mpq_class(1, 2))) * hbar;
  ex.a_moyal = {"A_M", pow(cos(x), 4) * ex.q_moyal.expr * ex.p_moyal.expr + half_i_hbar, bound};

  Expr lead = t * t / (Expr(16) * ml2 * ml2);
  Expr correction = t * qp / (Expr(6) * ml2);
  ex.q2 = {"Q2", ex.q_classical.expr * lead * (Expr(1) + correction), std::nullopt};
  ex.p2 = {"P2", ex.p_classical.expr * lead * (Expr(1) - correction), std::nullopt};
  return ex;
}

}  // namespace

const Example1& builtin_example1() {
  static const Example1 ex = build();
  return ex;
}

std::pair<std::complex<double>, std::complex<double>> example1_invariant_components(const Bindings& at, double h,
                                                                                     unsigned max_grade) {
  if (!(h > 0.0)) throw InvalidArgument("example1_invariant_components: step must be positive");
  const Example1& ex = builtin_example1();
  auto series = [&](double hbar) {
    Bindings b = at;
    b["hbar"] = hbar;
    ex.q_moyal(b);  // domain guard
    std::vector<std::complex<double>> grades = graded_star_values(ex.q_moyal.expr, ex.p_moyal.expr, max_grade, b);
    std::complex<double> sum = 0.0;
    double scale = 1.0;
    for (const auto& g : grades) {
      sum += scale * g;
      scale *= hbar;
    }
    return sum;
  };
  auto even = [&](double s) { return (series(s) + series(-s)) / 2.0; };
  auto odd = [&](double s) { return (series(s) - series(-s)) / (2.0 * s); };
  std::complex<double> c0 = (4.0 * even(h) - even(2 * h)) / 3.0;
  std::complex<double> c1 = (4.0 * odd(h) - odd(2 * h)) / 3.0;
  return {c0, c1};
}

}  // namespace moyal
