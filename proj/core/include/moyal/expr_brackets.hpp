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

#ifndef MOYAL_EXPR_BRACKETS_HPP
#define MOYAL_EXPR_BRACKETS_HPP

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "moyal/expr.hpp"

namespace moyal {

/// Default maximum grade n accepted by the graded operators on expressions.
inline constexpr unsigned kDefaultBracketCap = 12;

/// Lazily filled table of ∂q^a ∂p^b f.
class DerivativeTable {
 public:
  explicit DerivativeTable(Expr f);

  const Expr& get(unsigned a, unsigned b);
  /// Numeric value of get(a, b), cached per table (one table per point).
  std::complex<double> value(unsigned a, unsigned b, const Bindings& at);

 private:
  std::map<std::pair<unsigned, unsigned>, Expr> table_;
  std::map<std::pair<unsigned, unsigned>, std::complex<double>> values_;
};

/// ∂_q f ∂_p g - ∂_p f ∂_q g.
Expr poisson_expr(const Expr& f, const Expr& g);

/// (∂_q ∂_p' - ∂_p ∂_q')^k f g', no prefactor.
Expr bidifferential_power_expr(DerivativeTable& f, DerivativeTable& g, unsigned k);

/// Grade-2n bracket component, without hbar^(2n).
/// Throws CapExceeded when n > cap.
Expr bracket_2n_expr(const Expr& f, const Expr& g, unsigned n, unsigned cap = kDefaultBracketCap);

/// Grade-n star component, without hbar^n. Throws CapExceeded when n > cap.
Expr star_n_expr(const Expr& f, const Expr& g, unsigned n, unsigned cap = kDefaultBracketCap);

/// Values of star_n_expr(f, g, n) at one point for n = 0..max_grade.
std::vector<std::complex<double>> graded_star_values(const Expr& f, const Expr& g, unsigned max_grade,
                                                     const Bindings& at, unsigned cap = kDefaultBracketCap);

/// Values of bracket_2n_expr(f, g, n) at one point for n = 0..max_n.
std::vector<std::complex<double>> graded_bracket_values(const Expr& f, const Expr& g, unsigned max_n,
                                                        const Bindings& at, unsigned cap = kDefaultBracketCap);

struct BracketReport {
  /// Cumulative value after each grade 0, 2, ..., 2N.
  std::vector<std::complex<double>> partial_sums;
  bool converged = false;
  double last_term_magnitude = 0.0;
};

/// Partial sums of sum_n hbar^(2n) bracket_2n(f, g) at a point, hbar taken from
/// `at`. Converged when the last term is below `tolerance` and the last two
/// partial sums differ by less than it.
BracketReport moyal_bracket_truncated(const Expr& f, const Expr& g, unsigned max_n, const Bindings& at,
                                      double tolerance, unsigned cap = kDefaultBracketCap);

}  // namespace moyal

#endif  // MOYAL_EXPR_BRACKETS_HPP
