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

#ifndef MOYAL_EXPR_HPP
#define MOYAL_EXPR_HPP

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "moyal/polynomial.hpp"
#include "moyal/scalar.hpp"

namespace moyal {

enum class Function { exp, sin, cos, tan, sec, sinh, cosh };

namespace detail {
struct AtomData;
}

/// A non-constant factor: a named variable, a function applied to an Expr, or
/// the reciprocal of a multi-term Expr. Immutable and shared.
using Atom = std::shared_ptr<const detail::AtomData>;

struct Factor {
  Atom atom;
  int exponent = 1;
};

/// Factors sorted by atom order, each atom at most once, no zero exponents.
using Monomial = std::vector<Factor>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Closed-form expression in q, p, t and named parameters.
///
/// Stored as a sum of exact coefficients times monomials in atoms. The only
/// rewriting is ring normalization: like terms merge, integer powers of sums
/// expand, products of exponentials merge into one exponential, and functions
/// of an exact zero fold to their value. No other identities are applied.
class Expr {
 public:
  using TermMap = std::map<Monomial, ExactScalar, MonomialLess>;

  Expr() = default;
  Expr(const ExactScalar& constant);  // NOLINT(google-explicit-constructor)
  Expr(long constant) : Expr(ExactScalar(constant)) {}  // NOLINT(google-explicit-constructor)

  /// Named variable or parameter; `pi` evaluates to π unless bound.
  static Expr variable(std::string_view name);
  static Expr from_polynomial(const PhasePolynomial& f);

  /// Polynomial grammar plus `/`, parameter names and the calls
  /// exp, sin, cos, tan, sec, sinh, cosh.
  static Expr parse(std::string_view text);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; throws InvalidArgument if the expression is not constant.
  ExactScalar constant_value() const;
  bool depends_on(std::string_view name) const;

  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);
  /// Throws InvalidArgument on an exact zero divisor.
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  /// Structural equality of normal forms.
  friend bool operator==(const Expr& a, const Expr& b);

  /// Parseable text; parsing it back gives the same normal form.
  std::string str() const;

  /// Adds c times a monomial, normalizing it first.
  void add_term(Monomial m, const ExactScalar& c);

 private:
  TermMap terms_;
};

Expr pow(const Expr& base, long exponent);
Expr apply(Function f, const Expr& arg);
Expr exp(const Expr& u);
Expr sin(const Expr& u);
Expr cos(const Expr& u);
Expr tan(const Expr& u);
Expr sec(const Expr& u);
Expr sinh(const Expr& u);
Expr cosh(const Expr& u);

const char* function_name(Function f);

/// Exact derivative with respect to a variable.
Expr differentiate(const Expr& e, std::string_view var);

using Substitution = std::map<std::string, Expr, std::less<>>;
/// Simultaneous replacement of variables.
Expr substitute(const Expr& e, const Substitution& s);

/// Sorted names of the variables e depends on.
std::vector<std::string> free_variables(const Expr& e);

/// Inverse of from_polynomial; throws InvalidArgument unless e is a polynomial
/// in q, p, hbar with nonnegative exponents.
PhasePolynomial to_polynomial(const Expr& e);

/// Numeric values of variables; `pi` defaults to π.
template <class Num>
using NumericBindings = std::map<std::string, Num, std::less<>>;
using Bindings = NumericBindings<double>;

/// Evaluates with Num in {double, std::complex<double>, TaylorJet}.
/// Real Num types reject non-real coefficients with DomainError; sec and tan
/// raise DomainError where |cos| is below 1e-12; unbound variables raise
/// InvalidArgument.
template <class Num>
Num evaluate(const Expr& e, const NumericBindings<Num>& vars);

std::complex<double> eval_expr(const Expr& e, const Bindings& vars);

}  // namespace moyal

#endif  // MOYAL_EXPR_HPP
