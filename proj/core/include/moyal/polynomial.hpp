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

#ifndef MOYAL_POLYNOMIAL_HPP
#define MOYAL_POLYNOMIAL_HPP

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "moyal/scalar.hpp"

namespace moyal {

/// Exponents of one monomial q^q p^p hbar^hbar.
struct Exponent {
  unsigned q = 0;
  unsigned p = 0;
  unsigned hbar = 0;

  friend auto operator<=>(const Exponent&, const Exponent&) = default;
};

enum class PhaseVar { q, p };

/// Exact polynomial in (q, p) over Gaussian rationals with a formal hbar grading.
///
/// Terms are kept in a map ordered lexicographically by (q, p, hbar) and zero
/// coefficients are never stored, so structural equality is polynomial equality.
/// hbar is never divided by: every graded operator multiplies by ħ^k, k >= 0.
class PhasePolynomial {
 public:
  using TermMap = std::map<Exponent, ExactScalar>;

  PhasePolynomial() = default;
  PhasePolynomial(const ExactScalar& constant);  // NOLINT(google-explicit-constructor)
  PhasePolynomial(long constant) : PhasePolynomial(ExactScalar(constant)) {}  // NOLINT

  static PhasePolynomial monomial(Exponent e, const ExactScalar& c = ExactScalar(1));
  static PhasePolynomial q() { return monomial({1, 0, 0}); }
  static PhasePolynomial p() { return monomial({0, 1, 0}); }
  static PhasePolynomial hbar() { return monomial({0, 0, 1}); }

  /// Parses the polynomial text grammar (`q^2*p + (1/2)*i*hbar`).
  static PhasePolynomial parse(std::string_view text);

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  ExactScalar coefficient(const Exponent& e) const;

  /// Maximum total (q, p) degree; 0 for the zero polynomial.
  unsigned degree() const;
  unsigned degree_hbar() const;
  bool is_hbar_free() const { return degree_hbar() == 0; }
  bool has_real_coefficients() const;

  /// Adds c * monomial(e), pruning a resulting zero.
  void add_term(const Exponent& e, const ExactScalar& c);

  PhasePolynomial& operator+=(const PhasePolynomial& other);
  PhasePolynomial& operator-=(const PhasePolynomial& other);
  PhasePolynomial& operator*=(const ExactScalar& c);
  friend PhasePolynomial operator+(PhasePolynomial a, const PhasePolynomial& b) { return a += b; }
  friend PhasePolynomial operator-(PhasePolynomial a, const PhasePolynomial& b) { return a -= b; }
  friend PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b);
  friend PhasePolynomial operator*(PhasePolynomial a, const ExactScalar& c) { return a *= c; }
  friend PhasePolynomial operator*(const ExactScalar& c, PhasePolynomial a) { return a *= c; }
  PhasePolynomial operator-() const;

  friend bool operator==(const PhasePolynomial&, const PhasePolynomial&) = default;

  /// Canonical text; terms in descending (q, p, hbar) order, `0` when empty.
  std::string str() const;

 private:
  TermMap terms_;
};

/// Multiplies every term by hbar^k.
PhasePolynomial shift_hbar(const PhasePolynomial& f, unsigned k);
PhasePolynomial pow(const PhasePolynomial& f, unsigned exponent);
PhasePolynomial conjugate(const PhasePolynomial& f);
PhasePolynomial derivative(const PhasePolynomial& f, PhaseVar var, unsigned order = 1);

/// (∂_q ∂_p' - ∂_p ∂_q')^k f(q,p) g(q',p') on the diagonal, with no prefactor.
PhasePolynomial bidifferential_power(const PhasePolynomial& f, const PhasePolynomial& g, unsigned k);

/// Grade-n component of the star product, without the hbar^n factor:
/// (1/n!) (i/2)^n (∂_q ∂_p' - ∂_p ∂_q')^n f g.
PhasePolynomial star_n(const PhasePolynomial& f, const PhasePolynomial& g, unsigned n);

/// f ⋆ g = sum_n hbar^n star_n(f, g); the sum ends at min(deg f, deg g).
PhasePolynomial star_product(const PhasePolynomial& f, const PhasePolynomial& g);

PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g);

/// Grade-2n bracket component: (-1)^n / ((2n+1)! 4^n) times the (2n+1)-th
/// bidifferential power. bracket_2n(f, g, 0) is the Poisson bracket.
PhasePolynomial bracket_2n(const PhasePolynomial& f, const PhasePolynomial& g, unsigned n);

/// Moyal bracket sum_n hbar^(2n) bracket_2n(f, g, n).
PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g);

/// Coefficient polynomial of hbar^r (returned with no hbar content).
PhasePolynomial hbar_component(const PhasePolynomial& f, unsigned r);

/// exp[(hbar/4 m omega) ∂_q^2 + (hbar m omega/4) ∂_p^2] f, exact and finite on
/// polynomials. m and omega must be real and nonzero.
PhasePolynomial coherent_smooth(const PhasePolynomial& f, const ExactScalar& m, const ExactScalar& omega);

/// Numeric substitution point. hbar > 0; every value finite.
struct EvalPoint {
  double q = 0.0;
  double p = 0.0;
  double hbar = 1.0;
  std::map<std::string, double, std::less<>> params;

  void validate() const;
};

std::complex<double> eval_poly(const PhasePolynomial& f, const EvalPoint& at);

}  // namespace moyal

#endif  // MOYAL_POLYNOMIAL_HPP
