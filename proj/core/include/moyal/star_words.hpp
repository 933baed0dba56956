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

#ifndef MOYAL_STAR_WORDS_HPP
#define MOYAL_STAR_WORDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "moyal/polynomial.hpp"

namespace moyal {

/// coefficient * hbar^hbar_power * (letters[0] ⋆ letters[1] ⋆ ...).
///
/// Letters are stored as given and never pre-multiplied; an empty word denotes
/// its coefficient.
struct StarWord {
  ExactScalar coefficient{1};
  unsigned hbar_power = 0;
  std::vector<PhasePolynomial> letters;
};

/// Formal sum of star words. No canonical form: different orderings of the
/// same symbol are different expressions.
struct StarExpression {
  std::vector<StarWord> words;

  StarExpression& operator+=(const StarExpression& other);
};

/// Star words of `n` letters q followed by `m` letters p.
StarWord qp_word(unsigned n, unsigned m, const ExactScalar& coefficient = ExactScalar(1));
/// Star words of `m` letters p followed by `n` letters q.
StarWord pq_word(unsigned n, unsigned m, const ExactScalar& coefficient = ExactScalar(1));

/// Left fold of the star product over each word, summed.
PhasePolynomial expand(const StarWord& word);
PhasePolynomial expand(const StarExpression& e);

/// Average of every distinct arrangement of n letters q and m letters p.
StarExpression weyl_symmetrize(unsigned n, unsigned m);

/// Weyl-symmetric star function of an hbar-free polynomial.
/// Throws InvalidArgument if f carries hbar.
StarExpression star_function_S(const PhasePolynomial& f);

/// Taylor coefficients of sec(x), exact: sec(x) = sum_k c_k x^(2k).
std::vector<mpq_class> sec_series(unsigned terms);

/// sec((hbar/2) ∂_q ∂_p) f, finite on polynomials.
PhasePolynomial sec_correction(const PhasePolynomial& f);

/// Standard-antistandard ordering: each monomial q^n p^m of sec_correction(f)
/// becomes (1/2)(q^n ⋆ p^m + p^m ⋆ q^n), so that expand(sas_order(f)) == f.
/// Throws InvalidArgument if f carries hbar.
StarExpression sas_order(const PhasePolynomial& f);

/// Outcome of the truncated identity
///   T(e^{i xi q}) ⋆ T(e^{i eta p}) T(e^{i hbar xi eta / 2}) == T(e^{i xi q + i eta p})
/// where T truncates to total (xi, eta) degree `order`.
struct BchReport {
  unsigned order = 0;
  bool passed = false;
  std::optional<unsigned> first_failing_grade;
};

/// Throws CapExceeded when order > cap.
BchReport bch_check(unsigned order, unsigned cap = 8);

/// Text form; `ascii` joins letters with `**`, otherwise with ` ⋆ `.
std::string to_string(const StarWord& word, bool ascii = true);
std::string to_string(const StarExpression& e, bool ascii = true);

}  // namespace moyal

#endif  // MOYAL_STAR_WORDS_HPP
