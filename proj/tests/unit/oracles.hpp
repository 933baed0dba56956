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

// Test-only oracles. Nothing here calls the graded operators under test.

#ifndef MOYAL_TESTS_ORACLES_HPP
#define MOYAL_TESTS_ORACLES_HPP

#include <array>
#include <map>
#include <random>

#include "moyal/polynomial.hpp"

namespace moyal::testing {

// f(q,p) g(q',p') as a polynomial in (q, p, q', p', hbar).
class TensorPolynomial {
 public:
  using Key = std::array<unsigned, 5>;

  TensorPolynomial(const PhasePolynomial& f, const PhasePolynomial& g) {
    for (const auto& [ef, cf] : f.terms()) {
      for (const auto& [eg, cg] : g.terms()) add({ef.q, ef.p, eg.q, eg.p, ef.hbar + eg.hbar}, cf * cg);
    }
  }

  // Applies ∂_q ∂_p' - ∂_p ∂_q' once.
  void apply_operator() {
    std::map<Key, ExactScalar> out;
    auto push = [&out](Key k, const ExactScalar& c) {
      if (c.is_zero()) return;
      auto [it, ins] = out.try_emplace(k, c);
      if (!ins) {
        it->second += c;
        if (it->second.is_zero()) out.erase(it);
      }
    };
    for (const auto& [k, c] : terms_) {
      if (k[0] > 0 && k[3] > 0) {
        Key d = k;
        d[0] -= 1;
        d[3] -= 1;
        push(d, c * ExactScalar(static_cast<long>(k[0] * k[3])));
      }
      if (k[1] > 0 && k[2] > 0) {
        Key d = k;
        d[1] -= 1;
        d[2] -= 1;
        push(d, -c * ExactScalar(static_cast<long>(k[1] * k[2])));
      }
    }
    terms_ = std::move(out);
  }

  PhasePolynomial diagonal() const {
    PhasePolynomial out;
    for (const auto& [k, c] : terms_) out.add_term({k[0] + k[2], k[1] + k[3], k[4]}, c);
    return out;
  }

 private:
  void add(Key k, const ExactScalar& c) {
    if (!c.is_zero()) terms_[k] += c;
  }
  std::map<Key, ExactScalar> terms_;
};

// Taylor series exp((i hbar/2) D) f g, summed until the operator annihilates.
inline PhasePolynomial brute_force_star(const PhasePolynomial& f, const PhasePolynomial& g) {
  TensorPolynomial t(f, g);
  PhasePolynomial out;
  ExactScalar weight(1);
  for (unsigned n = 0;; ++n) {
    PhasePolynomial grade = t.diagonal();
    if (grade.is_zero()) break;
    out += shift_hbar(grade * weight, n);
    t.apply_operator();
    weight = weight * ExactScalar(mpq_class(0), mpq_class(1, 2)) / ExactScalar(static_cast<long>(n + 1));
  }
  return out;
}

// Sine series (2/hbar) sin((hbar/2) D) f g.
inline PhasePolynomial brute_force_moyal(const PhasePolynomial& f, const PhasePolynomial& g) {
  TensorPolynomial t(f, g);
  t.apply_operator();
  PhasePolynomial out;
  ExactScalar weight(1);  // (-1)^n (1/2)^(2n) / (2n+1)!
  for (unsigned n = 0;; ++n) {
    PhasePolynomial grade = t.diagonal();
    if (grade.is_zero()) break;
    out += shift_hbar(grade * weight, 2 * n);
    t.apply_operator();
    t.apply_operator();
    weight = -weight / ExactScalar(static_cast<long>(4 * (2 * n + 2) * (2 * n + 3)));
  }
  return out;
}

inline PhasePolynomial random_polynomial(std::mt19937_64& rng, unsigned max_degree, unsigned max_terms,
                                         bool real = false) {
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<unsigned> nterms(1, max_terms);
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  PhasePolynomial out;
  unsigned n = nterms(rng);
  for (unsigned k = 0; k < n; ++k) {
    unsigned a = deg(rng);
    unsigned b = std::uniform_int_distribution<unsigned>(0, max_degree - a)(rng);
    mpq_class re(mpz_class(num(rng)), mpz_class(den(rng)));
    mpq_class im = real ? mpq_class(0) : mpq_class(mpz_class(num(rng)), mpz_class(den(rng)));
    ExactScalar c(re, im);
    out.add_term({a, b, 0}, c);
  }
  return out;
}

}  // namespace moyal::testing

#endif  // MOYAL_TESTS_ORACLES_HPP
