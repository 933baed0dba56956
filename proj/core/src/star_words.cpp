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

#include "moyal/star_words.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "moyal/error.hpp"

namespace moyal {

namespace {

void require_hbar_free(const PhasePolynomial& f, const char* who) {
  if (!f.is_hbar_free()) {
    throw InvalidArgument(std::string(who) + ": ordering of hbar-carrying symbols is not defined");
  }
}

// Polynomial in auxiliary variables (xi, eta) with PhasePolynomial coefficients,
// truncated at a total (xi, eta) degree.
class AuxSeries {
 public:
  using Key = std::pair<unsigned, unsigned>;

  explicit AuxSeries(unsigned order) : order_(order) {}

  void add(Key k, const PhasePolynomial& c) {
    if (k.first + k.second > order_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  template <class Combine>
  AuxSeries combine(const AuxSeries& other, Combine&& op) const {
    AuxSeries out(order_);
    for (const auto& [ka, ca] : terms_) {
      for (const auto& [kb, cb] : other.terms_) {
        Key k{ka.first + kb.first, ka.second + kb.second};
        if (k.first + k.second <= order_) out.add(k, op(ca, cb));
      }
    }
    return out;
  }

  bool grade_equal(const AuxSeries& other, unsigned grade) const {
    for (unsigned a = 0; a <= grade; ++a) {
      Key k{a, grade - a};
      auto it = terms_.find(k);
      auto jt = other.terms_.find(k);
      bool here = it != terms_.end();
      bool there = jt != other.terms_.end();
      if (here != there || (here && it->second != jt->second)) return false;
    }
    return true;
  }

 private:
  unsigned order_;
  std::map<Key, PhasePolynomial> terms_;
};

ExactScalar i_power_over_factorials(unsigned power, unsigned fa, unsigned fb) {
  ExactScalar c = ExactScalar::imaginary_unit().pow(power);
  return c / ExactScalar(factorial(fa) * factorial(fb));
}

}  // namespace

StarExpression& StarExpression::operator+=(const StarExpression& other) {
  words.insert(words.end(), other.words.begin(), other.words.end());
  return *this;
}

StarWord qp_word(unsigned n, unsigned m, const ExactScalar& coefficient) {
  StarWord w{coefficient, 0, {}};
  w.letters.insert(w.letters.end(), n, PhasePolynomial::q());
  w.letters.insert(w.letters.end(), m, PhasePolynomial::p());
  return w;
}

StarWord pq_word(unsigned n, unsigned m, const ExactScalar& coefficient) {
  StarWord w{coefficient, 0, {}};
  w.letters.insert(w.letters.end(), m, PhasePolynomial::p());
  w.letters.insert(w.letters.end(), n, PhasePolynomial::q());
  return w;
}

PhasePolynomial expand(const StarWord& word) {
  PhasePolynomial acc(1);
  for (const auto& letter : word.letters) acc = star_product(acc, letter);
  return shift_hbar(acc * word.coefficient, word.hbar_power);
}

PhasePolynomial expand(const StarExpression& e) {
  PhasePolynomial sum;
  for (const auto& w : e.words) sum += expand(w);
  return sum;
}

StarExpression weyl_symmetrize(unsigned n, unsigned m) {
  // Distinct arrangements of the multiset {0^n, 1^m}; 0 stands for q.
  std::vector<int> pattern(n, 0);
  pattern.insert(pattern.end(), m, 1);
  ExactScalar weight = ExactScalar(1) / ExactScalar(binomial(n + m, n));
  StarExpression out;
  do {
    StarWord w{weight, 0, {}};
    w.letters.reserve(pattern.size());
    for (int letter : pattern) w.letters.push_back(letter == 0 ? PhasePolynomial::q() : PhasePolynomial::p());
    out.words.push_back(std::move(w));
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return out;
}

StarExpression star_function_S(const PhasePolynomial& f) {
  require_hbar_free(f, "star_function_S");
  StarExpression out;
  for (const auto& [e, c] : f.terms()) {
    StarExpression sym = weyl_symmetrize(e.q, e.p);
    for (auto& w : sym.words) w.coefficient *= c;
    out += sym;
  }
  return out;
}

std::vector<mpq_class> sec_series(unsigned terms) {
  std::vector<mpq_class> cos_coeffs(terms);
  for (unsigned k = 0; k < terms; ++k) {
    cos_coeffs[k] = mpq_class(1) / factorial(2 * k);
    if (k % 2 == 1) cos_coeffs[k] = -cos_coeffs[k];
  }
  std::vector<mpq_class> sec(terms);
  for (unsigned k = 0; k < terms; ++k) {
    mpq_class acc = k == 0 ? mpq_class(1) : mpq_class(0);
    for (unsigned j = 1; j <= k; ++j) acc -= cos_coeffs[j] * sec[k - j];
    sec[k] = acc;
  }
  return sec;
}

PhasePolynomial sec_correction(const PhasePolynomial& f) {
  unsigned reach = 0;
  for (const auto& [e, c] : f.terms()) reach = std::max(reach, std::min(e.q, e.p) / 2);
  std::vector<mpq_class> sec = sec_series(reach + 1);
  PhasePolynomial out;
  for (unsigned k = 0; k <= reach; ++k) {
    // c_k (hbar/2)^(2k) (∂_q ∂_p)^(2k)
    PhasePolynomial d = derivative(derivative(f, PhaseVar::q, 2 * k), PhaseVar::p, 2 * k);
    mpq_class weight = sec[k] / mpq_class(mpz_class(1) << (2 * k));
    out += shift_hbar(d * ExactScalar(weight), 2 * k);
  }
  return out;
}

StarExpression sas_order(const PhasePolynomial& f) {
  require_hbar_free(f, "sas_order");
  StarExpression out;
  ExactScalar half = ExactScalar::rational(1, 2);
  PhasePolynomial corrected = sec_correction(f);
  for (const auto& [e, c] : corrected.terms()) {
    ExactScalar weight = c * half;
    StarWord left = qp_word(e.q, e.p, weight);
    StarWord right = pq_word(e.q, e.p, weight);
    left.hbar_power = right.hbar_power = e.hbar;
    out.words.push_back(std::move(left));
    out.words.push_back(std::move(right));
  }
  return out;
}

BchReport bch_check(unsigned order, unsigned cap) {
  if (order > cap) throw CapExceeded("bch_check order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
  AuxSeries exp_q(order), exp_p(order), phase(order), joint(order);
  for (unsigned j = 0; j <= order; ++j) {
    exp_q.add({j, 0}, pow(PhasePolynomial::q(), j) * i_power_over_factorials(j, j, 0));
    exp_p.add({0, j}, pow(PhasePolynomial::p(), j) * i_power_over_factorials(j, j, 0));
  }
  // e^{i hbar xi eta / 2} = sum_r (i/2)^r hbar^r (xi eta)^r / r!
  for (unsigned r = 0; 2 * r <= order; ++r) {
    ExactScalar c = ExactScalar(mpq_class(0), mpq_class(1, 2)).pow(r) / ExactScalar(factorial(r));
    phase.add({r, r}, shift_hbar(PhasePolynomial(c), r));
  }
  // e^{i xi q + i eta p} = sum_{a,b} i^(a+b) xi^a eta^b q^a p^b / (a! b!)
  for (unsigned a = 0; a <= order; ++a) {
    for (unsigned b = 0; a + b <= order; ++b) {
      joint.add({a, b}, PhasePolynomial::monomial({a, b, 0}, i_power_over_factorials(a + b, a, b)));
    }
  }
  AuxSeries starred = exp_q.combine(exp_p, [](const PhasePolynomial& x, const PhasePolynomial& y) {
    return star_product(x, y);
  });
  AuxSeries lhs = starred.combine(phase, [](const PhasePolynomial& x, const PhasePolynomial& y) { return x * y; });
  BchReport report{order, true, std::nullopt};
  for (unsigned grade = 0; grade <= order; ++grade) {
    if (!lhs.grade_equal(joint, grade)) {
      report.passed = false;
      report.first_failing_grade = grade;
      break;
    }
  }
  return report;
}

std::string to_string(const StarWord& word, bool ascii) {
  std::string prefix;
  if (!word.coefficient.is_one() || word.letters.empty()) prefix = word.coefficient.str();
  if (word.hbar_power > 0) {
    std::string h = "hbar" + (word.hbar_power > 1 ? "^" + std::to_string(word.hbar_power) : std::string());
    prefix = prefix.empty() ? h : prefix + "*" + h;
  }
  std::string body;
  for (const auto& letter : word.letters) {
    if (!body.empty()) body += ascii ? "**" : " ⋆ ";
    std::string s = letter.str();
    body += letter.terms().size() > 1 ? "(" + s + ")" : s;
  }
  if (body.empty()) return prefix;
  if (prefix.empty()) return body;
  return prefix + "*" + (word.letters.size() > 1 ? "(" + body + ")" : body);
}

std::string to_string(const StarExpression& e, bool ascii) {
  if (e.words.empty()) return "0";
  std::string out;
  for (const auto& w : e.words) {
    if (!out.empty()) out += " + ";
    out += to_string(w, ascii);
  }
  return out;
}

}  // namespace moyal
