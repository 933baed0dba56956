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

#include <random>
#include <set>
#include <string>

#include <gtest/gtest.h>

#include "moyal/error.hpp"
#include "moyal/star_words.hpp"
#include "oracles.hpp"

namespace moyal {
namespace {

PhasePolynomial P(const char* text) { return PhasePolynomial::parse(text); }

// Oracle fold over a word using the brute-force exponential-operator product.
PhasePolynomial oracle_expand(const StarWord& w) {
  PhasePolynomial acc(1);
  for (const auto& letter : w.letters) acc = testing::brute_force_star(acc, letter);
  return shift_hbar(acc * w.coefficient, w.hbar_power);
}

std::multiset<std::string> word_texts(const StarExpression& e) {
  std::multiset<std::string> out;
  for (const auto& w : e.words) out.insert(to_string(w));
  return out;
}

TEST(Expand, Examples) {
  StarWord qp = qp_word(1, 1);
  EXPECT_EQ(expand(qp), P("q*p + (1/2)*i*hbar"));
  StarWord constant{ExactScalar::rational(-7, 3), 0, {}};
  EXPECT_EQ(expand(constant), P("-7/3"));
  StarExpression diff{{qp_word(1, 1), pq_word(1, 1, ExactScalar(-1))}};
  EXPECT_EQ(expand(diff), P("i*hbar"));
}

TEST(Expand, WordsWithPolynomialLettersMatchOracle) {
  StarWord w{ExactScalar(2), 1, {P("q^2 + p"), P("q*p^2"), P("p^3 - i*q")}};
  EXPECT_EQ(expand(w), oracle_expand(w));
}

TEST(WeylSymmetrize, Examples) {
  StarExpression e = weyl_symmetrize(2, 1);
  EXPECT_EQ(word_texts(e), (std::multiset<std::string>{"(1/3)*(q**q**p)", "(1/3)*(q**p**q)", "(1/3)*(p**q**q)"}));
  StarExpression single = weyl_symmetrize(1, 0);
  ASSERT_EQ(single.words.size(), 1U);
  EXPECT_EQ(to_string(single), "q");
  EXPECT_EQ(expand(e), P("q^2*p"));
  PhasePolynomial via_oracle;
  for (const auto& w : e.words) via_oracle += oracle_expand(w);
  EXPECT_EQ(via_oracle, P("q^2*p"));
  EXPECT_EQ(weyl_symmetrize(3, 3).words.size(), 20U);
}

TEST(StarFunctionS, Examples) {
  EXPECT_EQ(word_texts(star_function_S(P("q^2*p"))), word_texts(weyl_symmetrize(2, 1)));
  StarExpression one = star_function_S(PhasePolynomial(1));
  ASSERT_EQ(one.words.size(), 1U);
  EXPECT_TRUE(one.words[0].letters.empty());
  EXPECT_EQ(expand(one), PhasePolynomial(1));
  PhasePolynomial f = P("3*q^2*p - p^3");
  EXPECT_EQ(expand(star_function_S(f)), f);
  EXPECT_THROW(star_function_S(P("q*hbar")), InvalidArgument);
}

TEST(SecSeries, EulerNumbers) {
  std::vector<mpq_class> s = sec_series(5);
  EXPECT_EQ(s[0], mpq_class(1));
  EXPECT_EQ(s[1], mpq_class(1, 2));
  EXPECT_EQ(s[2], mpq_class(5, 24));
  EXPECT_EQ(s[3], mpq_class(61, 720));
  EXPECT_EQ(s[4], mpq_class(277, 8064));
}

TEST(SasOrder, Examples) {
  StarExpression e = sas_order(P("q^2*p"));
  EXPECT_EQ(word_texts(e), (std::multiset<std::string>{"(1/2)*(q**q**p)", "(1/2)*(p**q**q)"}));
  EXPECT_EQ(expand(e), P("q^2*p"));
  // (q^2 ⋆ p + p ⋆ q^2)/2 by the oracle as well.
  PhasePolynomial oracle = (testing::brute_force_star(P("q^2"), P("p")) + testing::brute_force_star(P("p"), P("q^2"))) *
                           ExactScalar::rational(1, 2);
  EXPECT_EQ(oracle, P("q^2*p"));

  PhasePolynomial f = P("q^3*p^2");
  StarExpression g = sas_order(f);
  EXPECT_EQ(g.words.size(), 4U);  // the correction contributes hbar^2 words
  EXPECT_EQ(sec_correction(f), P("q^3*p^2 + (3/2)*hbar^2*q"));
  EXPECT_EQ(expand(g), f);
  PhasePolynomial without_correction = expand(StarExpression{{qp_word(3, 2, ExactScalar::rational(1, 2)),
                                                              pq_word(3, 2, ExactScalar::rational(1, 2))}});
  EXPECT_NE(without_correction, f);
  EXPECT_THROW(sas_order(P("hbar^2*q")), InvalidArgument);
}

TEST(BchCheck, Examples) {
  EXPECT_TRUE(bch_check(1).passed);
  EXPECT_TRUE(bch_check(2).passed);
  BchReport r6 = bch_check(6);
  EXPECT_TRUE(r6.passed);
  EXPECT_FALSE(r6.first_failing_grade.has_value());
  EXPECT_THROW(bch_check(9), CapExceeded);
  EXPECT_TRUE(bch_check(9, 9).passed);
}

TEST(TextForm, UnicodeJoin) {
  EXPECT_EQ(to_string(qp_word(1, 2), false), "q ⋆ p ⋆ p");
  StarWord w{ExactScalar(3), 2, {PhasePolynomial::q()}};
  EXPECT_EQ(to_string(w), "3*hbar^2*q");
}

TEST(Properties, SymmetrizationIdentity) {
  for (unsigned n = 0; n <= 8; ++n) {
    for (unsigned m = 0; m <= 8; ++m) {
      if (n + m > 10) continue;  // the full 8x8 grid runs in the check suite
      ASSERT_EQ(expand(weyl_symmetrize(n, m)), PhasePolynomial::monomial({n, m, 0})) << n << "," << m;
    }
  }
}

TEST(Properties, SasIdentity) {
  for (unsigned n = 0; n <= 8; ++n) {
    for (unsigned m = 0; n + m <= 8; ++m) {
      PhasePolynomial mono = PhasePolynomial::monomial({n, m, 0});
      ASSERT_EQ(expand(sas_order(mono)), mono) << n << "," << m;
    }
  }
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    PhasePolynomial f = testing::random_polynomial(rng, 6, 5);
    ASSERT_EQ(expand(sas_order(f)), f) << f.str();
  }
}

TEST(Properties, ReorderingResidueIsDivisibleByHbar) {
  for (unsigned n = 0; n <= 4; ++n) {
    for (unsigned m = 0; m <= 4; ++m) {
      PhasePolynomial residue = expand(qp_word(n, m)) - expand(pq_word(n, m));
      ASSERT_TRUE(hbar_component(residue, 0).is_zero());
    }
  }
}

}  // namespace
}  // namespace moyal
