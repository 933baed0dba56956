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

#include "moyal/expr_brackets.hpp"

#include <cmath>
#include <string>

#include "moyal/error.hpp"

namespace moyal {

namespace {

void check_cap(unsigned n, unsigned cap, const char* who) {
  if (n > cap) {
    throw CapExceeded(std::string(who) + ": grade " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
}

ExactScalar star_weight(unsigned n) {
  return ExactScalar(mpq_class(0), mpq_class(1, 2)).pow(n) / ExactScalar(factorial(n));
}

ExactScalar bracket_weight(unsigned n) {
  mpq_class w = mpq_class(1) / (factorial(2 * n + 1) * mpq_class(mpz_class(1) << (2 * n)));
  if (n % 2 == 1) w = -w;
  return ExactScalar(w);
}

std::complex<double> bidifferential_value(DerivativeTable& f, DerivativeTable& g, unsigned k, const Bindings& at) {
  std::complex<double> sum = 0.0;
  for (unsigned j = 0; j <= k; ++j) {
    std::complex<double> left = f.value(k - j, j, at);
    if (left == 0.0) continue;
    std::complex<double> right = g.value(j, k - j, at);
    double w = to_double(binomial(k, j));
    sum += (j % 2 == 0 ? w : -w) * left * right;
  }
  return sum;
}

}  // namespace

DerivativeTable::DerivativeTable(Expr f) { table_.emplace(std::make_pair(0U, 0U), std::move(f)); }

const Expr& DerivativeTable::get(unsigned a, unsigned b) {
  auto key = std::make_pair(a, b);
  auto it = table_.find(key);
  if (it != table_.end()) return it->second;
  Expr d = b > 0 ? differentiate(get(a, b - 1), "p") : differentiate(get(a - 1, 0), "q");
  return table_.emplace(key, std::move(d)).first->second;
}

std::complex<double> DerivativeTable::value(unsigned a, unsigned b, const Bindings& at) {
  auto key = std::make_pair(a, b);
  auto it = values_.find(key);
  if (it != values_.end()) return it->second;
  const Expr& e = get(a, b);
  std::complex<double> v = e.is_zero() ? std::complex<double>(0.0) : eval_expr(e, at);
  return values_.emplace(key, v).first->second;
}

Expr poisson_expr(const Expr& f, const Expr& g) {
  return differentiate(f, "q") * differentiate(g, "p") - differentiate(f, "p") * differentiate(g, "q");
}

Expr bidifferential_power_expr(DerivativeTable& f, DerivativeTable& g, unsigned k) {
  Expr sum;
  for (unsigned j = 0; j <= k; ++j) {
    const Expr& left = f.get(k - j, j);
    if (left.is_zero()) continue;
    const Expr& right = g.get(j, k - j);
    if (right.is_zero()) continue;
    ExactScalar w(binomial(k, j));
    if (j % 2 == 1) w = -w;
    sum += Expr(w) * left * right;
  }
  return sum;
}

Expr bracket_2n_expr(const Expr& f, const Expr& g, unsigned n, unsigned cap) {
  check_cap(n, cap, "bracket_2n_expr");
  DerivativeTable tf(f);
  DerivativeTable tg(g);
  return Expr(bracket_weight(n)) * bidifferential_power_expr(tf, tg, 2 * n + 1);
}

Expr star_n_expr(const Expr& f, const Expr& g, unsigned n, unsigned cap) {
  check_cap(n, cap, "star_n_expr");
  DerivativeTable tf(f);
  DerivativeTable tg(g);
  return Expr(star_weight(n)) * bidifferential_power_expr(tf, tg, n);
}

std::vector<std::complex<double>> graded_star_values(const Expr& f, const Expr& g, unsigned max_grade,
                                                     const Bindings& at, unsigned cap) {
  check_cap(max_grade, cap, "graded_star_values");
  DerivativeTable tf(f);
  DerivativeTable tg(g);
  std::vector<std::complex<double>> out;
  out.reserve(max_grade + 1);
  for (unsigned n = 0; n <= max_grade; ++n) {
    out.push_back(star_weight(n).to_complex() * bidifferential_value(tf, tg, n, at));
  }
  return out;
}

std::vector<std::complex<double>> graded_bracket_values(const Expr& f, const Expr& g, unsigned max_n,
                                                        const Bindings& at, unsigned cap) {
  check_cap(max_n, cap, "graded_bracket_values");
  DerivativeTable tf(f);
  DerivativeTable tg(g);
  std::vector<std::complex<double>> out;
  out.reserve(max_n + 1);
  for (unsigned n = 0; n <= max_n; ++n) {
    out.push_back(bracket_weight(n).to_complex() * bidifferential_value(tf, tg, 2 * n + 1, at));
  }
  return out;
}

BracketReport moyal_bracket_truncated(const Expr& f, const Expr& g, unsigned max_n, const Bindings& at,
                                      double tolerance, unsigned cap) {
  auto h = at.find("hbar");
  if (h == at.end()) throw InvalidArgument("moyal_bracket_truncated: hbar must be bound");
  if (!(h->second > 0.0) || !std::isfinite(h->second)) throw InvalidArgument("moyal_bracket_truncated: hbar must be > 0");
  std::vector<std::complex<double>> grades = graded_bracket_values(f, g, max_n, at, cap);
  BracketReport report;
  std::complex<double> sum = 0.0;
  double scale = 1.0;
  double h2 = h->second * h->second;
  double last = 0.0;
  for (const auto& value : grades) {
    std::complex<double> term = scale * value;
    sum += term;
    report.partial_sums.push_back(sum);
    last = std::abs(term);
    scale *= h2;
  }
  report.last_term_magnitude = last;
  std::size_t n = report.partial_sums.size();
  bool settled = n < 2 || std::abs(report.partial_sums[n - 1] - report.partial_sums[n - 2]) < tolerance;
  report.converged = last < tolerance && settled;
  return report;
}

}  // namespace moyal
