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

#include "moyal/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "moyal/error.hpp"
#include "parser.hpp"

namespace moyal {

namespace {

mpz_class falling_factorial(unsigned n, unsigned k) {
  mpz_class out = 1;
  for (unsigned i = 0; i < k; ++i) out *= n - i;
  return out;
}

std::string monomial_text(const Exponent& e) {
  std::string out;
  auto factor = [&out](const char* name, unsigned power) {
    if (power == 0) return;
    if (!out.empty()) out += "*";
    out += name;
    if (power > 1) out += "^" + std::to_string(power);
  };
  factor("hbar", e.hbar);
  factor("q", e.q);
  factor("p", e.p);
  return out;
}

struct PolynomialSemantics {
  PhasePolynomial number(const mpz_class& n) { return PhasePolynomial(ExactScalar(mpq_class(n))); }
  PhasePolynomial identifier(const std::string& name, std::size_t pos) {
    if (name == "q") return PhasePolynomial::q();
    if (name == "p") return PhasePolynomial::p();
    if (name == "hbar") return PhasePolynomial::hbar();
    if (name == "i") return PhasePolynomial(ExactScalar::imaginary_unit());
    throw ParseError("unknown identifier '" + name + "'", pos);
  }
  PhasePolynomial call(const std::string& name, const PhasePolynomial&, std::size_t pos) {
    throw ParseError("function '" + name + "' is not allowed in a polynomial", pos);
  }
  PhasePolynomial add(PhasePolynomial a, const PhasePolynomial& b) { return a + b; }
  PhasePolynomial sub(PhasePolynomial a, const PhasePolynomial& b) { return a - b; }
  PhasePolynomial mul(const PhasePolynomial& a, const PhasePolynomial& b) { return a * b; }
  PhasePolynomial neg(const PhasePolynomial& a) { return -a; }
  PhasePolynomial div(const PhasePolynomial& a, const PhasePolynomial& b, std::size_t pos) {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    if (b.terms().size() != 1 || b.terms().begin()->first != Exponent{}) {
      throw ParseError("division is only defined by a nonzero constant", pos);
    }
    return a * (ExactScalar(1) / b.terms().begin()->second);
  }
  PhasePolynomial power(const PhasePolynomial& base, long exponent, std::size_t pos) {
    if (exponent < 0) throw ParseError("negative powers are not polynomial", pos);
    return moyal::pow(base, static_cast<unsigned>(exponent));
  }
};

}  // namespace

PhasePolynomial::PhasePolynomial(const ExactScalar& constant) {
  if (!constant.is_zero()) terms_.emplace(Exponent{}, constant);
}

PhasePolynomial PhasePolynomial::monomial(Exponent e, const ExactScalar& c) {
  PhasePolynomial out;
  out.add_term(e, c);
  return out;
}

PhasePolynomial PhasePolynomial::parse(std::string_view text) {
  PolynomialSemantics sem;
  return detail::Parser<PhasePolynomial, PolynomialSemantics>(text, sem).parse();
}

ExactScalar PhasePolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ExactScalar() : it->second;
}

unsigned PhasePolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.q + e.p);
  return d;
}

unsigned PhasePolynomial::degree_hbar() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.hbar);
  return d;
}

bool PhasePolynomial::has_real_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

void PhasePolynomial::add_term(const Exponent& e, const ExactScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PhasePolynomial& PhasePolynomial::operator+=(const PhasePolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator-=(const PhasePolynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

PhasePolynomial& PhasePolynomial::operator*=(const ExactScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

PhasePolynomial operator*(const PhasePolynomial& a, const PhasePolynomial& b) {
  PhasePolynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.add_term({ea.q + eb.q, ea.p + eb.p, ea.hbar + eb.hbar}, ca * cb);
    }
  }
  return out;
}

PhasePolynomial PhasePolynomial::operator-() const {
  PhasePolynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

std::string PhasePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string mono = monomial_text(it->first);
    if (mono.empty()) {
      out += it->second.str();
    } else if (it->second.is_one()) {
      out += mono;
    } else {
      out += it->second.str() + "*" + mono;
    }
  }
  return out;
}

PhasePolynomial shift_hbar(const PhasePolynomial& f, unsigned k) {
  if (k == 0) return f;
  PhasePolynomial out;
  for (const auto& [e, c] : f.terms()) out.add_term({e.q, e.p, e.hbar + k}, c);
  return out;
}

PhasePolynomial pow(const PhasePolynomial& f, unsigned exponent) {
  PhasePolynomial result(1);
  PhasePolynomial base = f;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

PhasePolynomial conjugate(const PhasePolynomial& f) {
  PhasePolynomial out;
  for (const auto& [e, c] : f.terms()) out.add_term(e, c.conj());
  return out;
}

PhasePolynomial derivative(const PhasePolynomial& f, PhaseVar var, unsigned order) {
  PhasePolynomial out;
  for (const auto& [e, c] : f.terms()) {
    unsigned power = var == PhaseVar::q ? e.q : e.p;
    if (power < order) continue;
    Exponent d = e;
    (var == PhaseVar::q ? d.q : d.p) -= order;
    out.add_term(d, c * ExactScalar(mpq_class(falling_factorial(power, order))));
  }
  return out;
}

PhasePolynomial bidifferential_power(const PhasePolynomial& f, const PhasePolynomial& g, unsigned k) {
  PhasePolynomial out;
  if (std::min(f.degree(), g.degree()) < k) return out;
  std::vector<mpz_class> signed_binomials(k + 1);
  for (unsigned j = 0; j <= k; ++j) {
    mpz_bin_uiui(signed_binomials[j].get_mpz_t(), k, j);
    if (j % 2 == 1) signed_binomials[j] = -signed_binomials[j];
  }
  // j counts the factors of (-∂_p ∂_q'): f gets ∂_q^(k-j) ∂_p^j, g gets ∂_p^(k-j) ∂_q^j.
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      ExactScalar cfg = cf * cg;
      for (unsigned j = 0; j <= k; ++j) {
        unsigned rest = k - j;
        if (ef.q < rest || ef.p < j || eg.p < rest || eg.q < j) continue;
        mpz_class weight = signed_binomials[j] * falling_factorial(ef.q, rest) * falling_factorial(ef.p, j) *
                           falling_factorial(eg.p, rest) * falling_factorial(eg.q, j);
        Exponent e{ef.q - rest + eg.q - j, ef.p - j + eg.p - rest, ef.hbar + eg.hbar};
        out.add_term(e, cfg * ExactScalar(mpq_class(weight)));
      }
    }
  }
  return out;
}

PhasePolynomial star_n(const PhasePolynomial& f, const PhasePolynomial& g, unsigned n) {
  if (n == 0) return f * g;
  ExactScalar prefactor = ExactScalar(mpq_class(0), mpq_class(1, 2)).pow(n) / ExactScalar(factorial(n));
  return bidifferential_power(f, g, n) * prefactor;
}

PhasePolynomial star_product(const PhasePolynomial& f, const PhasePolynomial& g) {
  unsigned top = std::min(f.degree(), g.degree());
  PhasePolynomial out;
  for (unsigned n = 0; n <= top; ++n) out += shift_hbar(star_n(f, g, n), n);
  return out;
}

PhasePolynomial poisson_bracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  return bidifferential_power(f, g, 1);
}

PhasePolynomial bracket_2n(const PhasePolynomial& f, const PhasePolynomial& g, unsigned n) {
  unsigned k = 2 * n + 1;
  mpq_class prefactor(1);
  prefactor /= factorial(k);
  prefactor /= mpq_class(mpz_class(1) << (2 * n));
  if (n % 2 == 1) prefactor = -prefactor;
  return bidifferential_power(f, g, k) * ExactScalar(prefactor);
}

PhasePolynomial moyal_bracket(const PhasePolynomial& f, const PhasePolynomial& g) {
  unsigned top = std::min(f.degree(), g.degree());
  PhasePolynomial out;
  for (unsigned n = 0; 2 * n + 1 <= top; ++n) out += shift_hbar(bracket_2n(f, g, n), 2 * n);
  return out;
}

PhasePolynomial hbar_component(const PhasePolynomial& f, unsigned r) {
  PhasePolynomial out;
  for (const auto& [e, c] : f.terms()) {
    if (e.hbar == r) out.add_term({e.q, e.p, 0}, c);
  }
  return out;
}

PhasePolynomial coherent_smooth(const PhasePolynomial& f, const ExactScalar& m, const ExactScalar& omega) {
  if (!m.is_real() || !omega.is_real() || m.is_zero() || omega.is_zero()) {
    throw InvalidArgument("coherent_smooth: m and omega must be real and nonzero");
  }
  ExactScalar mw = m * omega;
  ExactScalar a = ExactScalar(1) / (ExactScalar(4) * mw);
  ExactScalar b = mw / ExactScalar(4);
  auto apply = [&](const PhasePolynomial& g) {
    return shift_hbar(derivative(g, PhaseVar::q, 2) * a + derivative(g, PhaseVar::p, 2) * b, 1);
  };
  PhasePolynomial out = f;
  PhasePolynomial term = f;
  for (unsigned k = 1; !term.is_zero(); ++k) {
    term = apply(term) * (ExactScalar(1) / ExactScalar(static_cast<long>(k)));
    out += term;
  }
  return out;
}

void EvalPoint::validate() const {
  if (!std::isfinite(q) || !std::isfinite(p) || !std::isfinite(hbar)) {
    throw InvalidArgument("evaluation point must be finite");
  }
  if (!(hbar > 0.0)) throw InvalidArgument("hbar must be positive");
  for (const auto& [name, value] : params) {
    if (!std::isfinite(value)) throw InvalidArgument("parameter '" + name + "' must be finite");
  }
}

std::complex<double> eval_poly(const PhasePolynomial& f, const EvalPoint& at) {
  at.validate();
  std::complex<double> sum = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double mono = std::pow(at.q, e.q) * std::pow(at.p, e.p) * std::pow(at.hbar, e.hbar);
    sum += c.to_complex() * mono;
  }
  return sum;
}

}  // namespace moyal
