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

#include "moyal/expr.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <type_traits>
#include <unordered_map>
#include <utility>

#include "moyal/error.hpp"
#include "moyal/jet.hpp"
#include "parser.hpp"

namespace moyal {

namespace detail {

enum class AtomKind { variable, function, reciprocal };

struct AtomData {
  AtomKind kind = AtomKind::variable;
  std::string name;
  Function fn = Function::exp;
  Expr arg;
  std::string key;
  int rank = 0;
  std::vector<std::string> free;  // sorted, unique
};

}  // namespace detail

namespace {

using detail::AtomData;
using detail::AtomKind;

constexpr std::array<const char*, 12> kParameterOrder = {"hbar", "q", "p",    "t",     "m",     "l",
                                                         "lambda", "omega", "beta", "gamma", "pi", ""};
constexpr int kFunctionRank = 100;
constexpr int kReciprocalRank = 200;

int variable_rank(std::string_view name) {
  for (std::size_t k = 0; k + 1 < kParameterOrder.size(); ++k) {
    if (name == kParameterOrder[k]) return static_cast<int>(k);
  }
  return static_cast<int>(kParameterOrder.size());
}

bool atom_equal(const Atom& a, const Atom& b) { return a == b || (a->rank == b->rank && a->key == b->key); }

bool atom_less(const Atom& a, const Atom& b) {
  if (a == b) return false;
  if (a->rank != b->rank) return a->rank < b->rank;
  return a->key < b->key;
}

bool valid_identifier(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) != 0 || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) != 0 || ch == '_'; });
}

Atom make_variable(std::string_view name) {
  auto a = std::make_shared<AtomData>();
  a->kind = AtomKind::variable;
  a->name = std::string(name);
  a->key = a->name;
  a->rank = variable_rank(name);
  a->free = {a->name};
  return a;
}

Atom make_function(Function fn, const Expr& arg) {
  auto a = std::make_shared<AtomData>();
  a->kind = AtomKind::function;
  a->fn = fn;
  a->arg = arg;
  a->key = std::string(function_name(fn)) + "(" + arg.str() + ")";
  a->rank = kFunctionRank + static_cast<int>(fn);
  a->free = free_variables(arg);
  return a;
}

Atom make_reciprocal(const Expr& base) {
  auto a = std::make_shared<AtomData>();
  a->kind = AtomKind::reciprocal;
  a->arg = base;
  a->key = "(" + base.str() + ")";
  a->rank = kReciprocalRank;
  a->free = free_variables(base);
  return a;
}

Expr atom_expr(const Atom& a, int exponent = 1) {
  Expr e;
  e.add_term(Monomial{Factor{a, exponent}}, ExactScalar(1));
  return e;
}

bool atom_depends_on(const Atom& a, std::string_view name) {
  return std::binary_search(a->free.begin(), a->free.end(), name, std::less<>());
}

std::string factor_text(const Factor& f) {
  if (f.atom->kind == AtomKind::reciprocal) return f.atom->key + "^-" + std::to_string(f.exponent);
  if (f.exponent == 1) return f.atom->key;
  return f.atom->key + "^" + std::to_string(f.exponent);
}

}  // namespace

std::vector<std::string> free_variables(const Expr& e) {
  std::vector<std::string> out;
  for (const auto& [m, c] : e.terms()) {
    for (const auto& f : m) out.insert(out.end(), f.atom->free.begin(), f.atom->free.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* function_name(Function f) {
  switch (f) {
    case Function::exp: return "exp";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::tan: return "tan";
    case Function::sec: return "sec";
    case Function::sinh: return "sinh";
    case Function::cosh: return "cosh";
  }
  return "?";
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (!atom_equal(a[k].atom, b[k].atom)) return atom_less(a[k].atom, b[k].atom);
    if (a[k].exponent != b[k].exponent) return a[k].exponent < b[k].exponent;
  }
  return a.size() < b.size();
}

Expr::Expr(const ExactScalar& constant) {
  if (!constant.is_zero()) terms_.emplace(Monomial{}, constant);
}

Expr Expr::variable(std::string_view name) {
  if (!valid_identifier(name) || name == "i") throw InvalidArgument("invalid variable name '" + std::string(name) + "'");
  return atom_expr(make_variable(name));
}

Expr Expr::from_polynomial(const PhasePolynomial& f) {
  static const Expr hbar = variable("hbar");
  static const Expr q = variable("q");
  static const Expr p = variable("p");
  Expr out;
  for (const auto& [e, c] : f.terms()) {
    out += Expr(c) * pow(hbar, e.hbar) * pow(q, e.q) * pow(p, e.p);
  }
  return out;
}

void Expr::add_term(Monomial m, const ExactScalar& c) {
  if (c.is_zero()) return;
  std::sort(m.begin(), m.end(), [](const Factor& x, const Factor& y) { return atom_less(x.atom, y.atom); });
  Monomial merged;
  merged.reserve(m.size());
  for (auto& f : m) {
    if (!merged.empty() && atom_equal(merged.back().atom, f.atom)) {
      merged.back().exponent += f.exponent;
    } else {
      merged.push_back(std::move(f));
    }
  }
  // exp(a)^j exp(b)^k -> exp(j a + k b); negative reciprocal powers expand.
  Expr exp_argument;
  bool has_exp = false;
  Expr expansion(1);
  bool needs_expansion = false;
  Monomial kept;
  kept.reserve(merged.size());
  for (auto& f : merged) {
    if (f.exponent == 0) continue;
    const AtomData& a = *f.atom;
    if (a.kind == AtomKind::function && a.fn == Function::exp) {
      if (f.exponent == 1 && !has_exp) {
        kept.push_back(std::move(f));
        has_exp = true;
        continue;
      }
      exp_argument += a.arg * Expr(static_cast<long>(f.exponent));
      needs_expansion = true;
      continue;
    }
    if (a.kind == AtomKind::reciprocal && f.exponent < 0) {
      expansion *= pow(a.arg, -f.exponent);
      needs_expansion = true;
      continue;
    }
    kept.push_back(std::move(f));
  }
  if (needs_expansion) {
    if (has_exp) {
      auto it = std::find_if(kept.begin(), kept.end(), [](const Factor& f) {
        return f.atom->kind == AtomKind::function && f.atom->fn == Function::exp;
      });
      exp_argument += it->atom->arg;
      kept.erase(it);
    }
    Expr rest;
    rest.terms_.emplace(std::move(kept), c);
    *this += rest * exp(exp_argument) * expansion;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(std::move(kept), c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool Expr::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

ExactScalar Expr::constant_value() const {
  if (!is_constant()) throw InvalidArgument("expression '" + str() + "' is not constant");
  return terms_.empty() ? ExactScalar() : terms_.begin()->second;
}

bool Expr::depends_on(std::string_view name) const {
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m) {
      if (atom_depends_on(f.atom, name)) return true;
    }
  }
  return false;
}

Expr& Expr::operator+=(const Expr& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Expr& o) {
  *this = *this * o;
  return *this;
}

Expr operator*(const Expr& a, const Expr& b) {
  Expr out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m;
      m.reserve(ma.size() + mb.size());
      m.insert(m.end(), ma.begin(), ma.end());
      m.insert(m.end(), mb.begin(), mb.end());
      out.add_term(std::move(m), ca * cb);
    }
  }
  return out;
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw InvalidArgument("division by zero");
  return a * pow(b, -1);
}

Expr Expr::operator-() const {
  Expr out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  MonomialLess less;
  auto it = a.terms_.begin();
  for (const auto& [mb, cb] : b.terms_) {
    if (less(it->first, mb) || less(mb, it->first) || it->second != cb) return false;
    ++it;
  }
  return true;
}

std::string Expr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    if (!out.empty()) out += " + ";
    if (m.empty()) {
      out += c.str();
      continue;
    }
    std::string body;
    for (const auto& f : m) {
      if (!body.empty()) body += "*";
      body += factor_text(f);
    }
    out += c.is_one() ? body : c.str() + "*" + body;
  }
  return out;
}

Expr pow(const Expr& base, long exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent > 0) {
    Expr result(1);
    Expr square = base;
    for (unsigned long n = static_cast<unsigned long>(exponent);;) {
      if ((n & 1U) != 0) result *= square;
      n >>= 1U;
      if (n == 0) break;
      square *= square;
    }
    return result;
  }
  if (base.is_zero()) throw InvalidArgument("negative power of zero");
  unsigned long k = static_cast<unsigned long>(-exponent);
  if (base.terms().size() == 1) {
    const auto& [m, c] = *base.terms().begin();
    Monomial inverted = m;
    for (auto& f : inverted) f.exponent *= static_cast<int>(exponent);
    Expr out;
    out.add_term(std::move(inverted), (ExactScalar(1) / c).pow(static_cast<unsigned>(k)));
    return out;
  }
  return atom_expr(make_reciprocal(base), static_cast<int>(k));
}

Expr apply(Function f, const Expr& arg) {
  if (arg.is_zero()) {
    switch (f) {
      case Function::sin:
      case Function::tan:
      case Function::sinh: return Expr();
      case Function::exp:
      case Function::cos:
      case Function::sec:
      case Function::cosh: return Expr(1);
    }
  }
  return atom_expr(make_function(f, arg));
}

Expr exp(const Expr& u) { return apply(Function::exp, u); }
Expr sin(const Expr& u) { return apply(Function::sin, u); }
Expr cos(const Expr& u) { return apply(Function::cos, u); }
Expr tan(const Expr& u) { return apply(Function::tan, u); }
Expr sec(const Expr& u) { return apply(Function::sec, u); }
Expr sinh(const Expr& u) { return apply(Function::sinh, u); }
Expr cosh(const Expr& u) { return apply(Function::cosh, u); }

namespace {

class Differentiator {
 public:
  explicit Differentiator(std::string_view var) : var_(var) {}

  Expr run(const Expr& e) {
    Expr out;
    for (const auto& [m, c] : e.terms()) {
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (!atom_depends_on(m[k].atom, var_)) continue;
        Monomial rest = m;
        int e_k = rest[k].exponent;
        rest[k].exponent -= 1;
        if (rest[k].atom->kind == AtomKind::reciprocal) {
          // R^e with R = 1/b: d(R^e) = e R^(e-1) dR and dR = -R^2 db.
          rest[k].exponent += 2;
          Expr piece;
          piece.add_term(std::move(rest), c * ExactScalar(-e_k));
          out += piece * run(rest_base(m[k].atom));
          continue;
        }
        Expr piece;
        piece.add_term(std::move(rest), c * ExactScalar(e_k));
        out += piece * atom_derivative(m[k].atom);
      }
    }
    return out;
  }

 private:
  static const Expr& rest_base(const Atom& a) { return a->arg; }

  const Expr& atom_derivative(const Atom& a) {
    auto it = cache_.find(a.get());
    if (it != cache_.end()) return it->second;
    Expr d;
    if (a->kind == AtomKind::variable) {
      d = Expr(a->name == var_ ? 1 : 0);
    } else {
      Expr du = run(a->arg);
      const Expr& u = a->arg;
      switch (a->fn) {
        case Function::exp: d = atom_expr(a) * du; break;
        case Function::sin: d = cos(u) * du; break;
        case Function::cos: d = -(sin(u) * du); break;
        case Function::tan: d = pow(sec(u), 2) * du; break;
        case Function::sec: d = atom_expr(a) * tan(u) * du; break;
        case Function::sinh: d = cosh(u) * du; break;
        case Function::cosh: d = sinh(u) * du; break;
      }
    }
    return cache_.emplace(a.get(), std::move(d)).first->second;
  }

  std::string_view var_;
  std::unordered_map<const AtomData*, Expr> cache_;
};

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) {
  if (!e.depends_on(var)) return Expr();
  return Differentiator(var).run(e);
}

Expr substitute(const Expr& e, const Substitution& s) {
  Expr out;
  for (const auto& [m, c] : e.terms()) {
    Expr piece(c);
    Monomial untouched;
    for (const auto& f : m) {
      bool touched = std::any_of(s.begin(), s.end(), [&](const auto& kv) { return atom_depends_on(f.atom, kv.first); });
      if (!touched) {
        untouched.push_back(f);
        continue;
      }
      const AtomData& a = *f.atom;
      switch (a.kind) {
        case AtomKind::variable: piece *= pow(s.find(a.name)->second, f.exponent); break;
        case AtomKind::function: piece *= pow(apply(a.fn, substitute(a.arg, s)), f.exponent); break;
        case AtomKind::reciprocal: piece *= pow(substitute(a.arg, s), -f.exponent); break;
      }
    }
    Expr kept;
    kept.add_term(std::move(untouched), ExactScalar(1));
    out += piece * kept;
  }
  return out;
}

PhasePolynomial to_polynomial(const Expr& e) {
  PhasePolynomial out;
  for (const auto& [m, c] : e.terms()) {
    Exponent ex;
    for (const auto& f : m) {
      const AtomData& a = *f.atom;
      if (a.kind != AtomKind::variable || f.exponent < 0) {
        throw InvalidArgument("'" + e.str() + "' is not a polynomial in q, p, hbar");
      }
      auto n = static_cast<unsigned>(f.exponent);
      if (a.name == "q") {
        ex.q = n;
      } else if (a.name == "p") {
        ex.p = n;
      } else if (a.name == "hbar") {
        ex.hbar = n;
      } else {
        throw InvalidArgument("'" + e.str() + "' depends on '" + a.name + "'; bind it to a number first");
      }
    }
    out.add_term(ex, c);
  }
  return out;
}

namespace {

struct ExprSemantics {
  static constexpr std::array<const char*, 11> kNames = {"q",     "p",    "t",     "m",    "l",   "lambda",
                                                         "omega", "beta", "gamma", "hbar", "pi"};

  Expr number(const mpz_class& n) { return Expr(ExactScalar(mpq_class(n))); }
  Expr identifier(const std::string& name, std::size_t pos) {
    if (name == "i") return Expr(ExactScalar::imaginary_unit());
    for (const char* known : kNames) {
      if (name == known) return Expr::variable(name);
    }
    throw ParseError("unknown identifier '" + name + "'", pos);
  }
  Expr call(const std::string& name, const Expr& arg, std::size_t pos) {
    for (Function f : {Function::exp, Function::sin, Function::cos, Function::tan, Function::sec, Function::sinh,
                       Function::cosh}) {
      if (name == function_name(f)) return apply(f, arg);
    }
    throw ParseError("unknown function '" + name + "'", pos);
  }
  Expr add(Expr a, const Expr& b) { return a + b; }
  Expr sub(Expr a, const Expr& b) { return a - b; }
  Expr mul(const Expr& a, const Expr& b) { return a * b; }
  Expr neg(const Expr& a) { return -a; }
  Expr div(const Expr& a, const Expr& b, std::size_t pos) {
    if (b.is_zero()) throw ParseError("division by zero", pos);
    return a / b;
  }
  Expr power(const Expr& base, long exponent, std::size_t pos) {
    if (exponent < 0 && base.is_zero()) throw ParseError("negative power of zero", pos);
    return moyal::pow(base, exponent);
  }
};

}  // namespace

Expr Expr::parse(std::string_view text) {
  ExprSemantics sem;
  return detail::Parser<Expr, ExprSemantics>(text, sem).parse();
}

namespace {

constexpr double kPoleTolerance = 1e-12;

double magnitude(double x) { return std::abs(x); }
double magnitude(const std::complex<double>& x) { return std::abs(x); }
double magnitude(const TaylorJet& x) { return std::abs(x.value()); }

template <class Num>
Num scalar_to(const ExactScalar& c) {
  if constexpr (std::is_same_v<Num, std::complex<double>>) {
    return c.to_complex();
  } else {
    if (!c.is_real()) throw DomainError("complex coefficient " + c.str() + " in a real evaluation");
    return Num(c.to_complex().real());
  }
}

template <class Num>
Num reciprocal_of(const Num& x) {
  if (magnitude(x) == 0.0) throw DomainError("division by zero during evaluation");
  return Num(1.0) / x;
}

template <class Num>
Num integer_power(const Num& x, int n) {
  if (n < 0) return reciprocal_of(integer_power(x, -n));
  Num result(1.0);
  for (int k = 0; k < n; ++k) result = result * x;
  return result;
}

template <class Num>
class Evaluator {
 public:
  explicit Evaluator(const NumericBindings<Num>& vars) : vars_(vars) {}

  Num run(const Expr& e) {
    Num sum(0.0);
    for (const auto& [m, c] : e.terms()) {
      Num term = scalar_to<Num>(c);
      for (const auto& f : m) term = term * integer_power(atom(f.atom), f.exponent);
      sum = sum + term;
    }
    return sum;
  }

 private:
  Num atom(const Atom& a) {
    auto it = cache_.find(a.get());
    if (it != cache_.end()) return it->second;
    Num v = compute(*a);
    cache_.emplace(a.get(), v);
    return v;
  }

  Num compute(const AtomData& a) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::sin;
    using std::sinh;
    switch (a.kind) {
      case AtomKind::variable: {
        auto it = vars_.find(a.name);
        if (it != vars_.end()) return it->second;
        if (a.name == "pi") return Num(std::numbers::pi);
        throw InvalidArgument("unbound variable '" + a.name + "'");
      }
      case AtomKind::reciprocal: return reciprocal_of(run(a.arg));
      case AtomKind::function: break;
    }
    Num u = run(a.arg);
    switch (a.fn) {
      case Function::exp: return exp(u);
      case Function::sin: return sin(u);
      case Function::cos: return cos(u);
      case Function::sinh: return sinh(u);
      case Function::cosh: return cosh(u);
      case Function::tan:
      case Function::sec: {
        Num c = cos(u);
        if (magnitude(c) < kPoleTolerance) throw DomainError(std::string(function_name(a.fn)) + " evaluated at a pole");
        Num r = Num(1.0) / c;
        return a.fn == Function::sec ? r : sin(u) * r;
      }
    }
    return Num(0.0);
  }

  const NumericBindings<Num>& vars_;
  std::unordered_map<const AtomData*, Num> cache_;
};

}  // namespace

template <class Num>
Num evaluate(const Expr& e, const NumericBindings<Num>& vars) {
  return Evaluator<Num>(vars).run(e);
}

template double evaluate<double>(const Expr&, const NumericBindings<double>&);
template std::complex<double> evaluate<std::complex<double>>(const Expr&,
                                                              const NumericBindings<std::complex<double>>&);
template TaylorJet evaluate<TaylorJet>(const Expr&, const NumericBindings<TaylorJet>&);

std::complex<double> eval_expr(const Expr& e, const Bindings& vars) {
  NumericBindings<std::complex<double>> complex_vars;
  for (const auto& [name, value] : vars) {
    if (!std::isfinite(value)) throw InvalidArgument("non-finite binding for '" + name + "'");
    complex_vars.emplace(name, value);
  }
  return evaluate(e, complex_vars);
}

}  // namespace moyal
