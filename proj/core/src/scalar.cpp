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

#include "moyal/scalar.hpp"

#include <cctype>
#include <cmath>
#include <string>
#include <utility>

#include "moyal/error.hpp"

namespace moyal {

ExactScalar::ExactScalar(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

ExactScalar ExactScalar::rational(long num, long den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  mpq_class value(num, den);
  value.canonicalize();
  return ExactScalar(value);
}

double to_double(const mpq_class& value) {
  // get_d truncates toward zero, so the nearest double is it or its outward neighbour.
  const double truncated = value.get_d();
  if (sgn(value) == 0 || !std::isfinite(truncated)) return truncated;
  const double outward = std::nextafter(truncated, sgn(value) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(outward)) return truncated;
  const mpq_class below = abs(value - mpq_class(truncated));
  const mpq_class above = abs(mpq_class(outward) - value);
  if (below < above) return truncated;
  if (above < below) return outward;
  int exponent = 0;
  const double mantissa = std::frexp(truncated, &exponent);
  const bool truncated_even = std::fmod(std::ldexp(mantissa, 53), 2.0) == 0.0;
  return truncated_even ? truncated : outward;
}

ExactScalar ExactScalar::from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite value has no exact form");
  return ExactScalar(mpq_class(value));
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& other) {
  re_ += other.re_;
  im_ += other.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& other) {
  re_ -= other.re_;
  im_ -= other.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& other) {
  if (sgn(im_) == 0 && sgn(other.im_) == 0) {
    re_ *= other.re_;
    return *this;
  }
  mpq_class re = re_ * other.re_ - im_ * other.im_;
  mpq_class im = re_ * other.im_ + im_ * other.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& other) {
  if (other.is_zero()) throw InvalidArgument("division by zero");
  if (sgn(other.im_) == 0) {
    re_ /= other.re_;
    im_ /= other.re_;
    return *this;
  }
  mpq_class norm = other.re_ * other.re_ + other.im_ * other.im_;
  mpq_class re = (re_ * other.re_ + im_ * other.im_) / norm;
  mpq_class im = (im_ * other.re_ - re_ * other.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar ExactScalar::pow(unsigned exponent) const {
  ExactScalar result(1);
  ExactScalar base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent != 0) base *= base;
  }
  return result;
}

std::string format_rational(const mpq_class& value) {
  if (sgn(value) >= 0 && value.get_den() == 1) return value.get_num().get_str();
  return "(" + value.get_str() + ")";
}

std::string ExactScalar::str() const {
  if (sgn(im_) == 0) return format_rational(re_);
  std::string imag = (im_ == 1) ? "i" : format_rational(im_) + "*i";
  if (sgn(re_) == 0) return imag;
  return "(" + format_rational(re_) + " + " + imag + ")";
}

mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&]() -> mpq_class { throw InvalidArgument("not a rational number: '" + s + "'"); };
  if (s.empty()) return fail();
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpq_class num = parse_rational(s.substr(0, slash));
    mpq_class den = parse_rational(s.substr(slash + 1));
    if (sgn(den) == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    mpq_class out = num / den;
    out.canonicalize();
    return out;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; pos < s.size() && s[pos] != 'e' && s[pos] != 'E'; ++pos) {
    char c = s[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else {
      return fail();
    }
  }
  if (digits.empty()) return fail();
  long exponent = 0;
  if (pos < s.size()) {
    std::string exp_text = s.substr(pos + 1);
    if (exp_text.empty()) return fail();
    try {
      std::size_t used = 0;
      exponent = std::stol(exp_text, &used);
      if (used != exp_text.size()) return fail();
    } catch (const std::exception&) {
      return fail();
    }
  }
  exponent -= frac_digits;
  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class out = exponent < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
  out.canonicalize();
  return out;
}

mpq_class factorial(unsigned n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return mpq_class(out);
}

mpq_class binomial(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return mpq_class(out);
}

}  // namespace moyal
