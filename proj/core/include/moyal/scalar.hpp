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

#ifndef MOYAL_SCALAR_HPP
#define MOYAL_SCALAR_HPP

#include <complex>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace moyal {

/// Nearest double to an exact rational (ties to even).
double to_double(const mpq_class& value);

/// Exact Gaussian rational re + i*im with arbitrary-precision parts.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  explicit ExactScalar(mpq_class re, mpq_class im = 0);

  static ExactScalar rational(long num, long den);
  static ExactScalar imaginary_unit() { return ExactScalar(0, 1); }
  /// Exact value of a binary double (no rounding).
  static ExactScalar from_double(double value);

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const noexcept { return sgn(im_) == 0; }
  bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }

  ExactScalar conj() const { return ExactScalar(re_, -im_); }
  std::complex<double> to_complex() const { return {to_double(re_), to_double(im_)}; }

  ExactScalar& operator+=(const ExactScalar& other);
  ExactScalar& operator-=(const ExactScalar& other);
  ExactScalar& operator*=(const ExactScalar& other);
  /// Throws InvalidArgument on division by zero.
  ExactScalar& operator/=(const ExactScalar& other);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  ExactScalar operator-() const { return ExactScalar(-re_, -im_); }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Lexicographic (re, im); only meaningful as a container ordering.
  friend bool operator<(const ExactScalar& a, const ExactScalar& b) {
    int c = cmp(a.re_, b.re_);
    return c != 0 ? c < 0 : a.im_ < b.im_;
  }

  ExactScalar pow(unsigned exponent) const;

  /// Coefficient text: `3`, `(-3)`, `(1/2)`, `i`, `(1/2)*i`, `(1 + (-2)*i)`.
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Rational text: `3`, `(-3)`, `(1/2)`, `(-1/2)`.
std::string format_rational(const mpq_class& value);

/// Parses `-12`, `3/4`, `0.125`, `1e-3`, `-2.5e2` exactly.
mpq_class parse_rational(std::string_view text);

mpq_class factorial(unsigned n);
mpq_class binomial(unsigned n, unsigned k);

}  // namespace moyal

#endif  // MOYAL_SCALAR_HPP
