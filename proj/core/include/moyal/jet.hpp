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

#ifndef MOYAL_JET_HPP
#define MOYAL_JET_HPP

#include <array>
#include <cstddef>

namespace moyal {

/// Truncated bivariate Taylor polynomial in (dq, dp).
///
/// Coefficient (a, b) multiplies dq^a dp^b, so the mixed partial
/// ∂^{a+b}/∂q^a∂p^b equals a! b! times it. Arithmetic truncates at the
/// larger order of its operands; constants carry order 0.
class TaylorJet {
 public:
  static constexpr int kMaxOrder = 4;
  static constexpr std::size_t kSize = (kMaxOrder + 1) * (kMaxOrder + 2) / 2;

  TaylorJet() = default;
  TaylorJet(double value) { c_[0] = value; }  // NOLINT(google-explicit-constructor)

  /// value + d(which), where which is 0 for dq and 1 for dp.
  static TaylorJet variable(double value, int which, int order);

  static constexpr std::size_t index(int a, int b) {
    return static_cast<std::size_t>((a + b) * (a + b + 1) / 2 + b);
  }

  int order() const noexcept { return order_; }
  /// Raises the truncation order; new coefficients are zero.
  void set_order(int order);

  double value() const noexcept { return c_[0]; }
  double coefficient(int a, int b) const { return c_[index(a, b)]; }
  void set_coefficient(int a, int b, double v) { c_[index(a, b)] = v; }
  /// ∂^{a+b}/∂q^a∂p^b at the base point.
  double partial(int a, int b) const;

  TaylorJet& operator+=(const TaylorJet& o);
  TaylorJet& operator-=(const TaylorJet& o);
  TaylorJet& operator*=(const TaylorJet& o);
  TaylorJet& operator/=(const TaylorJet& o);

  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
  friend TaylorJet operator*(TaylorJet a, const TaylorJet& b) { return a *= b; }
  friend TaylorJet operator/(TaylorJet a, const TaylorJet& b) { return a /= b; }
  TaylorJet operator-() const;

  /// f(u) for u = u0 + h, given f^{(k)}(u0) for k = 0..order.
  TaylorJet compose(const std::array<double, kMaxOrder + 1>& derivatives) const;

 private:
  std::array<double, kSize> c_{};
  int order_ = 0;
};

TaylorJet exp(const TaylorJet& u);
TaylorJet sin(const TaylorJet& u);
TaylorJet cos(const TaylorJet& u);
TaylorJet tan(const TaylorJet& u);
TaylorJet sinh(const TaylorJet& u);
TaylorJet cosh(const TaylorJet& u);
TaylorJet reciprocal(const TaylorJet& u);

}  // namespace moyal

#endif  // MOYAL_JET_HPP
