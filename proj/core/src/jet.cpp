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

#include "moyal/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "moyal/error.hpp"

namespace moyal {

namespace {

double factorial_d(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

TaylorJet TaylorJet::variable(double value, int which, int order) {
  if (order < 0 || order > kMaxOrder) {
    throw InvalidArgument("jet order " + std::to_string(order) + " outside 0.." + std::to_string(kMaxOrder));
  }
  TaylorJet j(value);
  j.order_ = order;
  if (order >= 1) j.c_[which == 0 ? index(1, 0) : index(0, 1)] = 1.0;
  return j;
}

void TaylorJet::set_order(int order) {
  if (order < 0 || order > kMaxOrder) throw InvalidArgument("jet order outside supported range");
  if (order < order_) {
    for (std::size_t k = index(order + 1, 0); k < kSize; ++k) c_[k] = 0.0;
  }
  order_ = order;
}

double TaylorJet::partial(int a, int b) const { return c_[index(a, b)] * factorial_d(a) * factorial_d(b); }

TaylorJet& TaylorJet::operator+=(const TaylorJet& o) {
  for (std::size_t k = 0; k < kSize; ++k) c_[k] += o.c_[k];
  order_ = std::max(order_, o.order_);
  return *this;
}

TaylorJet& TaylorJet::operator-=(const TaylorJet& o) {
  for (std::size_t k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
  order_ = std::max(order_, o.order_);
  return *this;
}

TaylorJet& TaylorJet::operator*=(const TaylorJet& o) {
  int order = std::max(order_, o.order_);
  std::array<double, kSize> out{};
  for (int d1 = 0; d1 <= order_; ++d1) {
    for (int b1 = 0; b1 <= d1; ++b1) {
      double x = c_[index(d1 - b1, b1)];
      if (x == 0.0) continue;
      for (int d2 = 0; d1 + d2 <= order && d2 <= o.order_; ++d2) {
        for (int b2 = 0; b2 <= d2; ++b2) {
          out[index(d1 - b1 + d2 - b2, b1 + b2)] += x * o.c_[index(d2 - b2, b2)];
        }
      }
    }
  }
  c_ = out;
  order_ = order;
  return *this;
}

TaylorJet& TaylorJet::operator/=(const TaylorJet& o) { return *this *= reciprocal(o); }

TaylorJet TaylorJet::operator-() const {
  TaylorJet out = *this;
  for (double& x : out.c_) x = -x;
  return out;
}

TaylorJet TaylorJet::compose(const std::array<double, kMaxOrder + 1>& derivatives) const {
  TaylorJet h = *this;
  h.c_[0] = 0.0;
  TaylorJet out(derivatives[0]);
  out.order_ = order_;
  TaylorJet power(1.0);
  for (int k = 1; k <= order_; ++k) {
    power *= h;
    TaylorJet term = power;
    double scale = derivatives[static_cast<std::size_t>(k)] / factorial_d(k);
    for (double& x : term.c_) x *= scale;
    out += term;
  }
  return out;
}

TaylorJet exp(const TaylorJet& u) {
  double e = std::exp(u.value());
  return u.compose({e, e, e, e, e});
}

TaylorJet sin(const TaylorJet& u) {
  double s = std::sin(u.value());
  double c = std::cos(u.value());
  return u.compose({s, c, -s, -c, s});
}

TaylorJet cos(const TaylorJet& u) {
  double s = std::sin(u.value());
  double c = std::cos(u.value());
  return u.compose({c, -s, -c, s, c});
}

TaylorJet tan(const TaylorJet& u) { return sin(u) * reciprocal(cos(u)); }

TaylorJet sinh(const TaylorJet& u) {
  double s = std::sinh(u.value());
  double c = std::cosh(u.value());
  return u.compose({s, c, s, c, s});
}

TaylorJet cosh(const TaylorJet& u) {
  double s = std::sinh(u.value());
  double c = std::cosh(u.value());
  return u.compose({c, s, c, s, c});
}

TaylorJet reciprocal(const TaylorJet& u) {
  double x = u.value();
  if (x == 0.0) throw DomainError("reciprocal of a jet with zero value");
  double r = 1.0 / x;
  return u.compose({r, -r * r, 2 * r * r * r, -6 * r * r * r * r, 24 * r * r * r * r * r});
}

}  // namespace moyal
