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

// Recursive-descent parser shared by the polynomial and expression grammars.
// The grammar is fixed here; what identifiers, calls, division and powers mean
// is decided by a semantics policy.

#ifndef MOYAL_SRC_PARSER_HPP
#define MOYAL_SRC_PARSER_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

#include "moyal/error.hpp"

namespace moyal::detail {

template <class Value, class Semantics>
class Parser {
 public:
  Parser(std::string_view text, Semantics& sem) : text_(text), sem_(sem) {}

  Value parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty input", pos_);
    Value v = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return v;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Value parse_sum() {
    Value v = parse_product();
    for (;;) {
      if (accept('+')) {
        v = sem_.add(std::move(v), parse_product());
      } else if (accept('-')) {
        v = sem_.sub(std::move(v), parse_product());
      } else {
        return v;
      }
    }
  }

  Value parse_product() {
    Value v = parse_unary();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (accept('*')) {
        v = sem_.mul(std::move(v), parse_unary());
      } else if (accept('/')) {
        v = sem_.div(std::move(v), parse_unary(), at);
      } else {
        return v;
      }
    }
  }

  Value parse_unary() {
    if (accept('-')) return sem_.neg(parse_unary());
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Value parse_power() {
    Value base = parse_primary();
    skip_ws();
    std::size_t at = pos_;
    if (!accept('^')) return base;
    long exponent = 0;
    if (accept('(')) {
      exponent = parse_signed_integer();
      expect(')');
    } else {
      exponent = parse_signed_integer();
    }
    return sem_.power(std::move(base), exponent, at);
  }

  long parse_signed_integer() {
    bool negative = accept('-');
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    if (start == pos_) throw ParseError("expected integer exponent", start);
    std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 6) throw ParseError("exponent too large", start);
    long value = std::stol(digits);
    return negative ? -value : value;
  }

  Value parse_primary() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    std::size_t start = pos_;
    if (c == '(') {
      ++pos_;
      Value v = parse_sum();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
      return sem_.number(mpz_class(std::string(text_.substr(start, pos_ - start)), 10));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '(') {
        ++pos_;
        Value arg = parse_sum();
        expect(')');
        return sem_.call(name, std::move(arg), start);
      }
      return sem_.identifier(name, start);
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", pos_);
  }

  std::string_view text_;
  Semantics& sem_;
  std::size_t pos_ = 0;
};

}  // namespace moyal::detail

#endif  // MOYAL_SRC_PARSER_HPP
