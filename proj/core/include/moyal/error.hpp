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

#ifndef MOYAL_ERROR_HPP
#define MOYAL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace moyal {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Text input could not be parsed. `position()` is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation outside the domain of an expression (sec/tan poles, validity bounds).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured depth or grade cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A numeric flow produced a non-finite state.
class FlowBlowUp : public Error {
 public:
  FlowBlowUp(const std::string& what, double time)
      : Error(what + " at t = " + std::to_string(time)), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace moyal

#endif  // MOYAL_ERROR_HPP
