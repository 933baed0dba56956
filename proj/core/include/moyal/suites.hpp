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

#ifndef MOYAL_SUITES_HPP
#define MOYAL_SUITES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace moyal {

/// Outcome of one verification suite. Failures are results, not errors.
struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  /// "exact" or the numeric tolerance used.
  std::string tolerance = "exact";
  /// First few failing cases, described.
  std::vector<std::string> failures;
  /// Informational findings (reports, comparisons).
  std::vector<std::string> notes;

  bool ok() const { return cases > 0 && passed == cases; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Random cases for the associativity, Jacobi and deformation suites.
  unsigned cases = 100;
  /// Truncation order of the BCH suite.
  unsigned bch_order = 6;
  /// Maximum n + m for the symmetrization and SAS suites.
  unsigned max_word_degree = 8;
  /// Random polynomials added to the SAS suite.
  unsigned sas_random = 50;
  /// Taylor depth of the quadratic coincidence suite.
  unsigned depth = 10;
  /// Scale applied to every numeric tolerance (1 keeps the defaults).
  double tolerance_scale = 1.0;
};

/// Exact algebraic property suites, in run order.
const std::vector<std::string>& property_suite_names();
/// Every suite: the property suites followed by the example, flow and oracle suites.
const std::vector<std::string>& suite_names();

/// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& options = {});

/// Deterministic JSON array of results.
std::string suites_to_json(const std::vector<SuiteResult>& results);
/// One line per suite.
std::string suites_to_text(const std::vector<SuiteResult>& results);

}  // namespace moyal

#endif  // MOYAL_SUITES_HPP
