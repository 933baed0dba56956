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

#include <benchmark/benchmark.h>

#include "moyal/classical_flow.hpp"
#include "moyal/example1.hpp"
#include "moyal/expr_brackets.hpp"
#include "moyal/polynomial.hpp"
#include "moyal/semiclassical.hpp"

namespace {

using moyal::PhasePolynomial;

/// (1 + q + p)^n, dense in total degree n.
PhasePolynomial dense(unsigned n) { return moyal::pow(PhasePolynomial(1) + PhasePolynomial::q() + PhasePolynomial::p(), n); }

void BM_StarProduct(benchmark::State& state) {
  PhasePolynomial f = dense(static_cast<unsigned>(state.range(0)));
  PhasePolynomial g = dense(static_cast<unsigned>(state.range(0)) + 1);
  for (auto _ : state) benchmark::DoNotOptimize(moyal::star_product(f, g));
}
BENCHMARK(BM_StarProduct)->DenseRange(2, 10, 4);

void BM_MoyalBracket(benchmark::State& state) {
  PhasePolynomial f = dense(static_cast<unsigned>(state.range(0)));
  PhasePolynomial g = PhasePolynomial::parse("(1/2)*p^2 + (1/2)*q^2 + (1/24)*q^4");
  for (auto _ : state) benchmark::DoNotOptimize(moyal::moyal_bracket(f, g));
}
BENCHMARK(BM_MoyalBracket)->DenseRange(2, 10, 4);

void BM_IteratedBracketsQuartic(benchmark::State& state) {
  PhasePolynomial h = PhasePolynomial::parse("(1/2)*p^2 + (1/2)*q^2 + (1/24)*q^4");
  for (auto _ : state) benchmark::DoNotOptimize(moyal::iterated_brackets(h, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_IteratedBracketsQuartic)->DenseRange(5, 9, 2);

void BM_PoissonExprExample1(benchmark::State& state) {
  const moyal::Example1& ex = moyal::builtin_example1();
  for (auto _ : state) benchmark::DoNotOptimize(moyal::poisson_expr(ex.q_moyal.expr, ex.p_moyal.expr));
}
BENCHMARK(BM_PoissonExprExample1);

void BM_FlowJet(benchmark::State& state) {
  moyal::HamiltonianSpec h = moyal::HamiltonianSpec::parse("p^2/2 + q^2/2 + q^4/24");
  for (auto _ : state) benchmark::DoNotOptimize(moyal::flow_jet(h, {1.0, 0.0}, 1.0, static_cast<int>(state.range(0)), 2000));
}
BENCHMARK(BM_FlowJet)->DenseRange(1, 3, 1)->Unit(benchmark::kMillisecond);

void BM_Hbar2Transport(benchmark::State& state) {
  moyal::HamiltonianSpec h = moyal::HamiltonianSpec::parse("q^2*p^2/4");
  for (auto _ : state) benchmark::DoNotOptimize(moyal::hbar2_transport(h, {1.0, 1.0}, 0.3));
}
BENCHMARK(BM_Hbar2Transport)->Unit(benchmark::kMillisecond);

void BM_Hbar2Ode(benchmark::State& state) {
  moyal::HamiltonianSpec h = moyal::HamiltonianSpec::parse("q^2*p^2/4");
  for (auto _ : state) benchmark::DoNotOptimize(moyal::hbar2_ode(h, {1.0, 1.0}, 0.3, 600));
}
BENCHMARK(BM_Hbar2Ode)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
