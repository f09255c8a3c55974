// Copyright 2026 The seqnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Microbenchmarks for residual, Jacobian and full path tracing on generated
// games. Argument is the tree depth.

#include <benchmark/benchmark.h>

#include "seqnash/gamegen.hpp"
#include "seqnash/homotopy.hpp"
#include "seqnash/sequence_form.hpp"
#include "seqnash/tracer.hpp"

namespace {

using namespace seqnash;

SequenceFormGame type1_game(int depth) {
  GenSpec spec;
  spec.game_type = 1;
  spec.n = 3;
  spec.depth = depth;
  spec.actions = 2;
  spec.seed = 1;
  return build_sequence_form(generate(spec));
}

HomotopyConfig config_for(const SequenceFormGame& sf) {
  HomotopyConfig c;
  c.gamma0 = random_interior_plan(sf, 1);
  c.alpha = sample_alpha(1, 0.01, sf.num_actions());
  return c;
}

void BM_Residual(benchmark::State& state) {
  const SequenceFormGame sf = type1_game(static_cast<int>(state.range(0)));
  const HomotopySystem s(sf, config_for(sf));
  const Eigen::VectorXd y = s.start_point().stacked();
  for (auto _ : state) benchmark::DoNotOptimize(s.residual(y));
  state.counters["dim"] = static_cast<double>(s.num_unknowns());
}
BENCHMARK(BM_Residual)->DenseRange(5, 8);

void BM_Jacobian(benchmark::State& state) {
  const SequenceFormGame sf = type1_game(static_cast<int>(state.range(0)));
  const HomotopySystem s(sf, config_for(sf));
  const Eigen::VectorXd y = s.start_point().stacked();
  for (auto _ : state) benchmark::DoNotOptimize(s.jacobian(y));
  state.counters["dim"] = static_cast<double>(s.num_unknowns());
}
BENCHMARK(BM_Jacobian)->DenseRange(5, 8);

void BM_Trace(benchmark::State& state) {
  const SequenceFormGame sf = type1_game(static_cast<int>(state.range(0)));
  const HomotopySystem s(sf, config_for(sf));
  TracerParams p;
  p.record_path = false;
  std::size_t steps = 0;
  for (auto _ : state) {
    const SolveResult r = trace(s, p);
    steps = r.steps;
    benchmark::DoNotOptimize(r.gap.max);
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_Trace)->DenseRange(5, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
