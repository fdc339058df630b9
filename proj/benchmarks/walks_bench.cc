// Copyright 2026 The hwalks Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "hwalks/analysis.h"
#include "hwalks/characteristics.h"
#include "hwalks/coherence.h"
#include "hwalks/ncseq.h"
#include "hwalks/ordinal.h"
#include "hwalks/tuple.h"
#include "hwalks/walks.h"

namespace hwalks {
namespace {

NCSeqPtr Builtin(bool maximal, int n) {
  const Ordinal lambda = Ordinal::Parse(n == 3 ? "w^3" : "w^2");
  if (maximal) return BuildMaximal(n, lambda);
  return BuildOrderMinimal(n, lambda);
}

Tuple InputFor(int n) {
  switch (n) {
    case 1: return ParseTuple("w*2+7,w*4+3");
    case 2: return ParseTuple("w+5,w*3+2,w*5");
    default: return ParseTuple("w^2+w+1,w^2*2+3,w^2*2+w*4,w^2*3");
  }
}

void BM_Walk(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NCSeqPtr seq = Builtin(state.range(1) != 0, n);
  const Tuple input = InputFor(n);
  std::size_t nodes = 0;
  for (auto _ : state) {
    WalkTree t = Walk(*seq, 1, input);
    nodes = t.size();
    benchmark::DoNotOptimize(nodes);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_Walk)->ArgsProduct({{1, 2, 3}, {0, 1}})->ArgNames({"n", "maximal"});

void BM_Rho2Landmarks(benchmark::State& state) {
  NCSeqPtr seq = Builtin(state.range(0) != 0, 1);
  std::vector<Ordinal> pts;
  for (int b = 0; b < 5; ++b) {
    for (int c = 0; c < 10; ++c) {
      Ordinal::Terms terms;
      if (b > 0) terms.push_back(Term{1, static_cast<std::uint64_t>(b)});
      if (c > 0) terms.push_back(Term{0, static_cast<std::uint64_t>(c)});
      pts.push_back(Ordinal::FromTerms(terms));
    }
  }
  for (auto _ : state) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i; j < pts.size(); ++j) total += Rho2(*seq, 1, {pts[i], pts[j]});
    }
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_Rho2Landmarks)->Arg(0)->Arg(1)->ArgName("maximal")->Unit(benchmark::kMillisecond);

void BM_Resh(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NCSeqPtr seq = Builtin(true, n);
  const Tuple input = InputFor(n);
  for (auto _ : state) {
    FreeAbelian g = Resh(*seq, input);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_Resh)->DenseRange(1, 3);

void BM_Coherence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NCSeqPtr seq = Builtin(true, n);
  const Ordinal window = Ordinal::Parse(n == 3 ? "w^3" : "w^2");
  for (auto _ : state) {
    CoherenceReport r = CheckCoherence(*seq, window);
    benchmark::DoNotOptimize(r.indices_scanned);
  }
}
BENCHMARK(BM_Coherence)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_LemmaSuite(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NCSeqPtr seq = Builtin(true, n);
  SamplingPlan plan = DefaultPlan(*seq);
  plan.max_instances = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    SuiteReport r = RunLemmaSuite(*seq, plan);
    benchmark::DoNotOptimize(r.outcomes.size());
  }
}
BENCHMARK(BM_LemmaSuite)
    ->Args({2, 30})
    ->Args({3, 30})
    ->ArgNames({"n", "instances"})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hwalks

BENCHMARK_MAIN();
