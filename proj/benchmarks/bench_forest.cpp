/* Copyright 2026 The causalforge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include "causalforge/forest.hpp"
#include "causalforge/scm.hpp"

namespace {

void BM_ForestFit(benchmark::State& state) {
  cforge::ScmSpec spec;
  spec.n = static_cast<int>(state.range(0));
  const cforge::ScmSample s = cforge::generate_scm(spec, 7);
  const cforge::ForestConfig cfg = cforge::fast_forest_config();
  for (auto _ : state) {
    cforge::RandomForest forest;
    forest.fit(s.data.X, s.data.y, s.data.task, s.data.class_count, cfg, 3);
    benchmark::DoNotOptimize(forest);
  }
}
BENCHMARK(BM_ForestFit)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
