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

#include "causalforge/acyclicity.hpp"
#include "causalforge/common.hpp"

namespace {

void BM_AcyclicityH(benchmark::State& state) {
  const auto d = static_cast<Eigen::Index>(state.range(0));
  cforge::Rng rng = cforge::make_rng(1);
  Eigen::MatrixXd w(d, d);
  for (Eigen::Index k = 0; k < w.size(); ++k) w(k) = 0.3 * (cforge::uniform01(rng) - 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(cforge::acyclicity_h(w));
}
BENCHMARK(BM_AcyclicityH)->Arg(10)->Arg(21)->Arg(50)->Arg(100);

}  // namespace
