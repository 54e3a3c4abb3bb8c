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

#include "causalforge/notears.hpp"
#include "causalforge/scm.hpp"

namespace {

void BM_NotearsFit(benchmark::State& state) {
  cforge::ScmSpec spec;
  spec.d = static_cast<int>(state.range(0));
  const cforge::ScmSample s = cforge::generate_scm(spec, 11);
  Eigen::MatrixXd x(s.data.X.rows(), s.data.X.cols() + 1);
  x << s.data.X, s.data.y;
  for (auto _ : state) benchmark::DoNotOptimize(cforge::notears_fit(x, 0.03));
}
BENCHMARK(BM_NotearsFit)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
