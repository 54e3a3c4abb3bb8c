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

#include "causalforge/qnetwork.hpp"

namespace {

void BM_QNetworkPredict(benchmark::State& state) {
  cforge::QNetwork net(43, 15, {}, 1);
  const cforge::QNetwork::Matrix x = cforge::QNetwork::Matrix::Random(1, 43);
  for (auto _ : state) benchmark::DoNotOptimize(net.predict(x));
}
BENCHMARK(BM_QNetworkPredict);

void BM_QNetworkTrainStep(benchmark::State& state) {
  cforge::QNetwork net(43, 15, {}, 1);
  const auto batch = static_cast<Eigen::Index>(state.range(0));
  const cforge::QNetwork::Matrix x = cforge::QNetwork::Matrix::Random(batch, 43);
  const cforge::QNetwork::Matrix g = cforge::QNetwork::Matrix::Random(batch, 15);
  cforge::Rng rng = cforge::make_rng(2);
  for (auto _ : state) {
    net.zero_grad();
    benchmark::DoNotOptimize(net.forward_train(x, &rng));
    net.backward(g);
    net.adam_step();
  }
}
BENCHMARK(BM_QNetworkTrainStep)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
