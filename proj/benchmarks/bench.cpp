// Copyright 2026 The SpeckleNet Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "specklenet/adamax.hpp"
#include "specklenet/gemm.hpp"
#include "specklenet/layers.hpp"
#include "specklenet/model.hpp"

namespace {

using namespace specklenet;

Tensor filled(const Shape& shape, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
  Tensor t(shape);
  for (float& v : t.data()) v = dist(gen);
  return t;
}

void BM_Gemm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Tensor a = filled({n, n}, 1), b = filled({n, n}, 2);
  Tensor c({n, n});
  for (auto _ : state) {
    gemm::multiply_nn(n, n, n, a.data().data(), b.data().data(), c.data().data());
    benchmark::DoNotOptimize(c.data().data());
  }
  state.counters["GFLOP/s"] =
      benchmark::Counter(2.0 * n * n * n, benchmark::Counter::kIsIterationInvariantRate, benchmark::Counter::kIs1000);
}
BENCHMARK(BM_Gemm)->Arg(64)->Arg(256)->Arg(512);

// args: spatial side, input channels, output channels
void BM_ConvForward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto cin = static_cast<std::size_t>(state.range(1)), cout = static_cast<std::size_t>(state.range(2));
  const Tensor in = filled({side, side, cin}, 3), k = filled({3, 3, cin, cout}, 4), b = filled({cout}, 5);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d_valid(in, k, b));
}
BENCHMARK(BM_ConvForward)->Args({256, 1, 32})->Args({127, 32, 64})->Args({62, 64, 128})->Args({30, 128, 128});

void BM_ConvBackward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto cin = static_cast<std::size_t>(state.range(1)), cout = static_cast<std::size_t>(state.range(2));
  const Tensor in = filled({side, side, cin}, 3), k = filled({3, 3, cin, cout}, 4);
  const Tensor up = filled({side - 2, side - 2, cout}, 6);
  for (auto _ : state) benchmark::DoNotOptimize(conv2d_valid_backward(in, k, up));
}
BENCHMARK(BM_ConvBackward)->Args({127, 32, 64})->Args({62, 64, 128});

void BM_Forward(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const NetworkParams params = build_network<float>(side, 30, 7);
  const Tensor image = filled({side, side, 1}, 8);
  for (auto _ : state) benchmark::DoNotOptimize(predict(params, image));
  state.SetLabel(side == 256 ? "full profile" : "tiny profile");
}
BENCHMARK(BM_Forward)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

// one batch of 32: forward, backward and an Adamax update
void BM_TrainStep(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  NetworkParams params = build_network<float>(side, 30, 9);
  AdamaxState<float> opt = adamax_init<float>(std::span<const Tensor>(params.tensors()));
  std::vector<Tensor> images;
  for (std::uint64_t i = 0; i < 32; ++i) images.push_back(filled({side, side, 1}, 100 + i));
  std::vector<LabeledImage<float>> batch;
  for (std::size_t i = 0; i < images.size(); ++i) batch.push_back({&images[i], i % 30});
  for (auto _ : state) {
    BatchGradients<float> g = loss_and_gradients<float>(params, batch);
    adamax_step<float>(params.tensors(), std::span<const Tensor>(g.grads.tensors()), opt);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 32);
}
BENCHMARK(BM_TrainStep)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
