// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <benchmark/benchmark.h>

#include "sifn/autograd/ops.hpp"

namespace {

using sifn::ag::Tensor;

Tensor random_tensor(sifn::ag::Shape shape, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto t = Tensor::zeros(std::move(shape), true);
  for (double& v : t.mutable_data()) v = normal(rng);
  return t;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_tensor({n, n}, 1);
  const auto b = random_tensor({n, n}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sifn::ag::matmul(a, b).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}
BENCHMARK(BM_Matmul)->Arg(16)->Arg(64)->Arg(128);

void BM_MatmulBackward(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto a = random_tensor({n, n}, 1);
  auto b = random_tensor({n, n}, 2);
  for (auto _ : state) {
    a.zero_grad();
    b.zero_grad();
    sifn::ag::sum_all(sifn::ag::matmul(a, b, sifn::ag::Transpose::kB)).backward();
  }
}
BENCHMARK(BM_MatmulBackward)->Arg(16)->Arg(64);

void BM_MaskedSoftmax(benchmark::State& state) {
  const std::size_t rows = 1000, width = static_cast<std::size_t>(state.range(0));
  const auto x = random_tensor({rows, width}, 3);
  std::vector<std::uint8_t> keep(rows * width, 1);
  for (std::size_t i = 0; i < keep.size(); i += 3) keep[i] = 0;
  const auto mask = sifn::ag::Mask::from({rows, width}, keep);
  for (auto _ : state) benchmark::DoNotOptimize(sifn::ag::softmax_lastdim(x, &mask).data().data());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(rows * width));
}
BENCHMARK(BM_MaskedSoftmax)->Arg(10)->Arg(100);

}  // namespace
