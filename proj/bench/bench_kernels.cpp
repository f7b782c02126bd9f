// Copyright 2026 The distsamp Authors.
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

// Serial reference against the OpenMP version of each grid kernel.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "distsamp/field_model.hpp"
#include "distsamp/grid_kernels.hpp"
#include "distsamp/random.hpp"
#include "distsamp/reconstruct.hpp"

namespace ds = distsamp;

namespace {

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

template <ds::Exec exec>
void BM_EvalField(benchmark::State& state) {
  const auto f = ds::synth_deterministic(ds::FieldParams{}, 32, 42);
  const auto g = grid(f.extent.lo, f.extent.hi, state.range(0));
  std::vector<double> out(g.size());
  for (auto _ : state) {
    ds::eval_field_grid(f, g, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <ds::Exec exec>
void BM_KernelSum(benchmark::State& state) {
  ds::Rng rng(3);
  std::vector<double> values(2000);
  for (double& v : values) v = rng.uniform01() - 0.5;
  const auto k = ds::KernelSpec::stable(2.0);
  const auto g = grid(-400.0, 400.0, state.range(0));
  std::vector<double> out(g.size());
  for (auto _ : state) {
    ds::kernel_sum_grid(-1000, 2.0, values, k, g, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <ds::Exec exec>
void BM_Barycentric(benchmark::State& state) {
  std::vector<double> nodes, values;
  for (int j = 0; j < 34; ++j) {
    nodes.push_back(-8.5 + 0.5 * j + 0.013 * (j % 5));
    values.push_back(std::sin(0.4 * j));
  }
  const auto w = ds::barycentric_weights(nodes);
  const auto g = grid(-2.0, 2.0, state.range(0));
  std::vector<double> out(g.size());
  for (auto _ : state) {
    ds::barycentric_grid(nodes, w, values, g, out, exec);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_EvalField<ds::Exec::kSerial>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_EvalField<ds::Exec::kParallel>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_KernelSum<ds::Exec::kSerial>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_KernelSum<ds::Exec::kParallel>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_Barycentric<ds::Exec::kSerial>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_Barycentric<ds::Exec::kParallel>)->Arg(1 << 14)->Arg(1 << 17);

BENCHMARK_MAIN();
