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

// The OpenMP kernels must match the serial reference bit for bit, whatever
// the thread count.

#include <omp.h>

#include <cmath>
#include <vector>

#include "distsamp/experiments.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/grid_kernels.hpp"
#include "distsamp/random.hpp"
#include "distsamp/reconstruct.hpp"
#include "doctest.h"

namespace ds = distsamp;

namespace {

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
  return g;
}

const int kThreadCounts[] = {1, 2, 3, 8};

}  // namespace

TEST_CASE("field evaluation matches the serial reference") {
  const auto f = ds::synth_deterministic(ds::FieldParams{}, 32, 42);
  const auto g = grid(f.extent.lo, f.extent.hi, 20011);
  std::vector<double> ref(g.size()), par(g.size());
  ds::eval_field_serial(f, g, ref);
  for (std::size_t i : {0, 777, 20010}) CHECK(ref[i] == f(g[i]));
  for (int threads : kThreadCounts) {
    omp_set_num_threads(threads);
    ds::eval_field_omp(f, g, par);
    CHECK(par == ref);
  }
}

TEST_CASE("kernel sums match the serial reference") {
  ds::Rng rng(3);
  std::vector<double> values(500);
  for (double& v : values) v = rng.uniform01() - 0.5;
  const auto k = ds::KernelSpec::stable(2.0);
  const auto g = grid(-100.0, 100.0, 9001);
  std::vector<double> ref(g.size()), par(g.size());
  ds::kernel_sum_serial(-250, 2.0, values, k, g, ref);
  for (int threads : kThreadCounts) {
    omp_set_num_threads(threads);
    ds::kernel_sum_omp(-250, 2.0, values, k, g, par);
    CHECK(par == ref);
  }
}

TEST_CASE("barycentric interpolation matches the serial reference") {
  std::vector<double> nodes, values;
  for (int j = 0; j < 17; ++j) {
    nodes.push_back(-4.0 + 0.5 * j + 0.01 * (j % 3));
    values.push_back(std::sin(0.7 * j));
  }
  const auto w = ds::barycentric_weights(nodes);
  auto g = grid(-4.0, 4.0, 5003);
  g.push_back(nodes[5]);  // exact node hit
  std::vector<double> ref(g.size()), par(g.size());
  ds::barycentric_serial(nodes, w, values, g, ref);
  CHECK(ref.back() == values[5]);
  for (int threads : kThreadCounts) {
    omp_set_num_threads(threads);
    ds::barycentric_omp(nodes, w, values, g, par);
    CHECK(par == ref);
  }
}

TEST_CASE("parallel trials keep results in index order") {
  auto fn = [](int i) {
    ds::RunOutcome r;
    r.D = 1.0 / (i + 1);
    r.N = i;
    return r;
  };
  for (int threads : kThreadCounts) {
    omp_set_num_threads(threads);
    const auto out = ds::parallel_trials(100, fn);
    REQUIRE(out.size() == 100);
    for (int i = 0; i < 100; ++i) {
      CHECK(out[i].N == i);
      CHECK(out[i].D == 1.0 / (i + 1));
    }
  }
}

TEST_CASE("pipeline runs are independent of thread count") {
  ds::PipelineOptions o;
  const auto seeds = ds::seed_range(50, 4);
  auto run = [&](int i) {
    const auto f = ds::synth_deterministic(ds::FieldParams{}, 16, seeds[i]);
    return ds::run_one_bit(f, 5, 3, o);
  };
  omp_set_num_threads(1);
  const auto ref = ds::parallel_trials(4, run);
  omp_set_num_threads(4);
  const auto par = ds::parallel_trials(4, run);
  for (int i = 0; i < 4; ++i) CHECK(par[i].D == ref[i].D);
}
