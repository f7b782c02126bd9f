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

#include "distsamp/grid_kernels.hpp"

#include <algorithm>
#include <cmath>

namespace distsamp {
namespace {

double kernel_sum_at(int first, double lambda, std::span<const double> values,
                     const KernelSpec& kernel, double t) {
  const long n = static_cast<long>(values.size());
  long lo = 0;
  long hi = n - 1;
  if (kernel.radius > 0.0) {
    lo = std::max(lo, static_cast<long>(std::ceil((t - kernel.radius) * lambda)) - first);
    hi = std::min(hi, static_cast<long>(std::floor((t + kernel.radius) * lambda)) - first);
  }
  double acc = 0.0;
  for (long j = lo; j <= hi; ++j) {
    acc += values[j] * kernel(t - (first + static_cast<double>(j)) / lambda);
  }
  return acc;
}

double barycentric_at(std::span<const double> nodes,
                      std::span<const double> weights,
                      std::span<const double> values, double t) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const double diff = t - nodes[j];
    if (diff == 0.0) return values[j];
    const double w = weights[j] / diff;
    num += w * values[j];
    den += w;
  }
  return num / den;
}

}  // namespace

void eval_field_serial(const BandlimitedField& field,
                       std::span<const double> grid, std::span<double> out) {
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = field(grid[i]);
}

void eval_field_omp(const BandlimitedField& field, std::span<const double> grid,
                    std::span<double> out) {
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = field(grid[i]);
}

void kernel_sum_serial(int first, double lambda, std::span<const double> values,
                       const KernelSpec& kernel, std::span<const double> grid,
                       std::span<double> out) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = kernel_sum_at(first, lambda, values, kernel, grid[i]);
  }
}

void kernel_sum_omp(int first, double lambda, std::span<const double> values,
                    const KernelSpec& kernel, std::span<const double> grid,
                    std::span<double> out) {
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    out[i] = kernel_sum_at(first, lambda, values, kernel, grid[i]);
  }
}

void barycentric_serial(std::span<const double> nodes,
                        std::span<const double> weights,
                        std::span<const double> values,
                        std::span<const double> grid, std::span<double> out) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = barycentric_at(nodes, weights, values, grid[i]);
  }
}

void barycentric_omp(std::span<const double> nodes,
                     std::span<const double> weights,
                     std::span<const double> values,
                     std::span<const double> grid, std::span<double> out) {
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    out[i] = barycentric_at(nodes, weights, values, grid[i]);
  }
}

}  // namespace distsamp
