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

// Grid evaluation loops. Each has a plain serial version, kept as the
// reference, and an OpenMP version that must produce bit-identical output.

#ifndef DISTSAMP_GRID_KERNELS_HPP_
#define DISTSAMP_GRID_KERNELS_HPP_

#include <span>

#include "distsamp/field_model.hpp"
#include "distsamp/kernel.hpp"

namespace distsamp {

enum class Exec { kSerial, kParallel };

// out[i] = field(grid[i]).
void eval_field_serial(const BandlimitedField& field,
                       std::span<const double> grid, std::span<double> out);
void eval_field_omp(const BandlimitedField& field, std::span<const double> grid,
                    std::span<double> out);

// out[i] = sum_j values[j] kernel(grid[i] - (first + j) / lambda), restricted
// to samples within kernel.radius of grid[i].
void kernel_sum_serial(int first, double lambda, std::span<const double> values,
                       const KernelSpec& kernel, std::span<const double> grid,
                       std::span<double> out);
void kernel_sum_omp(int first, double lambda, std::span<const double> values,
                    const KernelSpec& kernel, std::span<const double> grid,
                    std::span<double> out);

// Second-form barycentric interpolation through (nodes[j], values[j]).
void barycentric_serial(std::span<const double> nodes,
                        std::span<const double> weights,
                        std::span<const double> values,
                        std::span<const double> grid, std::span<double> out);
void barycentric_omp(std::span<const double> nodes,
                     std::span<const double> weights,
                     std::span<const double> values,
                     std::span<const double> grid, std::span<double> out);

inline void eval_field_grid(const BandlimitedField& field,
                            std::span<const double> grid, std::span<double> out,
                            Exec exec = Exec::kParallel) {
  exec == Exec::kSerial ? eval_field_serial(field, grid, out)
                        : eval_field_omp(field, grid, out);
}

inline void kernel_sum_grid(int first, double lambda,
                            std::span<const double> values,
                            const KernelSpec& kernel,
                            std::span<const double> grid, std::span<double> out,
                            Exec exec = Exec::kParallel) {
  exec == Exec::kSerial
      ? kernel_sum_serial(first, lambda, values, kernel, grid, out)
      : kernel_sum_omp(first, lambda, values, kernel, grid, out);
}

inline void barycentric_grid(std::span<const double> nodes,
                             std::span<const double> weights,
                             std::span<const double> values,
                             std::span<const double> grid, std::span<double> out,
                             Exec exec = Exec::kParallel) {
  exec == Exec::kSerial ? barycentric_serial(nodes, weights, values, grid, out)
                        : barycentric_omp(nodes, weights, values, grid, out);
}

}  // namespace distsamp

#endif  // DISTSAMP_GRID_KERNELS_HPP_
