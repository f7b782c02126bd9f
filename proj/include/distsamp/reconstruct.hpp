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

// Reconstruction engines and distortion measures.
//
//  - reconstruct_uniform: shift-kernel sum over uniform samples l/lambda.
//  - reconstruct_lagrange: polynomial interpolation through the crossing
//    estimates of a finite window of 2(L + L') intervals.
//  - reconstruct_nonuniform_ls: least-squares fit of a uniform shift basis to
//    the crossing estimates.

#ifndef DISTSAMP_RECONSTRUCT_HPP_
#define DISTSAMP_RECONSTRUCT_HPP_

#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "distsamp/common.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/grid_kernels.hpp"
#include "distsamp/kernel.hpp"
#include "distsamp/sampler.hpp"

namespace distsamp {

struct UniformSamples {
  double lambda = 2.0;
  int first_index = 0;
  std::vector<double> values;

  double location(std::size_t i) const {
    return (first_index + static_cast<double>(i)) / lambda;
  }
};

UniformSamples quantized_samples(const NyquistSamples& s);
UniformSamples exact_samples(const NyquistSamples& s);

struct ReconstructionResult {
  std::string engine;
  std::vector<double> grid;
  std::vector<double> values;
  Region region;
  double sup_error = NAN;
  std::map<double, double> lq_errors;
  double fitted_C = NAN;
  // Least-squares engine only.
  double residual = 0.0;
  bool regularized = false;
};

/// Points lo, lo + step, ... up to hi (hi included when it lands on the grid).
std::vector<double> make_grid(Region region, double step);

/// Evaluation grid step for bit budget k: a quarter of the sensor spacing.
double grid_step(int k, double lambda);

/// Region of interest [-L/lambda, L/lambda].
Region interior_region(int L, double lambda);

ReconstructionResult reconstruct_uniform(const UniformSamples& samples,
                                         const KernelSpec& kernel,
                                         std::span<const double> grid,
                                         Exec exec = Exec::kParallel);

/// Lagrange polynomial P_l(t) = prod_{j != l} (t - t_j) / (t_l - t_j).
/// Throws ParameterError on duplicate locations.
double lagrange_basis(double t, std::span<const double> locations, std::size_t l);

/// w_j = 1 / prod_{k != j} (t_j - t_k). Throws ParameterError on duplicates.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Interpolates the estimates of the records with interval index in
/// [-(L + L'), L + L' - 1]. Requires lambda > pi/2 and a record for every
/// interval of that window.
ReconstructionResult reconstruct_lagrange(
    const std::vector<CrossingRecord>& crossings, int L, int Lprime,
    double lambda, std::span<const double> grid, Exec exec = Exec::kParallel);

/// sqrt(L') (pi / (2 lambda))^(2L' + 1) + C_tilde L'^2 / N.
double lagrange_error_bound(int Lprime, double lambda, int N, double C_tilde);

/// Relative ridge added to the normal equations of the least-squares engine.
inline constexpr double kLsRidge = 1e-10;

/// Fits sum_j a_j K(t - j/lambda), |j| <= basis_halfwidth, to the record
/// estimates. K defaults to the trapezoid kernel with spectrum ending at pi.
/// A rank-deficient normal system gets a ridge of kLsRidge * trace / n and
/// sets `regularized`.
ReconstructionResult reconstruct_nonuniform_ls(
    const std::vector<CrossingRecord>& crossings, double lambda,
    int basis_halfwidth, std::span<const double> grid,
    std::optional<FieldKernel> basis = std::nullopt);

/// max |f - f_hat| over grid points inside `region`.
double sup_distortion(const BandlimitedField& field,
                      const ReconstructionResult& result, Region region);

/// ((1/T) integral_{|s - t| < T/2} |e(s)|^q ds)^(1/q) by the trapezoid rule
/// over the result grid points in the window.
double local_avg_distortion(const BandlimitedField& field,
                            const ReconstructionResult& result, double q,
                            double T, double t);

/// Fills sup_error over `region` and L^1, L^2 local averages over it.
void score(const BandlimitedField& field, ReconstructionResult& result,
           Region region);

// --- Two-dimensional slices -------------------------------------------------

/// f(x, y) = fx(x) fy(y); a missing fy means constant one in y.
struct SeparableField2D {
  BandlimitedField fx;
  std::optional<BandlimitedField> fy;

  double operator()(double x, double y) const {
    return fx(x) * (fy ? (*fy)(y) : 1.0);
  }
};

struct SliceOptions {
  int k = 6;
  double lambda_x = 2.0;
  double lambda_y = 2.0;
  double gamma = 1.1;
  int L = 4;
  int Lprime = 6;
  // Skip the one-bit stage and use exact values on each line.
  bool exact_line_values = false;
  // Radius of the vertical kernel sum in meters; 0 keeps 40 / lambda_y.
  double vertical_radius = 0.0;
};

struct Reconstruction2D {
  std::vector<double> x;
  std::vector<double> y;
  // Row-major, values[iy * x.size() + ix].
  std::vector<double> values;
  double sup_error = 0.0;
  // Largest 1-D error over the lines used.
  double line_sup_error = 0.0;
  int lines = 0;
};

/// One-bit reconstruction along the lines y_j = j / lambda_y, then vertical
/// interpolation with the stable kernel for lambda_y. The x grid must lie in
/// [-L / lambda_x, L / lambda_x].
Reconstruction2D slice_reconstruct_2d(const SeparableField2D& field,
                                      const SliceOptions& options,
                                      std::span<const double> x_grid,
                                      std::span<const double> y_grid);

}  // namespace distsamp

#endif  // DISTSAMP_RECONSTRUCT_HPP_
