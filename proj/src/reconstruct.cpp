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

#include "distsamp/reconstruct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "distsamp/dither.hpp"

namespace distsamp {
namespace {

constexpr double kIllConditioned = 1e-12;

std::vector<double> field_on(const BandlimitedField& field,
                             std::span<const double> grid) {
  std::vector<double> out(grid.size());
  eval_field_grid(field, grid, out);
  return out;
}

}  // namespace

UniformSamples quantized_samples(const NyquistSamples& s) {
  return {s.lambda, s.first_index, s.reproduction};
}

UniformSamples exact_samples(const NyquistSamples& s) {
  return {s.lambda, s.first_index, s.exact};
}

std::vector<double> make_grid(Region region, double step) {
  require(step > 0.0 && region.hi >= region.lo, "invalid grid");
  const auto n =
      static_cast<long>(std::floor((region.hi - region.lo) / step + 1e-9));
  std::vector<double> grid(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) grid[i] = region.lo + static_cast<double>(i) * step;
  return grid;
}

double grid_step(int k, double lambda) {
  return 0.25 / (lambda * std::ldexp(1.0, k));
}

Region interior_region(int L, double lambda) { return {-L / lambda, L / lambda}; }

ReconstructionResult reconstruct_uniform(const UniformSamples& samples,
                                         const KernelSpec& kernel,
                                         std::span<const double> grid,
                                         Exec exec) {
  require(!samples.values.empty(), "no samples to reconstruct from");
  ReconstructionResult r;
  r.engine = "uniform";
  r.grid.assign(grid.begin(), grid.end());
  r.values.resize(grid.size());
  kernel_sum_grid(samples.first_index, samples.lambda, samples.values, kernel,
                  grid, r.values, exec);
  return r;
}

double lagrange_basis(double t, std::span<const double> locations, std::size_t l) {
  require(l < locations.size(), "basis index out of range");
  std::vector<double> sorted(locations.begin(), locations.end());
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "duplicate interpolation nodes");
  double p = 1.0;
  for (std::size_t j = 0; j < locations.size(); ++j) {
    if (j == l) continue;
    p *= (t - locations[j]) / (locations[l] - locations[j]);
  }
  return p;
}

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  std::vector<double> w(nodes.size(), 1.0);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k == j) continue;
      const double gap = nodes[j] - nodes[k];
      require(gap != 0.0, "duplicate interpolation nodes");
      w[j] /= gap;
    }
  }
  return w;
}

ReconstructionResult reconstruct_lagrange(
    const std::vector<CrossingRecord>& crossings, int L, int Lprime,
    double lambda, std::span<const double> grid, Exec exec) {
  require(lambda > kPi / 2.0,
          "Lagrange reconstruction needs lambda > pi/2; below it the window "
          "truncation term does not decay");
  require(L >= 1 && Lprime >= 0, "need L >= 1 and L' >= 0");
  const int n = L + Lprime;
  std::vector<double> nodes;
  std::vector<double> values;
  for (const CrossingRecord& rec : crossings) {
    if (rec.interval_l < -n || rec.interval_l > n - 1) continue;
    nodes.push_back(rec.midpoint_t);
    values.push_back(rec.value_estimate);
  }
  require(static_cast<int>(nodes.size()) == 2 * n,
          "crossings do not cover the window of 2(L + L') intervals");
  const std::vector<double> weights = barycentric_weights(nodes);
  ReconstructionResult r;
  r.engine = "lagrange";
  r.grid.assign(grid.begin(), grid.end());
  r.values.resize(grid.size());
  barycentric_grid(nodes, weights, values, grid, r.values, exec);
  r.region = interior_region(L, lambda);
  return r;
}

double lagrange_error_bound(int Lprime, double lambda, int N, double C_tilde) {
  const double base = kPi / (2.0 * lambda);
  return std::sqrt(static_cast<double>(Lprime)) * std::pow(base, 2 * Lprime + 1) +
         C_tilde * Lprime * Lprime / N;
}

ReconstructionResult reconstruct_nonuniform_ls(
    const std::vector<CrossingRecord>& crossings, double lambda,
    int basis_halfwidth, std::span<const double> grid,
    std::optional<FieldKernel> basis) {
  require(!crossings.empty(), "no crossings to fit");
  require(lambda > 1.0 && basis_halfwidth >= 0, "invalid least-squares setup");
  const FieldKernel K = basis.value_or(FieldKernel::band_limited(kPi, kPi / 2.0));
  const int m = static_cast<int>(crossings.size());
  const int nb = 2 * basis_halfwidth + 1;
  auto center = [&](int j) { return (j - basis_halfwidth) / lambda; };

  Eigen::MatrixXd A(m, nb);
  Eigen::VectorXd v(m);
  for (int i = 0; i < m; ++i) {
    v(i) = crossings[i].value_estimate;
    for (int j = 0; j < nb; ++j) A(i, j) = K(crossings[i].midpoint_t - center(j));
  }
  Eigen::MatrixXd G = A.transpose() * A;
  const Eigen::VectorXd rhs = A.transpose() * v;

  ReconstructionResult r;
  r.engine = "least_squares";
  Eigen::LDLT<Eigen::MatrixXd> ldlt(G);
  Eigen::VectorXd a;
  if (nb > m || ldlt.info() != Eigen::Success || ldlt.rcond() < kIllConditioned) {
    G.diagonal().array() += kLsRidge * G.trace() / nb;
    ldlt.compute(G);
    r.regularized = true;
  }
  a = ldlt.solve(rhs);
  r.residual = std::sqrt((A * a - v).squaredNorm() / m);

  r.grid.assign(grid.begin(), grid.end());
  r.values.resize(grid.size());
  const long ng = static_cast<long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < ng; ++i) {
    double acc = 0.0;
    for (int j = 0; j < nb; ++j) acc += a(j) * K(grid[i] - center(j));
    r.values[i] = acc;
  }
  return r;
}

double sup_distortion(const BandlimitedField& field,
                      const ReconstructionResult& result, Region region) {
  std::vector<double> pts;
  std::vector<double> est;
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    if (!region.contains(result.grid[i])) continue;
    pts.push_back(result.grid[i]);
    est.push_back(result.values[i]);
  }
  const std::vector<double> truth = field_on(field, pts);
  double sup = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    sup = std::max(sup, std::abs(truth[i] - est[i]));
  }
  return sup;
}

double local_avg_distortion(const BandlimitedField& field,
                            const ReconstructionResult& result, double q,
                            double T, double t) {
  require(q > 0.0 && T > 0.0, "local average needs q > 0 and T > 0");
  std::vector<double> pts;
  std::vector<double> est;
  for (std::size_t i = 0; i < result.grid.size(); ++i) {
    if (std::abs(result.grid[i] - t) >= 0.5 * T) continue;
    pts.push_back(result.grid[i]);
    est.push_back(result.values[i]);
  }
  require(pts.size() >= 2, "local average window holds fewer than two grid points");
  const std::vector<double> truth = field_on(field, pts);
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double a = std::pow(std::abs(truth[i] - est[i]), q);
    const double b = std::pow(std::abs(truth[i + 1] - est[i + 1]), q);
    integral += 0.5 * (a + b) * (pts[i + 1] - pts[i]);
  }
  // Normalize by the span actually covered so constant errors come out exact.
  return std::pow(integral / (pts.back() - pts.front()), 1.0 / q);
}

void score(const BandlimitedField& field, ReconstructionResult& result,
           Region region) {
  result.region = region;
  result.sup_error = sup_distortion(field, result, region);
  const double mid = 0.5 * (region.lo + region.hi);
  // The open window |s - mid| < T/2 must still reach the region edges.
  const double T = region.length() * (1.0 + 1e-9);
  for (double q : {1.0, 2.0}) {
    result.lq_errors[q] = local_avg_distortion(field, result, q, T, mid);
  }
}

Reconstruction2D slice_reconstruct_2d(const SeparableField2D& field,
                                      const SliceOptions& o,
                                      std::span<const double> x_grid,
                                      std::span<const double> y_grid) {
  require(!x_grid.empty() && !y_grid.empty(), "empty 2-D grid");
  require(std::abs(field.fx.params.lambda - o.lambda_x) < 1e-12,
          "horizontal field was built for a different lambda_x");
  const Region roi = interior_region(o.L, o.lambda_x);
  const auto [xmin, xmax] = std::minmax_element(x_grid.begin(), x_grid.end());
  require(*xmin >= roi.lo - 1e-12 && *xmax <= roi.hi + 1e-12,
          "x grid leaves the horizontal region of interest");

  KernelSpec vertical = KernelSpec::stable(o.lambda_y);
  if (o.vertical_radius > 0.0) vertical.radius = o.vertical_radius;
  const auto [ymin, ymax] = std::minmax_element(y_grid.begin(), y_grid.end());
  const int j_lo = static_cast<int>(std::ceil((*ymin - vertical.radius) * o.lambda_y));
  const int j_hi = static_cast<int>(std::floor((*ymax + vertical.radius) * o.lambda_y));

  Reconstruction2D out;
  out.x.assign(x_grid.begin(), x_grid.end());
  out.y.assign(y_grid.begin(), y_grid.end());
  out.lines = j_hi - j_lo + 1;

  const std::size_t nx = x_grid.size();
  // lines[j][ix]: reconstruction along y = (j_lo + j) / lambda_y.
  std::vector<std::vector<double>> lines(out.lines);
  const DitherSpec dither = make_triangular_dither(o.gamma, o.lambda_x);
  const IntervalWindow window = IntervalWindow::symmetric(o.L + o.Lprime);
  std::vector<double> line_err(out.lines, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < out.lines; ++j) {
    const double yj = (j_lo + j) / o.lambda_y;
    BandlimitedField g = field.fx;
    g.amplitude_scale *= field.fy ? (*field.fy)(yj) : 1.0;
    std::vector<double> truth(nx);
    eval_field_serial(g, x_grid, truth);
    if (o.exact_line_values) {
      lines[j] = std::move(truth);
      continue;
    }
    const SignMatrix signs = sample_dithered_1bit(g, dither, o.k, window);
    const auto records = detect_zero_crossings(signs, dither);
    ReconstructionResult r =
        reconstruct_lagrange(records, o.L, o.Lprime, o.lambda_x, x_grid, Exec::kSerial);
    double err = 0.0;
    for (std::size_t i = 0; i < nx; ++i) err = std::max(err, std::abs(r.values[i] - truth[i]));
    line_err[j] = err;
    lines[j] = std::move(r.values);
  }
  out.line_sup_error = *std::max_element(line_err.begin(), line_err.end());

  out.values.assign(nx * y_grid.size(), 0.0);
  for (std::size_t iy = 0; iy < y_grid.size(); ++iy) {
    const double y = y_grid[iy];
    for (int j = 0; j < out.lines; ++j) {
      const double yj = (j_lo + j) / o.lambda_y;
      if (std::abs(y - yj) > vertical.radius) continue;
      const double w = vertical(y - yj);
      double* row = &out.values[iy * nx];
      for (std::size_t ix = 0; ix < nx; ++ix) row[ix] += w * lines[j][ix];
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
      out.sup_error = std::max(
          out.sup_error, std::abs(out.values[iy * nx + ix] - field(x_grid[ix], y)));
    }
  }
  return out;
}

}  // namespace distsamp
