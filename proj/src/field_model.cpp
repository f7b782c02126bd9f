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

#include "distsamp/field_model.hpp"

#include <algorithm>
#include <cmath>

#include "distsamp/random.hpp"

namespace distsamp {
namespace {

// Taken on each side of the lattice support when scanning for the sup.
constexpr double kNormalizationPad = 4.0;
// Coarse cells span this many fine grid steps.
constexpr int kCoarseFactor = 40;

double draw_target(Rng& rng) { return rng.uniform(0.7, 0.95); }

}  // namespace

std::string to_string(FieldKind kind) {
  switch (kind) {
    case FieldKind::kDeterministic:
      return "deterministic";
    case FieldKind::kWssExample1:
      return "wss1";
    case FieldKind::kWssExample2:
      return "wss2";
  }
  return "unknown";
}

FieldKind field_kind_from_string(const std::string& name) {
  if (name == "deterministic") return FieldKind::kDeterministic;
  if (name == "wss1") return FieldKind::kWssExample1;
  if (name == "wss2") return FieldKind::kWssExample2;
  throw ParameterError("unknown field kind '" + name + "'");
}

void FieldParams::validate(bool for_lagrange) const {
  require(lambda > 1.0, "lambda must exceed 1");
  require(bandwidth_W > 0.0, "bandwidth_W must be positive");
  require(amplitude_A > 0.0, "amplitude_A must be positive");
  require(margin_delta > 0.0 && margin_delta < bandwidth_W,
          "margin_delta must lie in (0, W)");
  if (for_lagrange) {
    require(lambda > kPi / 2.0,
            "finite-window Lagrange reconstruction needs lambda > pi/2");
  }
}

FieldParams FieldParams::defaults_for(FieldKind kind) {
  FieldParams p;
  if (kind != FieldKind::kDeterministic) {
    p.amplitude_A = 1.0 / (2.0 * p.bandwidth_W * p.bandwidth_W);
  }
  return p;
}

double BandlimitedField::operator()(double t) const {
  double acc = 0.0;
  double c = origin;
  for (double a : coeffs) {
    if (a != 0.0) acc += a * kernel(t - c);
    c += spacing;
  }
  return amplitude_scale * acc;
}

double eval(const BandlimitedField& field, double t) { return field(t); }

BandlimitedField deterministic_from_coefficients(const FieldParams& params,
                                                 std::vector<double> coeffs) {
  params.validate();
  require(coeffs.size() % 2 == 1, "coefficient count must be odd (2L + 1)");
  BandlimitedField f;
  f.kind = FieldKind::kDeterministic;
  f.params = params;
  f.kernel = FieldKernel::band_limited(params.bandwidth_W, params.margin_delta);
  f.support_halfwidth_L = static_cast<int>(coeffs.size() / 2);
  f.spacing = 1.0 / params.lambda;
  f.origin = -f.support_halfwidth_L * f.spacing;
  f.coeffs = std::move(coeffs);
  f.extent = {f.origin - kNormalizationPad,
              -f.origin + kNormalizationPad};
  return f;
}

BandlimitedField synth_deterministic(const FieldParams& params, int L_terms,
                                     std::uint64_t seed) {
  params.validate();
  require(L_terms >= 4, "synth_deterministic needs L_terms >= 4");
  Rng rng(seed);
  std::vector<double> coeffs(2 * static_cast<std::size_t>(L_terms) + 1);
  for (double& a : coeffs) a = rng.uniform(-1.0, 1.0);
  const double target = draw_target(rng) * params.amplitude_A;
  BandlimitedField f = deterministic_from_coefficients(params, std::move(coeffs));
  f.seed = seed;
  return normalized(std::move(f), target);
}

std::size_t wss_example1_input_size(const FieldParams& params, double duration) {
  const int half =
      static_cast<int>(std::ceil(0.5 * duration * params.lambda)) + kFejerTailCut;
  return 2 * static_cast<std::size_t>(half) + 1;
}

BandlimitedField wss_example1_from_input(const FieldParams& params,
                                         double duration,
                                         std::span<const double> z) {
  params.validate();
  require(duration > 0.0, "duration must be positive");
  require(z.size() == wss_example1_input_size(params, duration),
          "input length does not match the path duration");
  BandlimitedField f;
  f.kind = FieldKind::kWssExample1;
  f.params = params;
  f.kernel = FieldKernel::band_limited(params.bandwidth_W, params.margin_delta);
  f.spacing = 1.0 / params.lambda;
  f.support_halfwidth_L = static_cast<int>(z.size() / 2);
  f.origin = -f.support_halfwidth_L * f.spacing;
  f.coeffs.resize(z.size());
  // Riemann sum of the convolution; spacing 1/lambda < 2 pi / (W + delta)
  // keeps it exact for constant input.
  std::transform(z.begin(), z.end(), f.coeffs.begin(), [&](double v) {
    const double limited = std::copysign(std::min(std::abs(v), 1.0), v);
    return limited * f.spacing;
  });
  f.extent = {-0.5 * duration, 0.5 * duration};
  return f;
}

BandlimitedField synth_wss_example1(const FieldParams& params, double duration,
                                    std::uint64_t seed) {
  params.validate();
  require(duration > 0.0, "duration must be positive");
  Rng rng(seed);
  std::vector<double> z(wss_example1_input_size(params, duration));
  for (double& v : z) v = rng.gaussian();
  const double target = draw_target(rng) * params.amplitude_A;
  BandlimitedField f = wss_example1_from_input(params, duration, z);
  f.seed = seed;
  return normalized(std::move(f), target);
}

std::size_t wss_example2_input_size(const FieldParams& params, double duration) {
  const double s = params.bandwidth_W / (2.0 * kPi);
  const int half = static_cast<int>(std::ceil(0.5 * s * duration)) +
                   kFejerTailCut + 1;
  return 2 * static_cast<std::size_t>(half) + 1;
}

BandlimitedField wss_example2_from_sequence(const FieldParams& params,
                                            double duration,
                                            std::span<const double> y,
                                            double theta) {
  params.validate();
  require(duration > 0.0, "duration must be positive");
  require(y.size() == wss_example2_input_size(params, duration),
          "sequence length does not match the path duration");
  require(std::abs(theta) <= 0.5, "theta must lie in [-1/2, 1/2]");
  const double s = params.bandwidth_W / (2.0 * kPi);
  const int half = static_cast<int>(y.size() / 2);
  BandlimitedField f;
  f.kind = FieldKind::kWssExample2;
  f.params = params;
  f.kernel = FieldKernel::fejer(s);
  // Term l sits at t = -(l + theta)/s. Store centers ascending, j = -l.
  f.spacing = 1.0 / s;
  f.origin = (-half - theta) / s;
  f.support_halfwidth_L = half;
  f.coeffs.assign(y.rbegin(), y.rend());
  f.extent = {-0.5 * duration, 0.5 * duration};
  return f;
}

BandlimitedField synth_wss_example2(const FieldParams& params, double duration,
                                    std::uint64_t seed) {
  params.validate();
  require(duration > 0.0, "duration must be positive");
  Rng rng(seed);
  const double theta = rng.uniform(-0.5, 0.5);
  std::vector<double> y(wss_example2_input_size(params, duration));
  for (double& v : y) v = rng.uniform(-1.0, 1.0);
  const double target = draw_target(rng) * params.amplitude_A;
  BandlimitedField f = wss_example2_from_sequence(params, duration, y, theta);
  f.seed = seed;
  return normalized(std::move(f), target);
}

BandlimitedField synth_field(FieldKind kind, const FieldParams& params,
                             double extent_or_terms, std::uint64_t seed) {
  switch (kind) {
    case FieldKind::kDeterministic:
      return synth_deterministic(params, static_cast<int>(extent_or_terms), seed);
    case FieldKind::kWssExample1:
      return synth_wss_example1(params, extent_or_terms, seed);
    case FieldKind::kWssExample2:
      return synth_wss_example2(params, extent_or_terms, seed);
  }
  throw ParameterError("unknown field kind");
}

double normalization_step(const FieldParams& params) {
  return 1e-3 / params.lambda;
}

double dense_grid_sup(const BandlimitedField& field, Region region, double step) {
  require(step > 0.0 && region.hi >= region.lo, "invalid grid");
  const auto n_fine =
      static_cast<long>(std::floor((region.hi - region.lo) / step + 1e-9));
  const double coarse = step * kCoarseFactor;
  const double edge = field.kernel.spectral_edge();
  auto at = [&](long j) {
    return std::abs(field(region.lo + static_cast<double>(j) * step));
  };
  if (edge * coarse >= 1.0 || n_fine < 2 * kCoarseFactor) {
    double best = 0.0;
    for (long j = 0; j <= n_fine; ++j) best = std::max(best, at(j));
    return best;
  }

  const long n_cells = n_fine / kCoarseFactor;
  std::vector<double> node(static_cast<std::size_t>(n_cells) + 1);
  double best = 0.0;
  for (long i = 0; i <= n_cells; ++i) {
    node[i] = at(i * kCoarseFactor);
    best = std::max(best, node[i]);
  }
  // sup|f| <= best + edge * sup|f| * coarse / 2 bounds the global sup, and a
  // point inside a cell sits within coarse/2 of one of its nodes.
  const double sup_bound = best / (1.0 - 0.5 * edge * coarse);
  const double slack = 0.5 * edge * sup_bound * coarse;
  for (long i = 0; i < n_cells; ++i) {
    if (std::max(node[i], node[i + 1]) + slack < best) continue;
    for (long j = i * kCoarseFactor + 1; j < (i + 1) * kCoarseFactor; ++j) {
      best = std::max(best, at(j));
    }
  }
  for (long j = n_cells * kCoarseFactor + 1; j <= n_fine; ++j) {
    best = std::max(best, at(j));
  }
  return best;
}

BandlimitedField normalized(BandlimitedField field, double target) {
  require(target > 0.0, "normalization target must be positive");
  field.amplitude_scale = 1.0;
  const double sup =
      dense_grid_sup(field, field.extent, normalization_step(field.params));
  if (sup > 0.0) field.amplitude_scale = target / sup;
  return field;
}

}  // namespace distsamp
