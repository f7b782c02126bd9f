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

#include "distsamp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace distsamp {
namespace {

// Extra intervals the stationary paths extend past the farthest sensor.
constexpr int kPathSlack = 4;
// Decorrelates the vertical factor of a 2-D field from the horizontal one.
constexpr std::uint64_t kVerticalSeedSalt = 0x9e3779b97f4a7c15ULL;

DitherSpec one_bit_dither(const PipelineOptions& o) {
  return o.dither == DitherKind::kCosine ? make_cosine_dither(o.gamma, o.lambda)
                                         : make_triangular_dither(o.gamma, o.lambda);
}

double max_sample_error(const BandlimitedField& field,
                        const std::vector<CrossingRecord>& records) {
  double worst = 0.0;
  for (const CrossingRecord& r : records) {
    worst = std::max(worst, std::abs(field(r.midpoint_t) - r.value_estimate));
  }
  return worst;
}

// Reconstructs from crossing records with the configured engine and returns
// the sup error over the region of interest.
double crossing_distortion(const BandlimitedField& field,
                           std::vector<CrossingRecord> records, int k,
                           int Lprime, const PipelineOptions& o) {
  if (o.exact_values) {
    for (CrossingRecord& r : records) r.value_estimate = field(r.midpoint_t);
  }
  const Region roi = interior_region(o.L, o.lambda);
  const std::vector<double> grid = make_grid(roi, grid_step(k, o.lambda));
  ReconstructionResult r =
      o.engine == Engine::kLagrange
          ? reconstruct_lagrange(records, o.L, Lprime, o.lambda, grid)
          : reconstruct_nonuniform_ls(records, o.lambda, o.L + Lprime + o.ls_extra,
                                      grid);
  return sup_distortion(field, r, roi);
}

double mean_D(const std::vector<RunOutcome>& runs) {
  double sum = 0.0;
  for (const RunOutcome& r : runs) sum += r.D;
  return sum / static_cast<double>(runs.size());
}

double max_D(const std::vector<RunOutcome>& runs) {
  double worst = 0.0;
  for (const RunOutcome& r : runs) worst = std::max(worst, r.D);
  return worst;
}

}  // namespace

std::string to_string(Engine engine) {
  return engine == Engine::kLagrange ? "lagrange" : "least-squares";
}

Engine engine_from_string(const std::string& name) {
  if (name == "lagrange") return Engine::kLagrange;
  if (name == "least-squares" || name == "ls") return Engine::kLeastSquares;
  throw ParameterError("unknown engine '" + name + "'");
}

BandlimitedField FieldSource::make(std::uint64_t seed) const {
  if (kind == FieldKind::kDeterministic) {
    return synth_deterministic(params, L_terms, seed);
  }
  const double span =
      duration > 0.0 ? duration
                     : 2.0 * (L + kNyquistGuard + kPathSlack) / params.lambda;
  return synth_field(kind, params, span, seed);
}

FieldSource default_source(FieldKind kind, double lambda, int L) {
  FieldSource s;
  s.kind = kind;
  s.params = FieldParams::defaults_for(kind);
  s.params.lambda = lambda;
  s.L = L;
  return s;
}

RunOutcome run_nyquist(const BandlimitedField& field, int k,
                       const PipelineOptions& o) {
  const IntervalWindow window{-(o.L + kNyquistGuard), o.L + kNyquistGuard};
  const NyquistSamples s = sample_nyquist(field, k, window);
  const Region roi = interior_region(o.L, o.lambda);
  const std::vector<double> grid = make_grid(roi, grid_step(k, o.lambda));
  const ReconstructionResult r =
      reconstruct_uniform(quantized_samples(s), KernelSpec::stable(o.lambda), grid);
  RunOutcome out;
  out.D = sup_distortion(field, r, roi);
  out.N = 1;
  out.records = static_cast<int>(s.size());
  out.clamped = s.clamped;
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.max_sample_error =
        std::max(out.max_sample_error, std::abs(s.exact[i] - s.reproduction[i]));
  }
  out.sample_error_bound = std::ldexp(1.0, -k);
  return out;
}

RunOutcome run_one_bit(const BandlimitedField& field, int k, int Lprime,
                       const PipelineOptions& o) {
  const DitherSpec dither = one_bit_dither(o);
  const IntervalWindow window = IntervalWindow::symmetric(o.L + Lprime);
  const SignMatrix signs = sample_dithered_1bit(field, dither, k, window);
  std::vector<CrossingRecord> records = detect_zero_crossings(signs, dither);
  RunOutcome out;
  out.N = signs.array.N;
  out.Lprime = Lprime;
  out.records = static_cast<int>(records.size());
  out.max_sample_error = max_sample_error(field, records);
  out.sample_error_bound = one_bit_error_bound(dither, k);
  out.D = crossing_distortion(field, std::move(records), k, Lprime, o);
  return out;
}

RunOutcome run_bbit(const BandlimitedField& field, int k, int b, int Lprime,
                    const PipelineOptions& o) {
  const double c = o.c > 0.0 ? o.c : default_bbit_c();
  const DitherSpec dither = make_bbit_dither(one_bit_dither(o), b, k, c);
  const IntervalWindow window = IntervalWindow::symmetric(o.L + Lprime);
  const IndexMatrix idx = sample_dithered_bbit(field, dither, k, b, window);
  std::vector<CrossingRecord> records = detect_level_crossings(idx, dither);
  RunOutcome out;
  out.N = idx.array.N;
  out.Lprime = Lprime;
  out.records = static_cast<int>(records.size());
  out.max_sample_error = max_sample_error(field, records);
  out.sample_error_bound = bbit_error_bound(dither, k);
  out.D = crossing_distortion(field, std::move(records), k, Lprime, o);
  return out;
}

RunOutcome run_bit_split(const BandlimitedField& field, int k, int b,
                         int Lprime, const PipelineOptions& o) {
  require(b >= 1 && b <= k, "bit split needs 1 <= b <= k");
  if (b == 1) return run_one_bit(field, k, Lprime, o);
  if (b == k) return run_nyquist(field, k, o);
  return run_bbit(field, k, b, Lprime, o);
}

std::vector<RunOutcome> parallel_trials(int n,
                                        const std::function<RunOutcome(int)>& fn) {
  std::vector<RunOutcome> out(n);
  std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::uint64_t> seed_range(std::uint64_t seed0, int count) {
  std::vector<std::uint64_t> seeds(count);
  for (int i = 0; i < count; ++i) seeds[i] = seed0 + static_cast<std::uint64_t>(i);
  return seeds;
}

BudgetRow bit_budget_row(int k, int b, double lambda) {
  require(k >= 1 && b >= 1 && b <= k, "budget row needs 1 <= b <= k");
  BudgetRow row;
  row.b = b;
  if (b == 1) {
    row.sensors = 1 << k;
    row.R_NQ = k;
  } else if (b == k) {
    row.sensors = 1;
    row.R_NQ = k;
  } else {
    row.sensors = 1 << (k - b + 1);
    row.R_NQ = k + 1;
  }
  row.R = row.R_NQ * lambda;
  return row;
}

int sweep_Lprime(int k_max, double lambda) {
  return choose_Lprime(1 << k_max, lambda) + 2;
}

std::vector<RateDistortionPoint> sweep_rd(Scheme scheme, std::span<const int> k_list,
                                          int b, const FieldSource& source,
                                          std::span<const std::uint64_t> seeds,
                                          const PipelineOptions& o) {
  require(!k_list.empty() && !seeds.empty(), "sweep needs k values and seeds");
  const int k_max = *std::max_element(k_list.begin(), k_list.end());
  const int Lprime = scheme == Scheme::kNyquist ? 0 : sweep_Lprime(k_max, o.lambda);
  std::vector<RateDistortionPoint> points;
  for (int k : k_list) {
    const int split = scheme == Scheme::kNyquist ? k : scheme == Scheme::kOneBit ? 1 : b;
    const BudgetRow row = bit_budget_row(k, split, o.lambda);
    const auto runs = parallel_trials(static_cast<int>(seeds.size()), [&](int i) {
      return run_bit_split(source.make(seeds[i]), k, split, Lprime, o);
    });
    RateDistortionPoint p;
    p.scheme = scheme;
    p.k = k;
    p.b = split;
    p.N = row.sensors;
    p.L = o.L;
    p.Lprime = Lprime;
    p.R = row.R;
    p.R_NQ = row.R_NQ;
    p.R_net = 2.0 * (o.L + Lprime) * row.R_NQ;
    p.R_sensor = row.R_NQ / row.sensors;
    p.D = mean_D(runs);
    p.D_max = max_D(runs);
    p.trials = static_cast<int>(runs.size());
    points.push_back(p);
  }
  return points;
}

double rd_slope(const std::vector<RateDistortionPoint>& points) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) x.push_back(p.R), y.push_back(std::log2(p.D));
  return fit_line(x, y).slope;
}

double rd_exponent_in_N(const std::vector<RateDistortionPoint>& points) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& p : points) x.push_back(std::log2(p.N)), y.push_back(std::log2(p.D));
  return fit_line(x, y).slope;
}

std::vector<FiniteWindowPoint> finite_window_sweep(
    const FieldSource& source, std::span<const std::uint64_t> seeds, int k,
    std::span<const int> Lprime_list, const PipelineOptions& o) {
  require(!seeds.empty(), "finite-window sweep needs seeds");
  std::vector<BandlimitedField> fields;
  for (std::uint64_t s : seeds) fields.push_back(source.make(s));
  std::vector<FiniteWindowPoint> points;
  for (int Lp : Lprime_list) {
    const auto runs = parallel_trials(static_cast<int>(fields.size()), [&](int i) {
      return run_one_bit(fields[i], k, Lp, o);
    });
    FiniteWindowPoint p;
    p.N = 1 << k;
    p.Lprime = Lp;
    p.D = mean_D(runs);
    p.D_max = max_D(runs);
    p.bound_first_term = lagrange_error_bound(Lp, o.lambda, p.N, 0.0);
    points.push_back(p);
  }
  return points;
}

double decay_ratio(const std::vector<FiniteWindowPoint>& points, double floor) {
  std::vector<double> x;
  std::vector<double> y;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].D <= floor) break;
    if (i > 0 && points[i].D >= points[i - 1].D) break;
    x.push_back(points[i].Lprime);
    y.push_back(std::log2(points[i].D));
  }
  require(x.size() >= 2, "fewer than two points above the floor");
  return std::exp2(fit_line(x, y).slope);
}

std::vector<TwoDimPoint> twodim_sweep(std::span<const int> k_list, int Lprime,
                                      std::span<const std::uint64_t> seeds,
                                      const PipelineOptions& o) {
  require(!seeds.empty(), "2-D sweep needs seeds");
  FieldParams params;
  params.lambda = o.lambda;
  std::vector<SeparableField2D> fields;
  for (std::uint64_t s : seeds) {
    fields.push_back({synth_deterministic(params, 16, s),
                      synth_deterministic(params, 16, s ^ kVerticalSeedSalt)});
  }
  const Region roi = interior_region(o.L, o.lambda);
  const std::vector<double> y_grid = make_grid(roi, 0.25 / o.lambda);
  std::vector<TwoDimPoint> points;
  for (int k : k_list) {
    SliceOptions so;
    so.k = k;
    so.lambda_x = o.lambda;
    so.lambda_y = o.lambda;
    so.gamma = o.gamma;
    so.L = o.L;
    so.Lprime = Lprime;
    const std::vector<double> x_grid = make_grid(roi, grid_step(k, o.lambda));
    TwoDimPoint p;
    p.N = 1 << k;
    for (const auto& f : fields) {
      const Reconstruction2D r = slice_reconstruct_2d(f, so, x_grid, y_grid);
      p.D += r.sup_error / fields.size();
      p.line_D += r.line_sup_error / fields.size();
    }
    points.push_back(p);
  }
  return points;
}

}  // namespace distsamp
