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

// End-to-end pipelines: field -> sensors -> reconstruction -> distortion.

#ifndef DISTSAMP_EXPERIMENTS_HPP_
#define DISTSAMP_EXPERIMENTS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "distsamp/coding_net.hpp"
#include "distsamp/dither.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/fitting.hpp"
#include "distsamp/reconstruct.hpp"
#include "distsamp/sampler.hpp"

namespace distsamp {

enum class Engine { kLagrange, kLeastSquares };

std::string to_string(Engine engine);
Engine engine_from_string(const std::string& name);

/// Extra Nyquist samples on each side of the region of interest for the
/// uniform engine; the kernel sum reaches 40 samples out.
inline constexpr int kNyquistGuard = 41;

/// Ensemble of test fields addressed by seed.
struct FieldSource {
  FieldKind kind = FieldKind::kDeterministic;
  FieldParams params;
  int L_terms = 16;
  // Path duration for stationary kinds; 0 picks one covering every sensor
  // the pipelines use for region half-width L.
  double duration = 0.0;
  int L = 4;

  BandlimitedField make(std::uint64_t seed) const;
};

FieldSource default_source(FieldKind kind, double lambda, int L);

struct PipelineOptions {
  double lambda = 2.0;
  double gamma = 1.1;
  double c = 0.0;  // 0 selects default_bbit_c()
  int L = 4;
  DitherKind dither = DitherKind::kTriangular;
  Engine engine = Engine::kLagrange;
  // Least-squares basis reaches this many intervals past the window.
  int ls_extra = 4;
  // Replace crossing estimates by exact field values at the midpoints.
  bool exact_values = false;
};

struct RunOutcome {
  double D = 0.0;
  int N = 1;
  int Lprime = 0;
  int records = 0;
  double max_sample_error = 0.0;
  double sample_error_bound = 0.0;
  int clamped = 0;
};

RunOutcome run_nyquist(const BandlimitedField& field, int k,
                       const PipelineOptions& o);
RunOutcome run_one_bit(const BandlimitedField& field, int k, int Lprime,
                       const PipelineOptions& o);
RunOutcome run_bbit(const BandlimitedField& field, int k, int b, int Lprime,
                    const PipelineOptions& o);

/// b = 1 runs one-bit, b = k runs Nyquist, otherwise b-bit.
RunOutcome run_bit_split(const BandlimitedField& field, int k, int b,
                         int Lprime, const PipelineOptions& o);

/// Evaluates fn(0..n-1) on the worker pool; results are stored by index so
/// the output never depends on scheduling.
std::vector<RunOutcome> parallel_trials(int n,
                                        const std::function<RunOutcome(int)>& fn);

/// Seeds seed0, seed0 + 1, ...
std::vector<std::uint64_t> seed_range(std::uint64_t seed0, int count);

struct BudgetRow {
  int b = 1;
  int sensors = 1;  // per Nyquist interval
  double R = 0.0;   // bits per unit length
  double R_NQ = 0.0;
};

/// Sensor count and rate for splitting a budget of k bits into b-bit ADCs.
BudgetRow bit_budget_row(int k, int b, double lambda);

/// Fixed window extension used by the rate sweeps: two past the value chosen
/// for the largest N so the truncation term stays below the quantization term.
int sweep_Lprime(int k_max, double lambda);

/// Rate-distortion sweep over k for one scheme; one point per k.
std::vector<RateDistortionPoint> sweep_rd(Scheme scheme, std::span<const int> k_list,
                                          int b, const FieldSource& source,
                                          std::span<const std::uint64_t> seeds,
                                          const PipelineOptions& o);

/// Slope of log2 D against R over the points.
double rd_slope(const std::vector<RateDistortionPoint>& points);
/// Slope of log2 D against log2 N over the points.
double rd_exponent_in_N(const std::vector<RateDistortionPoint>& points);

struct FiniteWindowPoint {
  int N = 0;
  int Lprime = 0;
  double D = 0.0;  // mean over seeds
  double D_max = 0.0;
  double bound_first_term = 0.0;
};

/// One-bit Lagrange reconstruction for each L' at fixed N.
std::vector<FiniteWindowPoint> finite_window_sweep(
    const FieldSource& source, std::span<const std::uint64_t> seeds, int k,
    std::span<const int> Lprime_list, const PipelineOptions& o);

/// Geometric per-step ratio of D over L', fitted on the points above
/// `floor`, stopping at the first point that fails to decrease.
double decay_ratio(const std::vector<FiniteWindowPoint>& points, double floor);

struct TwoDimPoint {
  int N = 0;
  double D = 0.0;
  double line_D = 0.0;
};

/// Separable field fx(x) fy(y) from two seeds; sup error for each N.
std::vector<TwoDimPoint> twodim_sweep(std::span<const int> k_list, int Lprime,
                                      std::span<const std::uint64_t> seeds,
                                      const PipelineOptions& o);

}  // namespace distsamp

#endif  // DISTSAMP_EXPERIMENTS_HPP_
