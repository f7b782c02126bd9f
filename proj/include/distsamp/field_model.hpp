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

// Amplitude-limited band-limited test fields.
//
// Every field is a finite expansion
//   f(t) = scale * sum_i coeffs[i] * K(t - (origin + i * spacing))
// with a kernel K whose spectrum lies inside [-W, W]. Deterministic fields use
// uniform random coefficients on the 1/lambda lattice; the two stationary
// constructions realize one sample path each over a finite duration.

#ifndef DISTSAMP_FIELD_MODEL_HPP_
#define DISTSAMP_FIELD_MODEL_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "distsamp/common.hpp"
#include "distsamp/kernel.hpp"

namespace distsamp {

enum class FieldKind { kDeterministic, kWssExample1, kWssExample2 };

std::string to_string(FieldKind kind);
FieldKind field_kind_from_string(const std::string& name);

struct FieldParams {
  double bandwidth_W = kPi;
  double amplitude_A = 1.0;
  double lambda = 2.0;
  double margin_delta = kPi / 2.0;

  /// Throws ParameterError unless lambda > 1 and all scales are positive.
  /// With `for_lagrange`, also requires lambda > pi/2.
  void validate(bool for_lagrange = false) const;

  /// Defaults for a field kind. Stationary paths use A = 1/(2 W^2), which
  /// caps the slope bound 2 A W^2 at one.
  static FieldParams defaults_for(FieldKind kind);
};

struct BandlimitedField {
  FieldKind kind = FieldKind::kDeterministic;
  FieldParams params;
  FieldKernel kernel;
  double origin = 0.0;
  double spacing = 1.0;
  std::vector<double> coeffs;
  int support_halfwidth_L = 0;
  double amplitude_scale = 1.0;
  std::uint64_t seed = 0;
  // Span over which the realization is meaningful and normalized.
  Region extent;

  double operator()(double t) const;

  double center(std::size_t i) const {
    return origin + static_cast<double>(i) * spacing;
  }
};

/// Field evaluation; a pure function of (field, t).
double eval(const BandlimitedField& field, double t);

/// Unnormalized deterministic field on the 1/lambda lattice,
/// coeffs[i] multiplying K(t - (i - L)/lambda) with L = (size - 1) / 2.
BandlimitedField deterministic_from_coefficients(const FieldParams& params,
                                                 std::vector<double> coeffs);

/// Random coefficients in [-1, 1] on 2 L_terms + 1 lattice points, rescaled
/// so the dense-grid sup of |f| is a target drawn from [0.7, 0.95] (times A).
BandlimitedField synth_deterministic(const FieldParams& params, int L_terms,
                                     std::uint64_t seed);

/// Number of input samples a filtered path of this duration consumes.
std::size_t wss_example1_input_size(const FieldParams& params, double duration);

/// Hard-limits `z` (sign(z) min(|z|, 1)) and filters it with the band kernel:
/// X(t) = (1/lambda) sum_n y_n K(t - n/lambda). Unnormalized.
BandlimitedField wss_example1_from_input(const FieldParams& params,
                                         double duration,
                                         std::span<const double> z);

/// One path of the hard-limited Gaussian construction, normalized.
BandlimitedField synth_wss_example1(const FieldParams& params, double duration,
                                    std::uint64_t seed);

/// Tail cut, in terms, for the Fejer-kernel construction.
inline constexpr int kFejerTailCut = 64;

std::size_t wss_example2_input_size(const FieldParams& params, double duration);

/// X(t) = sum_l y[l] psi(s t + l + theta) with psi = sinc^2 and
/// s = W / (2 pi), which places the spectrum inside [-W, W]. Unnormalized.
BandlimitedField wss_example2_from_sequence(const FieldParams& params,
                                            double duration,
                                            std::span<const double> y,
                                            double theta);

/// One path of the random-phase Fejer construction, normalized.
BandlimitedField synth_wss_example2(const FieldParams& params, double duration,
                                    std::uint64_t seed);

/// Dispatches on kind. `extent_or_terms` is L_terms for deterministic fields
/// and the duration for stationary paths.
BandlimitedField synth_field(FieldKind kind, const FieldParams& params,
                             double extent_or_terms, std::uint64_t seed);

/// Maximum of |f| over the grid region.lo + j * step inside `region`.
/// Returns exactly the dense-grid maximum; coarse cells that cannot hold it
/// (by the field's Bernstein slope bound) are skipped.
double dense_grid_sup(const BandlimitedField& field, Region region, double step);

/// Normalization grid step: 1e-3 in units of 1/lambda.
double normalization_step(const FieldParams& params);

/// Copy of `field` rescaled so its dense-grid sup over its extent equals
/// `target`. The zero field is returned unchanged.
BandlimitedField normalized(BandlimitedField field, double target);

}  // namespace distsamp

#endif  // DISTSAMP_FIELD_MODEL_HPP_
