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

// Dither fields added to the unknown field before coarse quantization.
//
// One-bit dithers take the value +-gamma at the points l/lambda with
// alternating sign, so f + d changes sign inside every Nyquist interval when
// |f| <= 1 < gamma. The b-bit dither compresses a one-bit dither into the
// leftmost active section of each interval and scales it so that f + d_b
// crosses at least one level j/M of a b-bit quantizer there.

#ifndef DISTSAMP_DITHER_HPP_
#define DISTSAMP_DITHER_HPP_

#include <string>
#include <vector>

#include "distsamp/common.hpp"

namespace distsamp {

enum class DitherKind { kCosine, kTriangular, kBbit };

std::string to_string(DitherKind kind);
DitherKind dither_kind_from_string(const std::string& name);

struct DitherSpec {
  DitherKind kind = DitherKind::kTriangular;
  double gamma = 1.1;
  // Maximum slope magnitude of d (the b-bit kind stores its own slope).
  double Delta = 0.0;
  int b = 1;
  double c = 0.0;
  double lambda = 2.0;
  int M = 1;
  // b-bit only.
  int k = 0;
  double tau = 0.0;
  double active_width_B0 = 0.0;
  DitherKind base_kind = DitherKind::kTriangular;
  double base_Delta = 0.0;

  double operator()(double t) const;

  bool one_bit() const { return kind != DitherKind::kBbit; }
  // 2c / M, the b-bit dither value at each section start.
  double section_amplitude() const { return 2.0 * c / M; }
};

/// Dither value at t; same as d(t).
double eval(const DitherSpec& d, double t);

/// Base one-bit dither shape at t, ignoring the b-bit fields.
double eval_one_bit(DitherKind kind, double gamma, double lambda, double t);

DitherSpec make_cosine_dither(double gamma, double lambda);
DitherSpec make_triangular_dither(double gamma, double lambda);

/// Scaled copy of `base` on [l/lambda, l/lambda + B0] for every l, where
/// B0 = 1/(M lambda) - tau, M = 2^(b-1), tau = 1/(lambda 2^k). Constant
/// -2c/M elsewhere.
DitherSpec make_bbit_dither(const DitherSpec& base, int b, int k, double c);

/// Smallest admissible scale constant for b-bit dithers, (1 + pi) / 4.
double bbit_c_threshold();
/// Default scale constant, 1.05 times the threshold.
double default_bbit_c();

/// Upper bound on the b-bit dither slope, 4 c Delta_base / gamma.
double bbit_slope_bound(const DitherSpec& d);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  // Location of the first violation, or of the extreme value when passing.
  double witness_t = 0.0;
  double witness_value = 0.0;
};

struct DitherReport {
  std::vector<PropertyCheck> properties;
  double measured_Delta = 0.0;

  bool all_passed() const;
};

/// Checks the three dither properties on several periods: |d| > 1 at the
/// points l/lambda, alternating sign there, and finite-difference slope
/// bounded by Delta. For b-bit dithers the first two become: section
/// endpoints equal +-2c/M, and 2c/M exceeds the threshold (1+pi)/(2M), and
/// the slope is only scanned inside the active sections.
/// Reports rather than throws.
DitherReport validate_dither(const DitherSpec& d, double lambda);

/// Largest central-difference slope of d on [lo, hi] with step h.
double max_fd_slope(const DitherSpec& d, double lo, double hi, double h);

}  // namespace distsamp

#endif  // DISTSAMP_DITHER_HPP_
