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

#include "distsamp/dither.hpp"

#include <algorithm>
#include <cmath>

namespace distsamp {
namespace {

// Validation scans this many Nyquist intervals on each side of zero.
constexpr int kValidationIntervals = 8;
constexpr double kSlopeRelTol = 1e-6;

}  // namespace

std::string to_string(DitherKind kind) {
  switch (kind) {
    case DitherKind::kCosine:
      return "cosine";
    case DitherKind::kTriangular:
      return "triangular";
    case DitherKind::kBbit:
      return "bbit";
  }
  return "unknown";
}

DitherKind dither_kind_from_string(const std::string& name) {
  if (name == "cosine") return DitherKind::kCosine;
  if (name == "triangular") return DitherKind::kTriangular;
  if (name == "bbit") return DitherKind::kBbit;
  throw ParameterError("unknown dither kind '" + name + "'");
}

double eval_one_bit(DitherKind kind, double gamma, double lambda, double t) {
  if (kind == DitherKind::kCosine) return gamma * std::cos(lambda * kPi * t);
  // Phase in [0, 2): falling from +gamma on [0, 1], rising on [1, 2].
  double u = std::fmod(lambda * t, 2.0);
  if (u < 0.0) u += 2.0;
  return u <= 1.0 ? gamma * (1.0 - 2.0 * u) : gamma * (2.0 * u - 3.0);
}

double DitherSpec::operator()(double t) const {
  if (kind != DitherKind::kBbit) return eval_one_bit(kind, gamma, lambda, t);
  // Points computed as l/lambda + m tau may land a rounding error short of
  // the section start; snap them onto it.
  const double l = std::floor(lambda * t + 1e-9);
  const double s = t - l / lambda;
  const double amp = section_amplitude();
  if (s > active_width_B0) return -amp;
  const double arg = s / (lambda * active_width_B0);
  return amp / gamma * eval_one_bit(base_kind, gamma, lambda, arg);
}

double eval(const DitherSpec& d, double t) { return d(t); }

DitherSpec make_cosine_dither(double gamma, double lambda) {
  require(gamma > 1.0, "dither gamma must exceed 1");
  require(lambda > 1.0, "lambda must exceed 1");
  DitherSpec d;
  d.kind = DitherKind::kCosine;
  d.gamma = gamma;
  d.lambda = lambda;
  d.Delta = gamma * lambda * kPi;
  return d;
}

DitherSpec make_triangular_dither(double gamma, double lambda) {
  require(gamma > 1.0, "dither gamma must exceed 1");
  require(lambda > 1.0, "lambda must exceed 1");
  require(2.0 * gamma * lambda > kPi,
          "triangular dither needs 2 gamma lambda > pi for a unique crossing");
  DitherSpec d;
  d.kind = DitherKind::kTriangular;
  d.gamma = gamma;
  d.lambda = lambda;
  d.Delta = 2.0 * gamma * lambda;
  return d;
}

double bbit_c_threshold() { return (1.0 + kPi) / 4.0; }

double default_bbit_c() { return 1.05 * bbit_c_threshold(); }

DitherSpec make_bbit_dither(const DitherSpec& base, int b, int k, double c) {
  require(base.one_bit(), "b-bit dither needs a one-bit base dither");
  require(base.gamma > 1.0 && base.lambda > 1.0, "invalid base dither");
  require(b > 1 && b < k, "b-bit dither needs 1 < b < k");
  require(k < 31, "k too large");
  require(c > bbit_c_threshold(), "scale constant c must exceed (1 + pi)/4");
  DitherSpec d;
  d.kind = DitherKind::kBbit;
  d.base_kind = base.kind;
  d.base_Delta = base.Delta;
  d.gamma = base.gamma;
  d.lambda = base.lambda;
  d.b = b;
  d.k = k;
  d.c = c;
  d.M = 1 << (b - 1);
  d.tau = 1.0 / (base.lambda * std::ldexp(1.0, k));
  d.active_width_B0 = 1.0 / (d.M * base.lambda) - d.tau;
  d.Delta = base.Delta * (2.0 * c / (d.M * base.gamma)) /
            (base.lambda * d.active_width_B0);
  return d;
}

double bbit_slope_bound(const DitherSpec& d) {
  return 4.0 * d.c * d.base_Delta / d.gamma;
}

bool DitherReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyCheck& p) { return p.passed; });
}

double max_fd_slope(const DitherSpec& d, double lo, double hi, double h) {
  double best = 0.0;
  const auto n = static_cast<long>(std::floor((hi - lo) / h));
  for (long i = 1; i < n; ++i) {
    const double t = lo + static_cast<double>(i) * h;
    best = std::max(best, std::abs(d(t + h) - d(t - h)) / (2.0 * h));
  }
  return best;
}

DitherReport validate_dither(const DitherSpec& d, double lambda) {
  DitherReport report;
  PropertyCheck level{"nyquist_level", true, 0.0, 0.0};
  PropertyCheck alternation{"sign_alternation", true, 0.0, 0.0};
  PropertyCheck slope{"slope_bound", true, 0.0, 0.0};

  if (d.one_bit()) {
    double weakest = INFINITY;
    // Visit 0, 1, -1, 2, -2, ... so witnesses sit closest to the origin.
    for (int i = 0; i <= 2 * kValidationIntervals; ++i) {
      const int l = (i % 2 == 1) ? (i + 1) / 2 : -(i / 2);
      const double t = l / lambda;
      const double v = d(t);
      // Witness is the first point attaining the smallest |d|.
      if (std::abs(v) < weakest) {
        weakest = std::abs(v);
        level.witness_t = t;
        level.witness_value = v;
      }
      const double next = d((l + 1) / lambda);
      if (alternation.passed && !(v * next < 0.0)) {
        alternation = {alternation.name, false, t, next};
      }
    }
    level.passed = weakest > 1.0;
  } else {
    // Section endpoints must straddle every admissible slope of f.
    const double amp = d.section_amplitude();
    for (int l = -kValidationIntervals; l <= kValidationIntervals; ++l) {
      const double start = l / lambda;
      const double end = start + d.active_width_B0;
      const double vs = d(start);
      const double ve = d(end);
      if (level.passed &&
          !(std::abs(vs - amp) <= 1e-12 && amp > (1.0 + kPi) / (2.0 * d.M))) {
        level = {level.name, false, start, vs};
      }
      if (alternation.passed && !(std::abs(ve + amp) <= 1e-12)) {
        alternation = {alternation.name, false, end, ve};
      }
    }
    if (level.passed) level.witness_value = amp;
    if (alternation.passed) alternation.witness_value = -amp;
  }

  const double lo = -kValidationIntervals / lambda;
  const double hi = kValidationIntervals / lambda;
  double best = 0.0;
  double best_t = lo;
  auto scan = [&](double a, double b, double h) {
    const auto n = static_cast<long>(std::floor((b - a) / h));
    for (long i = 1; i < n; ++i) {
      const double t = a + static_cast<double>(i) * h;
      const double s = std::abs(d(t + h) - d(t - h)) / (2.0 * h);
      if (s > best) best = s, best_t = t;
    }
  };
  if (d.kind == DitherKind::kBbit) {
    // The constant fill between sections jumps back at each section start;
    // the slope bound only concerns the open active sections.
    for (int l = -kValidationIntervals; l < kValidationIntervals; ++l) {
      scan(l / lambda, l / lambda + d.active_width_B0, d.tau / 64.0);
    }
  } else {
    scan(lo, hi, 1e-5 / lambda);
  }
  report.measured_Delta = best;
  slope.witness_t = best_t;
  slope.witness_value = best;
  slope.passed = best <= d.Delta * (1.0 + kSlopeRelTol);

  report.properties = {level, alternation, slope};
  return report;
}

}  // namespace distsamp
