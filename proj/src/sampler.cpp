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

#include "distsamp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace distsamp {
namespace {

void check_window(IntervalWindow window) {
  require(window.count() > 0, "sampling window is empty");
}

CrossingRecord zero_crossing_record(const SensorArray& a, int row, int m,
                                    const DitherSpec& dither) {
  CrossingRecord rec;
  rec.interval_l = a.window.first + row;
  rec.sensor_m = m;
  rec.midpoint_t = a.location(rec.interval_l, m) + 0.5 * a.tau;
  rec.level_q = 0.0;
  rec.value_estimate = -dither(rec.midpoint_t);
  return rec;
}

}  // namespace

SensorArray make_one_bit_array(int k, double lambda, IntervalWindow window) {
  require(k >= 1 && k <= 24, "one-bit arrays need 1 <= k <= 24");
  require(lambda > 1.0, "lambda must exceed 1");
  check_window(window);
  SensorArray a;
  a.N = 1 << k;
  a.b = 1;
  a.k = k;
  a.lambda = lambda;
  a.tau = 1.0 / (lambda * std::ldexp(1.0, k));
  a.window = window;
  return a;
}

SensorArray make_bbit_array(int k, int b, double lambda, IntervalWindow window) {
  require(b > 1 && b < k, "b-bit arrays need 1 < b < k");
  SensorArray a = make_one_bit_array(k, lambda, window);
  a.N = 1 << (k - b + 1);
  a.b = b;
  return a;
}

QuantizedValue quantize_uniform(double z, int k) {
  require(k >= 1 && k <= 52, "quantizer needs 1 <= k <= 52");
  QuantizedValue q;
  if (std::abs(z) > 1.0) {
    q.clamped = true;
    z = std::clamp(z, -1.0, 1.0);
  }
  const double cells = std::ldexp(1.0, k);
  const double width = 2.0 / cells;
  const long top = static_cast<long>(cells) - 1;
  q.cell_index =
      std::clamp(static_cast<long>(std::floor((z + 1.0) * cells / 2.0)), 0L, top);
  q.reproduction = -1.0 + (static_cast<double>(q.cell_index) + 0.5) * width;
  return q;
}

NyquistSamples sample_nyquist(const BandlimitedField& field, int k,
                              IntervalWindow window) {
  check_window(window);
  NyquistSamples s;
  s.lambda = field.params.lambda;
  s.k = k;
  s.first_index = window.first;
  s.rate_R = k * s.lambda;
  const int n = window.count();
  s.exact.resize(n);
  s.reproduction.resize(n);
  for (int i = 0; i < n; ++i) {
    s.exact[i] = field(s.location(i));
    const QuantizedValue q = quantize_uniform(s.exact[i], k);
    s.reproduction[i] = q.reproduction;
    s.clamped += q.clamped ? 1 : 0;
  }
  return s;
}

SignMatrix sample_dithered_1bit(const BandlimitedField& field,
                                const DitherSpec& dither, int k,
                                IntervalWindow window) {
  require(dither.one_bit(), "one-bit sampling needs a one-bit dither");
  SignMatrix s;
  s.array = make_one_bit_array(k, field.params.lambda, window);
  const SensorArray& a = s.array;
  const int rows = a.window.count();
  s.data.resize(static_cast<std::size_t>(rows) * a.N);
  auto sign_at = [&](double t) -> std::int8_t {
    return field(t) + dither(t) >= 0.0 ? 1 : -1;
  };
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    for (int m = 0; m < a.N; ++m) {
      s.data[static_cast<std::size_t>(r) * a.N + m] =
          sign_at(a.location(a.window.first + r, m));
    }
  }
  s.next_first = sign_at(a.location(a.window.last + 1, 0));
  return s;
}

int count_sign_changes(const SignMatrix& signs, int row) {
  int changes = 0;
  for (int m = 0; m + 1 < signs.cols(); ++m) {
    changes += signs.at(row, m) != signs.at(row, m + 1) ? 1 : 0;
  }
  changes += signs.at(row, signs.cols() - 1) != signs.successor(row) ? 1 : 0;
  return changes;
}

std::vector<CrossingRecord> detect_zero_crossings(const SignMatrix& signs,
                                                  const DitherSpec& dither) {
  const SensorArray& a = signs.array;
  std::vector<CrossingRecord> out;
  out.reserve(signs.rows());
  for (int r = 0; r < signs.rows(); ++r) {
    int found = -1;
    for (int m = 0; m + 1 < a.N; ++m) {
      if (signs.at(r, m) != signs.at(r, m + 1)) {
        found = m;
        break;
      }
    }
    if (found < 0) {
      if (signs.at(r, a.N - 1) == signs.successor(r)) {
        throw ProtocolError("no sign change in interval " +
                            std::to_string(a.window.first + r));
      }
      found = a.N - 1;
    }
    out.push_back(zero_crossing_record(a, r, found, dither));
  }
  return out;
}

std::int32_t bbit_cell(double v, int M) {
  const double idx = std::floor(v * M);
  return static_cast<std::int32_t>(std::clamp(idx, -double(M), double(M - 1)));
}

IndexMatrix sample_dithered_bbit(const BandlimitedField& field,
                                 const DitherSpec& dither_b, int k, int b,
                                 IntervalWindow window) {
  require(dither_b.kind == DitherKind::kBbit, "b-bit sampling needs a b-bit dither");
  require(dither_b.b == b && dither_b.k == k,
          "dither was built for a different (b, k)");
  IndexMatrix s;
  s.array = make_bbit_array(k, b, field.params.lambda, window);
  const SensorArray& a = s.array;
  const int rows = a.window.count();
  s.data.resize(static_cast<std::size_t>(rows) * a.N);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < rows; ++r) {
    for (int m = 0; m < a.N; ++m) {
      const double t = a.location(a.window.first + r, m);
      s.data[static_cast<std::size_t>(r) * a.N + m] =
          bbit_cell(field(t) + dither_b(t), dither_b.M);
    }
  }
  const double t_next = a.location(a.window.last + 1, 0);
  s.next_first = bbit_cell(field(t_next) + dither_b(t_next), dither_b.M);
  return s;
}

IndexMatrix indices_from_signs(const SignMatrix& signs) {
  IndexMatrix out;
  out.array = signs.array;
  out.data.resize(signs.data.size());
  std::transform(signs.data.begin(), signs.data.end(), out.data.begin(),
                 [](std::int8_t s) { return s > 0 ? 0 : -1; });
  out.next_first = signs.next_first > 0 ? 0 : -1;
  return out;
}

std::vector<CrossingRecord> detect_level_crossings(const IndexMatrix& indices,
                                                   const DitherSpec& dither) {
  const SensorArray& a = indices.array;
  const int M = dither.one_bit() ? 1 : dither.M;
  std::vector<CrossingRecord> out;
  out.reserve(indices.rows());
  for (int r = 0; r < indices.rows(); ++r) {
    const int l = a.window.first + r;
    int found = -1;
    std::int32_t left = 0;
    std::int32_t right = 0;
    for (int m = 0; m + 1 < a.N; ++m) {
      if (indices.at(r, m) != indices.at(r, m + 1)) {
        found = m;
        left = indices.at(r, m);
        right = indices.at(r, m + 1);
        break;
      }
    }
    if (found < 0 && a.tiles_interval() &&
        indices.at(r, a.N - 1) != indices.successor(r)) {
      found = a.N - 1;
      left = indices.at(r, a.N - 1);
      right = indices.successor(r);
    }
    if (found < 0) {
      throw ProtocolError("no level crossing in interval " + std::to_string(l));
    }
    CrossingRecord rec;
    rec.interval_l = l;
    rec.sensor_m = found;
    rec.midpoint_t = a.location(l, found) + 0.5 * a.tau;
    rec.level_q = (right > left ? left + 1 : left) / static_cast<double>(M);
    rec.value_estimate = rec.level_q - dither(rec.midpoint_t);
    out.push_back(rec);
  }
  return out;
}

ProtocolOutcome run_local_protocol(const SignMatrix& signs, int row,
                                   const DitherSpec& dither) {
  const SensorArray& a = signs.array;
  require(row >= 0 && row < signs.rows(), "row outside the sign matrix");
  // Message from sensor m - 1 to sensor m: (found, sign of sensor m - 1).
  bool found = false;
  std::int8_t prev = signs.at(row, 0);
  int claimed = -1;
  int bits = 0;
  for (int m = 1; m < a.N; ++m) {
    bits += 2;
    const std::int8_t own = signs.at(row, m);
    if (!found && own != prev) {
      found = true;
      claimed = m - 1;
    }
    prev = own;
  }
  if (!found) {
    // The last sensor compares against the next interval's first reading,
    // which it hears as part of the neighbouring pass.
    if (prev == signs.successor(row)) {
      throw ProtocolError("no sign change in interval " +
                          std::to_string(a.window.first + row));
    }
    claimed = a.N - 1;
  }
  return {zero_crossing_record(a, row, claimed, dither), bits};
}

double one_bit_error_bound(const DitherSpec& dither, int k) {
  return (kPi + dither.Delta) / (2.0 * dither.lambda) * std::ldexp(1.0, -k);
}

double bbit_error_bound(const DitherSpec& dither_b, int k) {
  return (kPi + dither_b.Delta) / dither_b.lambda * std::ldexp(1.0, -k);
}

CrossingGeometry crossing_geometry(const std::vector<CrossingRecord>& records,
                                   double lambda) {
  CrossingGeometry g;
  g.min_gap = INFINITY;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const CrossingRecord& rec = records[i];
    g.max_offset = std::max(g.max_offset, rec.midpoint_t - rec.interval_l / lambda);
    if (i > 0) {
      g.min_gap = std::min(g.min_gap, rec.midpoint_t - records[i - 1].midpoint_t);
    }
  }
  return g;
}

}  // namespace distsamp
