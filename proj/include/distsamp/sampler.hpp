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

// Sensor arrays, quantizers and crossing detection.
//
// Sensors sit at l/lambda + m tau, tau = 1/(lambda 2^k). A one-bit array tiles
// each Nyquist interval with N = 2^k sensors; a b-bit array places
// N_b = 2^(k-b+1) sensors on the active section [l/lambda, l/lambda + B0].

#ifndef DISTSAMP_SAMPLER_HPP_
#define DISTSAMP_SAMPLER_HPP_

#include <cstdint>
#include <vector>

#include "distsamp/common.hpp"
#include "distsamp/dither.hpp"
#include "distsamp/field_model.hpp"

namespace distsamp {

struct SensorArray {
  int N = 0;  // sensors per interval
  int b = 1;
  int k = 0;
  double lambda = 2.0;
  double tau = 0.0;
  IntervalWindow window;

  double location(int l, int m) const { return l / lambda + m * tau; }
  // True when the sensors cover the whole interval (one-bit layout).
  bool tiles_interval() const { return N * tau * lambda > 1.0 - 1e-12; }
};

SensorArray make_one_bit_array(int k, double lambda, IntervalWindow window);
SensorArray make_bbit_array(int k, int b, double lambda, IntervalWindow window);

/// Interval-by-sensor reading matrix. Row r holds interval window.first + r.
/// `next_first` is the reading of the first sensor of the interval after the
/// window, which closes the last interval of a one-bit array.
template <typename T>
struct SensorMatrix {
  SensorArray array;
  std::vector<T> data;
  T next_first{};

  int rows() const { return array.window.count(); }
  int cols() const { return array.N; }
  T at(int row, int m) const { return data[static_cast<std::size_t>(row) * cols() + m]; }
  // Reading that follows the last sensor of `row`.
  T successor(int row) const {
    return row + 1 < rows() ? at(row + 1, 0) : next_first;
  }
};

using SignMatrix = SensorMatrix<std::int8_t>;
using IndexMatrix = SensorMatrix<std::int32_t>;

struct CrossingRecord {
  int interval_l = 0;
  int sensor_m = 0;
  double midpoint_t = 0.0;
  double level_q = 0.0;
  double value_estimate = 0.0;

  bool operator==(const CrossingRecord&) const = default;
};

struct QuantizedValue {
  long cell_index = 0;
  double reproduction = 0.0;
  // Input had |z| > 1 and was clamped.
  bool clamped = false;
};

/// k-bit mid-rise quantizer on [-1, 1]: 2^k equal cells, cell-midpoint
/// reproduction, ties at cell edges go to the upper cell.
QuantizedValue quantize_uniform(double z, int k);

struct NyquistSamples {
  double lambda = 2.0;
  int k = 0;
  int first_index = 0;
  std::vector<double> exact;
  std::vector<double> reproduction;
  int clamped = 0;
  // Bits per unit length, k lambda.
  double rate_R = 0.0;

  double location(std::size_t i) const {
    return (first_index + static_cast<double>(i)) / lambda;
  }
  std::size_t size() const { return reproduction.size(); }
};

/// Quantized samples at l / lambda for l in [window.first, window.last].
NyquistSamples sample_nyquist(const BandlimitedField& field, int k,
                              IntervalWindow window);

/// sign(f + d) at every one-bit sensor in the window; sign(0) = +1.
SignMatrix sample_dithered_1bit(const BandlimitedField& field,
                                const DitherSpec& dither, int k,
                                IntervalWindow window);

/// Number of sign changes along row `row`, including the step into the next
/// interval's first sensor.
int count_sign_changes(const SignMatrix& signs, int row);

/// First sign change per interval; value estimate -d(midpoint). An interval
/// without a change inside the row is closed by its successor; if that also
/// agrees, throws ProtocolError.
std::vector<CrossingRecord> detect_zero_crossings(const SignMatrix& signs,
                                                  const DitherSpec& dither);

/// Cell index floor(M v) clamped to [-M, M-1] of v = f + d_b at every b-bit
/// sensor. Adjacent indices differ exactly when a level j/M lies between.
IndexMatrix sample_dithered_bbit(const BandlimitedField& field,
                                 const DitherSpec& dither_b, int k, int b,
                                 IntervalWindow window);

/// Cell index of a b-bit sensor reading.
std::int32_t bbit_cell(double v, int M);

/// One-bit signs viewed as b = 1 cell indices (-1 below zero, 0 above).
IndexMatrix indices_from_signs(const SignMatrix& signs);

/// First adjacent pair with different cell indices; records the crossed
/// level next to the left cell and value q - d(midpoint). Throws
/// ProtocolError when a section holds no crossing.
std::vector<CrossingRecord> detect_level_crossings(const IndexMatrix& indices,
                                                   const DitherSpec& dither);

struct ProtocolOutcome {
  CrossingRecord record;
  int bits_exchanged = 0;
};

/// Left-to-right message pass along one interval. Each hop carries a found
/// flag and the sender's sign (2 bits); the first sensor that sees a change
/// claims the crossing.
ProtocolOutcome run_local_protocol(const SignMatrix& signs, int row,
                                   const DitherSpec& dither);

/// Sample-error bounds for the two crossing detectors.
double one_bit_error_bound(const DitherSpec& dither, int k);
double bbit_error_bound(const DitherSpec& dither_b, int k);

struct CrossingGeometry {
  double min_gap = 0.0;
  double max_offset = 0.0;
};

/// Smallest distance between consecutive midpoints and largest distance of a
/// midpoint from its interval start.
CrossingGeometry crossing_geometry(const std::vector<CrossingRecord>& records,
                                   double lambda);

}  // namespace distsamp

#endif  // DISTSAMP_SAMPLER_HPP_
