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

// Source-coding rates of crossing streams and the transport model of a
// linear multihop network with the collector at the origin.

#ifndef DISTSAMP_CODING_NET_HPP_
#define DISTSAMP_CODING_NET_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "distsamp/field_model.hpp"
#include "distsamp/sampler.hpp"

namespace distsamp {

enum class Scheme { kNyquist, kOneBit, kBbit };

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct RateDistortionPoint {
  Scheme scheme = Scheme::kOneBit;
  int k = 0;
  int b = 1;
  int N = 1;
  int L = 0;
  int Lprime = 0;
  double R = 0.0;         // bits per unit length
  double R_NQ = 0.0;      // bits per Nyquist interval per snapshot
  double R_net = 0.0;     // bits per snapshot network-wide
  double R_sensor = 0.0;  // bits per sensor per snapshot
  double D = NAN;         // sup distortion, mean over trials
  double D_max = NAN;
  int trials = 0;
};

/// h2(p) = -p log2 p - (1-p) log2 (1-p), h2(0) = h2(1) = 0.
double binary_entropy(double p);

/// Shannon entropy in bits of a probability vector.
double shannon_entropy(std::span<const double> p);

/// Fraction of snapshots whose crossing in `interval` sits at sensor i,
/// i = 0..N-1. Each snapshot is one detection pass over the window.
std::vector<double> crossing_frequencies(
    std::span<const std::vector<CrossingRecord>> snapshots, int interval, int N);

struct IndependentRate {
  double total = 0.0;          // sum_i h2(p_i)
  double uniform_bound = 0.0;  // N h2(1/N)
};

IndependentRate independent_coding_rate(std::span<const double> p);

/// log2 N bits per interval per snapshot.
double distributed_coding_rate(int N);

// --- Run-length codec --------------------------------------------------------

enum class RunLengthMode {
  // Zero runs as Golomb codes with the parameter matched to the ones density.
  kGolomb,
  // Zero runs r as Elias-gamma codes of r + 1.
  kEliasGamma,
};

class DecodeError : public std::runtime_error {
 public:
  DecodeError(const std::string& what, std::size_t bit_position);
  std::size_t bit_position() const { return bit_position_; }

 private:
  std::size_t bit_position_;
};

struct EncodedStream {
  std::vector<std::uint8_t> bytes;
  std::size_t bit_length = 0;
  std::size_t symbols = 0;

  double bits_per_symbol() const {
    return symbols == 0 ? 0.0 : static_cast<double>(bit_length) / symbols;
  }
};

/// Header: mode bit, gamma(n + 1), and gamma(m) for Golomb. Then one code per
/// run of zeros; each run but a trailing one is followed by an implicit 1.
/// Bits are packed most-significant first.
EncodedStream encode_run_length(std::span<const std::uint8_t> stream,
                                RunLengthMode mode = RunLengthMode::kGolomb);

/// Inverse of encode_run_length. Throws DecodeError with the bit offset of
/// the first malformed or truncated code.
std::vector<std::uint8_t> decode_run_length(std::span<const std::uint8_t> bytes,
                                            std::size_t bit_length);

/// Golomb parameter for ones density p: ceil(-log(2 - p) / log(1 - p)).
std::uint64_t golomb_parameter(double p);

// --- Network transport -------------------------------------------------------

/// Smallest L' >= 0 with (pi / (2 lambda))^(2L' + 1) <= 1 / N.
int choose_Lprime(int N, double lambda);

/// R_NQ = log2 N, L' = choose_Lprime, R_net = 2 (L + L') R_NQ,
/// R_sensor = R_NQ / N. D is left unset.
RateDistortionPoint network_rate(int N, int L, double lambda);

struct LinkLoads {
  // per_hop[j - 1] is the load on one side at hop distance j from the
  // collector, j = 1 .. L + L'.
  std::vector<double> per_hop;
  double total_both_sides = 0.0;
};

LinkLoads link_loads(int N, int L, double lambda);

struct ScalingOptions {
  FieldKind field_kind = FieldKind::kDeterministic;
  double gamma = 1.1;
  int L_terms = 16;
  double target_D = 0.01;
};

struct ScalingResult {
  std::vector<RateDistortionPoint> points;
  double beta_fit = NAN;
  double beta_theory = NAN;
  // Smallest N on the curve with D <= target_D, or 0 when none.
  int N_for_target = 0;
};

/// sqrt(log2(2 lambda / pi)).
double beta_theory(double lambda);

/// One-bit sampling with L' = choose_Lprime(N) and Lagrange reconstruction
/// for each N (a power of two), D averaged over the seeds. beta comes from a
/// fit of log2(D / R_net) against sqrt(R_net).
ScalingResult scaling_curve(std::span<const int> N_list, int L, double lambda,
                            std::span<const std::uint64_t> field_seeds,
                            const ScalingOptions& options = {});

struct MacReport {
  double P_tot = 0.0;
  double C_sum = 0.0;
  double required = 0.0;
  double margin = 0.0;
  bool sufficient = false;
};

/// P_tot = power N 2 (L + L'), C_sum = W_C log2(1 + P_tot), required rate
/// R_NQ * snapshots_per_sec.
MacReport mac_sufficiency(double W_C, double per_sensor_power, int N, int L,
                          double lambda, double snapshots_per_sec);

}  // namespace distsamp

#endif  // DISTSAMP_CODING_NET_HPP_
