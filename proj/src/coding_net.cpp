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

#include "distsamp/coding_net.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "distsamp/experiments.hpp"
#include "distsamp/fitting.hpp"

namespace distsamp {
namespace {

class BitWriter {
 public:
  void put(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
    ++bits_;
  }

  // Low `width` bits of v, most significant first.
  void put_bits(std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) put((v >> i) & 1u);
  }

  // v >= 1: floor(log2 v) zeros, then v in binary.
  void put_gamma(std::uint64_t v) {
    const int width = std::bit_width(v);
    put_bits(0, width - 1);
    put_bits(v, width);
  }

  EncodedStream finish(std::size_t symbols) {
    return {std::move(bytes_), bits_, symbols};
  }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bits_ = 0;
};

class BitReader {
 public:
  BitReader(std::span<const std::uint8_t> bytes, std::size_t bit_length)
      : bytes_(bytes), bit_length_(bit_length) {
    if (bit_length > bytes.size() * 8) {
      throw DecodeError("bit length exceeds the buffer", 0);
    }
  }

  std::size_t position() const { return pos_; }

  bool get() {
    if (pos_ >= bit_length_) throw DecodeError("truncated stream", pos_);
    const bool bit = (bytes_[pos_ / 8] >> (7 - pos_ % 8)) & 1u;
    ++pos_;
    return bit;
  }

  std::uint64_t get_bits(int width) {
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = (v << 1) | (get() ? 1u : 0u);
    return v;
  }

  std::uint64_t get_gamma() {
    const std::size_t start = pos_;
    int zeros = 0;
    while (!get()) {
      if (++zeros > 63) throw DecodeError("malformed gamma code", start);
    }
    return (std::uint64_t{1} << zeros) | get_bits(zeros);
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t bit_length_;
  std::size_t pos_ = 0;
};

int ceil_log2(std::uint64_t m) { return m <= 1 ? 0 : std::bit_width(m - 1); }

void put_golomb(BitWriter& w, std::uint64_t r, std::uint64_t m) {
  const std::uint64_t q = r / m;
  const std::uint64_t rem = r % m;
  for (std::uint64_t i = 0; i < q; ++i) w.put(true);
  w.put(false);
  if (m == 1) return;
  // Truncated binary remainder.
  const int b = ceil_log2(m);
  const std::uint64_t cut = (std::uint64_t{1} << b) - m;
  if (rem < cut) {
    w.put_bits(rem, b - 1);
  } else {
    w.put_bits(rem + cut, b);
  }
}

std::uint64_t get_golomb(BitReader& r, std::uint64_t m, std::size_t limit) {
  const std::size_t start = r.position();
  std::uint64_t q = 0;
  while (r.get()) {
    if (++q > limit / m + 1) throw DecodeError("run exceeds stream length", start);
  }
  if (m == 1) return q;
  const int b = ceil_log2(m);
  const std::uint64_t cut = (std::uint64_t{1} << b) - m;
  std::uint64_t x = r.get_bits(b - 1);
  if (x >= cut) x = ((x << 1) | (r.get() ? 1u : 0u)) - cut;
  return q * m + x;
}

}  // namespace

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kNyquist:
      return "nyquist";
    case Scheme::kOneBit:
      return "one-bit";
    case Scheme::kBbit:
      return "b-bit";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "nyquist") return Scheme::kNyquist;
  if (name == "one-bit") return Scheme::kOneBit;
  if (name == "b-bit") return Scheme::kBbit;
  throw ParameterError("unknown scheme '" + name + "'");
}

double binary_entropy(double p) {
  require(p >= 0.0 && p <= 1.0, "binary entropy needs p in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    require(v >= 0.0 && v <= 1.0, "probabilities must lie in [0, 1]");
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h;
}

std::vector<double> crossing_frequencies(
    std::span<const std::vector<CrossingRecord>> snapshots, int interval, int N) {
  require(!snapshots.empty(), "crossing frequencies need a snapshot");
  require(N >= 1, "need N >= 1");
  std::vector<long> counts(N, 0);
  for (const auto& records : snapshots) {
    auto it = std::find_if(records.begin(), records.end(),
                           [&](const CrossingRecord& r) { return r.interval_l == interval; });
    require(it != records.end(), "snapshot lacks a record for the interval");
    require(it->sensor_m >= 0 && it->sensor_m < N, "sensor index out of range");
    ++counts[it->sensor_m];
  }
  std::vector<double> p(N);
  const double total = static_cast<double>(snapshots.size());
  for (int i = 0; i < N; ++i) p[i] = counts[i] / total;
  return p;
}

IndependentRate independent_coding_rate(std::span<const double> p) {
  require(!p.empty(), "empty distribution");
  IndependentRate r;
  for (double v : p) r.total += binary_entropy(v);
  const double N = static_cast<double>(p.size());
  r.uniform_bound = N * binary_entropy(1.0 / N);
  return r;
}

double distributed_coding_rate(int N) {
  require(N >= 2, "distributed coding rate needs N >= 2");
  return std::log2(static_cast<double>(N));
}

DecodeError::DecodeError(const std::string& what, std::size_t bit_position)
    : std::runtime_error(what + " at bit " + std::to_string(bit_position)),
      bit_position_(bit_position) {}

std::uint64_t golomb_parameter(double p) {
  require(p > 0.0 && p <= 1.0, "Golomb parameter needs p in (0, 1]");
  if (p >= 0.5) return 1;
  const double m = std::ceil(-std::log(2.0 - p) / std::log1p(-p));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(m));
}

EncodedStream encode_run_length(std::span<const std::uint8_t> stream,
                                RunLengthMode mode) {
  const std::uint64_t n = stream.size();
  const auto ones = static_cast<std::uint64_t>(
      std::count_if(stream.begin(), stream.end(), [](std::uint8_t s) { return s != 0; }));
  BitWriter w;
  w.put(mode == RunLengthMode::kGolomb);
  w.put_gamma(n + 1);
  std::uint64_t m = 1;
  if (mode == RunLengthMode::kGolomb) {
    m = ones == 0 ? n + 1 : golomb_parameter(static_cast<double>(ones) / n);
    w.put_gamma(m);
  }
  auto put_run = [&](std::uint64_t r) {
    mode == RunLengthMode::kGolomb ? put_golomb(w, r, m) : w.put_gamma(r + 1);
  };
  std::uint64_t run = 0;
  for (std::uint8_t s : stream) {
    if (s != 0) {
      put_run(run);
      run = 0;
    } else {
      ++run;
    }
  }
  if (run > 0) put_run(run);
  return w.finish(n);
}

std::vector<std::uint8_t> decode_run_length(std::span<const std::uint8_t> bytes,
                                            std::size_t bit_length) {
  BitReader r(bytes, bit_length);
  const bool golomb = r.get();
  const std::uint64_t n = r.get_gamma() - 1;
  std::uint64_t m = 1;
  if (golomb) {
    const std::size_t at = r.position();
    m = r.get_gamma();
    if (m == 0) throw DecodeError("zero Golomb parameter", at);
  }
  std::vector<std::uint8_t> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(n, 1u << 24)));
  while (out.size() < n) {
    const std::size_t at = r.position();
    const std::uint64_t run = golomb ? get_golomb(r, m, n) : r.get_gamma() - 1;
    if (run > n - out.size()) throw DecodeError("run exceeds stream length", at);
    out.insert(out.end(), static_cast<std::size_t>(run), 0);
    if (out.size() < n) out.push_back(1);
  }
  if (r.position() != bit_length) {
    throw DecodeError("trailing bits after the last run", r.position());
  }
  return out;
}

int choose_Lprime(int N, double lambda) {
  require(lambda > kPi / 2.0, "choose_Lprime needs lambda > pi/2");
  require(N >= 1, "need N >= 1");
  const double per_step = std::log2(2.0 * lambda / kPi);
  const double need = std::log2(static_cast<double>(N));
  int Lp = 0;
  while ((2 * Lp + 1) * per_step < need) ++Lp;
  return Lp;
}

RateDistortionPoint network_rate(int N, int L, double lambda) {
  require(N >= 2 && L >= 1, "network rate needs N >= 2 and L >= 1");
  RateDistortionPoint p;
  p.scheme = Scheme::kOneBit;
  p.N = N;
  p.k = std::bit_width(static_cast<unsigned>(N)) - 1;
  p.L = L;
  p.Lprime = choose_Lprime(N, lambda);
  p.R_NQ = distributed_coding_rate(N);
  p.R = p.R_NQ * lambda;
  p.R_net = 2.0 * (L + p.Lprime) * p.R_NQ;
  p.R_sensor = p.R_NQ / N;
  return p;
}

LinkLoads link_loads(int N, int L, double lambda) {
  const RateDistortionPoint p = network_rate(N, L, lambda);
  const int n = L + p.Lprime;
  LinkLoads loads;
  loads.per_hop.resize(n);
  for (int j = 1; j <= n; ++j) loads.per_hop[j - 1] = (n - j + 1) * p.R_NQ;
  double side = 0.0;
  for (double v : loads.per_hop) side += v;
  loads.total_both_sides = 2.0 * side;
  return loads;
}

double beta_theory(double lambda) {
  require(lambda > kPi / 2.0, "beta needs lambda > pi/2");
  return std::sqrt(std::log2(2.0 * lambda / kPi));
}

ScalingResult scaling_curve(std::span<const int> N_list, int L, double lambda,
                            std::span<const std::uint64_t> field_seeds,
                            const ScalingOptions& options) {
  require(lambda > kPi / 2.0, "scaling curve needs lambda > pi/2");
  require(!field_seeds.empty(), "scaling curve needs field seeds");
  FieldSource source = default_source(options.field_kind, lambda, L);
  source.L_terms = options.L_terms;
  PipelineOptions o;
  o.lambda = lambda;
  o.gamma = options.gamma;
  o.L = L;

  ScalingResult res;
  res.beta_theory = beta_theory(lambda);
  for (int N : N_list) {
    require(N >= 2 && std::has_single_bit(static_cast<unsigned>(N)),
            "scaling curve needs N a power of two");
    RateDistortionPoint p = network_rate(N, L, lambda);
    const auto runs = parallel_trials(static_cast<int>(field_seeds.size()), [&](int i) {
      return run_one_bit(source.make(field_seeds[i]), p.k, p.Lprime, o);
    });
    double sum = 0.0;
    double worst = 0.0;
    for (const RunOutcome& r : runs) sum += r.D, worst = std::max(worst, r.D);
    p.D = sum / runs.size();
    p.D_max = worst;
    p.trials = static_cast<int>(runs.size());
    res.points.push_back(p);
  }
  if (res.points.size() >= 2) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : res.points) {
      x.push_back(std::sqrt(p.R_net));
      y.push_back(std::log2(p.D / p.R_net));
    }
    res.beta_fit = -fit_line(x, y).slope;
  }
  for (const auto& p : res.points) {
    if (p.D <= options.target_D) {
      res.N_for_target = p.N;
      break;
    }
  }
  return res;
}

MacReport mac_sufficiency(double W_C, double per_sensor_power, int N, int L,
                          double lambda, double snapshots_per_sec) {
  require(W_C > 0.0, "channel bandwidth must be positive");
  require(per_sensor_power >= 0.0 && snapshots_per_sec >= 0.0,
          "power and snapshot rate must be non-negative");
  const RateDistortionPoint p = network_rate(N, L, lambda);
  MacReport m;
  m.P_tot = per_sensor_power * N * 2.0 * (L + p.Lprime);
  m.C_sum = W_C * std::log2(1.0 + m.P_tot);
  m.required = p.R_NQ * snapshots_per_sec;
  m.margin = m.required > 0.0 ? m.C_sum / m.required
                              : std::numeric_limits<double>::infinity();
  m.sufficient = m.C_sum > m.required;
  return m;
}

}  // namespace distsamp
