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

#include "distsamp/config.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace distsamp {
namespace {

constexpr int kMaxK = 20;

void require_list(const std::vector<int>& v, const std::string& name) {
  require(!v.empty(), name + " must not be empty");
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::kSynth:
      return "synth";
    case Command::kSweepRd:
      return "sweep-rd";
    case Command::kBitConservation:
      return "bit-conservation";
    case Command::kFiniteWindow:
      return "finite-window";
    case Command::kNetwork:
      return "network";
    case Command::kTwoDim:
      return "twodim";
    case Command::kValidate:
      return "validate";
  }
  return "unknown";
}

Command command_from_string(const std::string& name) {
  for (Command c : {Command::kSynth, Command::kSweepRd, Command::kBitConservation,
                    Command::kFiniteWindow, Command::kNetwork, Command::kTwoDim,
                    Command::kValidate}) {
    if (to_string(c) == name) return c;
  }
  throw ParameterError("unknown command '" + name + "'");
}

void ExperimentConfig::validate() const {
  require(lambda > 1.0, "lambda must exceed 1");
  require(gamma > 1.0, "gamma must exceed 1");
  if (dither == DitherKind::kTriangular) {
    require(2.0 * gamma * lambda > kPi, "triangular dither needs 2 gamma lambda > pi");
  }
  require(dither != DitherKind::kBbit, "dither must be cosine or triangular");
  require(c == 0.0 || c > bbit_c_threshold(), "c must exceed (1 + pi)/4");
  require(amplitude >= 0.0, "amplitude must be positive");
  require(L >= 1, "L must be at least 1");
  require(Lprime >= -1, "Lprime must be -1 (automatic) or non-negative");
  require(trials >= 1, "trials must be at least 1");
  require(snapshots >= 1, "snapshots must be at least 1");
  require(channel_W > 0.0, "channel bandwidth must be positive");
  require(sensor_power >= 0.0 && snapshot_rate >= 0.0,
          "power and snapshot rate must be non-negative");

  const bool needs_lagrange = command == Command::kSweepRd
                                  ? scheme != Scheme::kNyquist
                                  : command != Command::kSynth &&
                                        command != Command::kValidate;
  if (needs_lagrange) {
    require(lambda > kPi / 2.0, "Lagrange reconstruction needs lambda > pi/2");
  }
  switch (command) {
    case Command::kSweepRd:
      require_list(k_range, "k range");
      for (int k : k_range) require(k >= 1 && k <= kMaxK, "k must lie in [1, 20]");
      if (scheme == Scheme::kBbit) {
        require_list(b_list, "b list");
        for (int k : k_range) {
          require(b_list.front() > 1 && b_list.front() < k,
                  "b-bit sweeps need 1 < b < k for every k");
        }
      }
      break;
    case Command::kBitConservation: {
      require_list(k_range, "k range");
      require_list(b_list, "b list");
      const int k = *std::max_element(k_range.begin(), k_range.end());
      require(k >= 2 && k <= kMaxK, "bit conservation needs 2 <= k <= 20");
      for (int b : b_list) require(b >= 1 && b <= k, "b list must lie in [1, k]");
      break;
    }
    case Command::kFiniteWindow:
      require_list(N_list, "N list");
      require_list(Lprime_list, "Lprime list");
      for (int lp : Lprime_list) require(lp >= 0, "Lprime values must be non-negative");
      [[fallthrough]];
    case Command::kNetwork:
    case Command::kTwoDim:
      require_list(N_list, "N list");
      for (int N : N_list) {
        require(N >= 2 && N <= (1 << kMaxK) && std::has_single_bit(static_cast<unsigned>(N)),
                "N values must be powers of two in [2, 2^20]");
      }
      break;
    case Command::kSynth:
    case Command::kValidate:
      break;
  }
}

PipelineOptions ExperimentConfig::pipeline() const {
  PipelineOptions o;
  o.lambda = lambda;
  o.gamma = gamma;
  o.c = c;
  o.L = L;
  o.dither = dither;
  o.engine = engine;
  return o;
}

FieldSource ExperimentConfig::source() const {
  FieldSource s = default_source(field_kind, lambda, L);
  if (amplitude > 0.0) s.params.amplitude_A = amplitude;
  return s;
}

ExperimentConfig config_from_json(const Json& j, ExperimentConfig c) {
  require(j.is_object(), "config must be a JSON object");
  static const std::set<std::string> known = {
      "command", "lambda", "gamma", "c", "amplitude", "k_range", "b_list",
      "N_list", "Lprime_list", "L", "Lprime", "trials", "snapshots", "seed",
      "out_path", "field_kind", "scheme", "engine", "dither", "channel_W",
      "sensor_power", "snapshot_rate"};
  for (const auto& [key, _] : j.items()) {
    require(known.count(key) == 1, "unknown config key '" + key + "'");
  }
  try {
    if (j.contains("command")) c.command = command_from_string(j["command"].get<std::string>());
    c.lambda = j.value("lambda", c.lambda);
    c.gamma = j.value("gamma", c.gamma);
    c.c = j.value("c", c.c);
    c.amplitude = j.value("amplitude", c.amplitude);
    c.k_range = j.value("k_range", c.k_range);
    c.b_list = j.value("b_list", c.b_list);
    c.N_list = j.value("N_list", c.N_list);
    c.Lprime_list = j.value("Lprime_list", c.Lprime_list);
    c.L = j.value("L", c.L);
    c.Lprime = j.value("Lprime", c.Lprime);
    c.trials = j.value("trials", c.trials);
    c.snapshots = j.value("snapshots", c.snapshots);
    c.seed = j.value("seed", c.seed);
    c.out_path = j.value("out_path", c.out_path);
    if (j.contains("field_kind")) {
      c.field_kind = field_kind_from_string(j["field_kind"].get<std::string>());
    }
    if (j.contains("scheme")) c.scheme = scheme_from_string(j["scheme"].get<std::string>());
    if (j.contains("engine")) c.engine = engine_from_string(j["engine"].get<std::string>());
    if (j.contains("dither")) {
      c.dither = dither_kind_from_string(j["dither"].get<std::string>());
    }
    c.channel_W = j.value("channel_W", c.channel_W);
    c.sensor_power = j.value("sensor_power", c.sensor_power);
    c.snapshot_rate = j.value("snapshot_rate", c.snapshot_rate);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed config: ") + e.what());
  }
  return c;
}

Json to_json(const ExperimentConfig& c) {
  return {{"command", to_string(c.command)},
          {"lambda", c.lambda},
          {"gamma", c.gamma},
          {"c", c.c},
          {"amplitude", c.amplitude},
          {"k_range", c.k_range},
          {"b_list", c.b_list},
          {"N_list", c.N_list},
          {"Lprime_list", c.Lprime_list},
          {"L", c.L},
          {"Lprime", c.Lprime},
          {"trials", c.trials},
          {"snapshots", c.snapshots},
          {"seed", c.seed},
          {"out_path", c.out_path},
          {"field_kind", to_string(c.field_kind)},
          {"scheme", to_string(c.scheme)},
          {"engine", to_string(c.engine)},
          {"dither", to_string(c.dither)},
          {"channel_W", c.channel_W},
          {"sensor_power", c.sensor_power},
          {"snapshot_rate", c.snapshot_rate}};
}

}  // namespace distsamp
