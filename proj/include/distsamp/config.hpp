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

#ifndef DISTSAMP_CONFIG_HPP_
#define DISTSAMP_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "distsamp/coding_net.hpp"
#include "distsamp/dither.hpp"
#include "distsamp/experiments.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/io.hpp"

namespace distsamp {

enum class Command {
  kSynth,
  kSweepRd,
  kBitConservation,
  kFiniteWindow,
  kNetwork,
  kTwoDim,
  kValidate,
};

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct ExperimentConfig {
  Command command = Command::kSynth;
  double lambda = 2.0;
  double gamma = 1.1;
  double c = 0.0;          // 0 selects the default b-bit scale
  double amplitude = 0.0;  // 0 keeps the field kind's default
  std::vector<int> k_range = {3, 4, 5, 6, 7, 8};
  std::vector<int> b_list = {1, 2, 4, 8};
  std::vector<int> N_list = {16, 32, 64, 128, 256, 512, 1024};
  std::vector<int> Lprime_list = {1, 2, 3, 4, 5, 6};
  int L = 4;
  int Lprime = -1;  // -1 picks it from N
  int trials = 20;
  int snapshots = 1000;
  std::uint64_t seed = 1;
  std::string out_path;
  FieldKind field_kind = FieldKind::kDeterministic;
  Scheme scheme = Scheme::kNyquist;
  Engine engine = Engine::kLagrange;
  DitherKind dither = DitherKind::kTriangular;
  // Multiple-access check.
  double channel_W = 1.0;
  double sensor_power = 1.0;
  double snapshot_rate = 1.0;

  /// Throws ParameterError naming the first offending setting.
  void validate() const;

  PipelineOptions pipeline() const;
  FieldSource source() const;
};

/// Keys mirror the field names; unknown keys are rejected.
ExperimentConfig config_from_json(const Json& j, ExperimentConfig base = {});
Json to_json(const ExperimentConfig& c);

}  // namespace distsamp

#endif  // DISTSAMP_CONFIG_HPP_
