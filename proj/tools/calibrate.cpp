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

// Fits the distortion constants once on a calibration seed block and writes
// them, with a safety margin, to a golden JSON file. Tests and the acceptance
// run use a disjoint seed block and must stay under these bounds.
//
//   distsamp_calibrate [--out tests/golden/constants.json]

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "distsamp/coding_net.hpp"
#include "distsamp/experiments.hpp"
#include "distsamp/io.hpp"
#include "distsamp/reconstruct.hpp"

namespace ds = distsamp;

namespace {

constexpr double kLambda = 2.0;
constexpr double kMargin = 1.5;
constexpr std::uint64_t kCalibrationSeed0 = 1000;
constexpr int kCalibrationSeeds = 20;

std::vector<ds::BandlimitedField> calibration_fields() {
  const ds::FieldSource src = ds::default_source(ds::FieldKind::kDeterministic, kLambda, 4);
  std::vector<ds::BandlimitedField> out;
  for (auto s : ds::seed_range(kCalibrationSeed0, kCalibrationSeeds)) out.push_back(src.make(s));
  return out;
}

double worst(const std::vector<ds::RunOutcome>& runs, auto&& scale) {
  double w = 0.0;
  for (const auto& r : runs) w = std::max(w, scale(r));
  return w;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit and freeze distortion constants"};
  std::string out = "tests/golden/constants.json";
  app.add_option("--out", out, "golden file to write");
  CLI11_PARSE(app, argc, argv);

  const auto fields = calibration_fields();
  const int n = static_cast<int>(fields.size());
  ds::PipelineOptions o;
  o.lambda = kLambda;

  // D <= C 2^(-R/lambda) with R = k lambda.
  double c_nyq = 0.0;
  for (int k = 3; k <= 8; ++k) {
    const auto runs = ds::parallel_trials(n, [&](int i) { return ds::run_nyquist(fields[i], k, o); });
    c_nyq = std::max(c_nyq, worst(runs, [&](const ds::RunOutcome& r) { return r.D * std::ldexp(1.0, k); }));
  }

  // D <= C / N for one-bit sampling at a fixed, generous window.
  const int Lp = ds::sweep_Lprime(8, kLambda);
  double c_one = 0.0;
  for (int k = 3; k <= 8; ++k) {
    const auto runs = ds::parallel_trials(n, [&](int i) { return ds::run_one_bit(fields[i], k, Lp, o); });
    c_one = std::max(c_one, worst(runs, [](const ds::RunOutcome& r) { return r.D * r.N; }));
  }

  // D <= C 2^(-k) for b-bit sampling.
  double c_bbit = 0.0;
  for (int b : {2, 3, 4}) {
    for (int k = b + 1; k <= 8; ++k) {
      const auto runs =
          ds::parallel_trials(n, [&](int i) { return ds::run_bbit(fields[i], k, b, Lp, o); });
      c_bbit = std::max(c_bbit, worst(runs, [&](const ds::RunOutcome& r) { return r.D * std::ldexp(1.0, k); }));
    }
  }

  // D <= sqrt(L') (pi/2lambda)^(2L'+1) + C~ L'^2 / N with L' chosen from N.
  double c_tilde = 0.0;
  for (int k = 4; k <= 10; ++k) {
    const int N = 1 << k;
    const int lp = ds::choose_Lprime(N, kLambda);
    const double first = ds::lagrange_error_bound(lp, kLambda, N, 0.0);
    const auto runs = ds::parallel_trials(n, [&](int i) { return ds::run_one_bit(fields[i], k, lp, o); });
    c_tilde = std::max(c_tilde, worst(runs, [&](const ds::RunOutcome& r) {
                         return std::max(0.0, r.D - first) * N / (lp * lp);
                       }));
  }

  const ds::BandlimitedField probe =
      ds::default_source(ds::FieldKind::kDeterministic, kLambda, 4).make(42);

  ds::Json j = {{"lambda", kLambda},
                {"margin", kMargin},
                {"calibration_seed0", kCalibrationSeed0},
                {"calibration_seeds", kCalibrationSeeds},
                {"C_nyquist", kMargin * c_nyq},
                {"C_one_bit", kMargin * c_one},
                {"C_bbit", kMargin * c_bbit},
                {"C_tilde", kMargin * c_tilde},
                {"field_seed42_at_0.3", probe(0.3)}};
  std::ofstream os(out);
  if (!os) {
    std::cerr << "cannot write " << out << '\n';
    return 1;
  }
  os << j.dump(2) << '\n';
  std::cout << j.dump(2) << '\n';
  return 0;
}
