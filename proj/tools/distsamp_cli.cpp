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

// distsamp: reproducible sampling experiments.
//
//   distsamp <command> [flags]
//
// Data goes to --out as CSV (stdout when absent) and a JSON summary to
// <out>.json (stderr when absent). Exit codes: 0 ok, 2 usage, 3 invariant.

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "distsamp/coding_net.hpp"
#include "distsamp/config.hpp"
#include "distsamp/dither.hpp"
#include "distsamp/experiments.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/io.hpp"

namespace ds = distsamp;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;

// "3..8" expands to 3,4,...,8; plain integers pass through.
std::vector<int> expand_list(const std::vector<std::string>& tokens) {
  std::vector<int> out;
  for (const std::string& tok : tokens) {
    const auto dots = tok.find("..");
    try {
      if (dots == std::string::npos) {
        out.push_back(std::stoi(tok));
        continue;
      }
      const int lo = std::stoi(tok.substr(0, dots));
      const int hi = std::stoi(tok.substr(dots + 2));
      if (hi < lo || hi - lo > 4096) throw ds::ParameterError("bad range " + tok);
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } catch (const std::logic_error&) {
      throw ds::ParameterError("cannot parse integer list entry '" + tok + "'");
    }
  }
  return out;
}

// N lists also accept "2^4..2^10" style powers.
std::vector<int> expand_N_list(const std::vector<std::string>& tokens) {
  std::vector<std::string> plain;
  std::vector<int> out;
  for (const std::string& tok : tokens) {
    if (tok.rfind("2^", 0) != 0) {
      for (int v : expand_list({tok})) out.push_back(v);
      continue;
    }
    std::string exps = tok;
    exps.erase(std::remove(exps.begin(), exps.end(), '^'), exps.end());
    // "24..210" after stripping carets is ambiguous; parse the exponents.
    const auto dots = tok.find("..");
    std::vector<int> ks;
    if (dots == std::string::npos) {
      ks = expand_list({tok.substr(2)});
    } else {
      const std::string rhs = tok.substr(dots + 2);
      if (rhs.rfind("2^", 0) != 0) throw ds::ParameterError("bad N range " + tok);
      ks = expand_list({tok.substr(2, dots - 2) + ".." + rhs.substr(2)});
    }
    for (int k : ks) {
      if (k < 1 || k > 20) throw ds::ParameterError("N exponent out of range in " + tok);
      out.push_back(1 << k);
    }
  }
  return out;
}

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* data = &std::cout;
  std::string summary_path;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file) throw ds::ParameterError("cannot open output file " + path);
    data = file.get();
    summary_path = path + ".json";
  }

  void summary(const ds::Json& j) const {
    if (summary_path.empty()) {
      std::cerr << j.dump(2) << '\n';
      return;
    }
    std::ofstream os(summary_path);
    if (!os) throw ds::ParameterError("cannot open summary file " + summary_path);
    os << j.dump(2) << '\n';
  }
};

ds::Json base_summary(const ds::ExperimentConfig& cfg) {
  return {{"config", ds::to_json(cfg)}};
}

void require_invariant(bool ok, const std::string& what) {
  if (!ok) throw ds::InvariantViolation(what);
}

int cmd_synth(const ds::ExperimentConfig& cfg) {
  const ds::FieldSource src = cfg.source();
  const ds::BandlimitedField f = src.make(cfg.seed);
  Output out(cfg.out_path);
  const double step = ds::normalization_step(f.params);
  const std::vector<double> grid = ds::make_grid(f.extent, step);
  ds::CsvWriter csv(*out.data, {"t", "f"});
  double sup = 0.0;
  double slope = 0.0;
  double prev = f(grid.front());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = i == 0 ? prev : f(grid[i]);
    sup = std::max(sup, std::abs(v));
    if (i > 0) slope = std::max(slope, std::abs(v - prev) / step);
    prev = v;
    if (i % 10 == 0) {
      csv << grid[i] << v;
      csv.end_row();
    }
  }
  const double W = f.params.bandwidth_W;
  const double slope_bound = cfg.field_kind == ds::FieldKind::kDeterministic
                                 ? W * f.params.amplitude_A
                                 : 2.0 * f.params.amplitude_A * W * W;
  ds::Json s = base_summary(cfg);
  s["field"] = ds::to_json(f);
  s["sup_abs"] = sup;
  s["max_slope"] = slope;
  s["slope_bound"] = slope_bound;
  out.summary(s);
  require_invariant(sup <= f.params.amplitude_A, "field exceeds its amplitude bound");
  require_invariant(slope <= slope_bound * (1.0 + 1e-3), "field slope exceeds its bound");
  return 0;
}

int cmd_sweep_rd(const ds::ExperimentConfig& cfg) {
  const auto seeds = ds::seed_range(cfg.seed, cfg.trials);
  const int b = cfg.scheme == ds::Scheme::kBbit ? cfg.b_list.front() : 1;
  const auto points = ds::sweep_rd(cfg.scheme, cfg.k_range, b, cfg.source(), seeds,
                                   cfg.pipeline());
  Output out(cfg.out_path);
  ds::write_rd_csv(*out.data, points);
  ds::Json s = base_summary(cfg);
  if (points.size() >= 2) {
    s["slope_log2D_vs_R"] = ds::rd_slope(points);
    if (cfg.scheme != ds::Scheme::kNyquist) {
      s["exponent_log2D_vs_log2N"] = ds::rd_exponent_in_N(points);
    }
  }
  s["slope_theory"] = -1.0 / cfg.lambda;
  out.summary(s);
  return 0;
}

int cmd_bit_conservation(const ds::ExperimentConfig& cfg) {
  const int k = *std::max_element(cfg.k_range.begin(), cfg.k_range.end());
  const auto seeds = ds::seed_range(cfg.seed, cfg.trials);
  const ds::FieldSource src = cfg.source();
  const ds::PipelineOptions o = cfg.pipeline();
  const int Lprime = cfg.Lprime >= 0 ? cfg.Lprime : ds::sweep_Lprime(k, cfg.lambda);
  std::vector<ds::BandlimitedField> fields;
  for (auto sd : seeds) fields.push_back(src.make(sd));

  Output out(cfg.out_path);
  ds::CsvWriter csv(*out.data, {"k", "b", "sensors", "R", "R_NQ", "D", "D_max"});
  double lo = INFINITY;
  double hi = 0.0;
  for (int b : cfg.b_list) {
    const ds::BudgetRow row = ds::bit_budget_row(k, b, cfg.lambda);
    const auto runs = ds::parallel_trials(static_cast<int>(fields.size()), [&](int i) {
      return ds::run_bit_split(fields[i], k, b, Lprime, o);
    });
    double mean = 0.0;
    double worst = 0.0;
    for (const auto& r : runs) mean += r.D / runs.size(), worst = std::max(worst, r.D);
    lo = std::min(lo, mean);
    hi = std::max(hi, mean);
    csv << k << b << row.sensors << row.R << row.R_NQ << mean << worst;
    csv.end_row();
  }
  ds::Json s = base_summary(cfg);
  s["k"] = k;
  s["Lprime"] = Lprime;
  s["D_spread"] = hi / lo;
  s["within_factor_10"] = hi / lo <= 10.0;
  out.summary(s);
  return 0;
}

int cmd_finite_window(const ds::ExperimentConfig& cfg) {
  const int N = cfg.N_list.front();
  const int k = std::bit_width(static_cast<unsigned>(N)) - 1;
  const auto seeds = ds::seed_range(cfg.seed, cfg.trials);
  const auto points = ds::finite_window_sweep(cfg.source(), seeds, k, cfg.Lprime_list,
                                              cfg.pipeline());
  Output out(cfg.out_path);
  ds::CsvWriter csv(*out.data, {"N", "Lprime", "D", "D_max", "truncation_term"});
  for (const auto& p : points) {
    csv << p.N << p.Lprime << p.D << p.D_max << p.bound_first_term;
    csv.end_row();
  }
  // The error stops improving once the quantization term dominates.
  int floor_at = points.back().Lprime;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i].D > 0.8 * points[i - 1].D) {
      floor_at = points[i - 1].Lprime;
      break;
    }
  }
  ds::Json s = base_summary(cfg);
  s["N"] = N;
  s["choose_Lprime"] = ds::choose_Lprime(N, cfg.lambda);
  s["floor_Lprime"] = floor_at;
  out.summary(s);
  return 0;
}

int cmd_network(const ds::ExperimentConfig& cfg) {
  const auto seeds = ds::seed_range(cfg.seed, cfg.trials);
  ds::ScalingOptions so;
  so.field_kind = cfg.field_kind;
  so.gamma = cfg.gamma;
  const ds::ScalingResult res = ds::scaling_curve(cfg.N_list, cfg.L, cfg.lambda, seeds, so);
  Output out(cfg.out_path);
  ds::write_rd_csv(*out.data, res.points);
  ds::Json s = base_summary(cfg);
  s["beta_fit"] = res.beta_fit;
  s["beta_theory"] = res.beta_theory;
  s["N_for_D_0.01"] = res.N_for_target;
  ds::Json per_N = ds::Json::array();
  for (const auto& p : res.points) {
    const ds::LinkLoads loads = ds::link_loads(p.N, cfg.L, cfg.lambda);
    const ds::MacReport mac = ds::mac_sufficiency(cfg.channel_W, cfg.sensor_power, p.N,
                                                  cfg.L, cfg.lambda, cfg.snapshot_rate);
    require_invariant(std::abs(p.R_net - 2.0 * (p.L + p.Lprime) * p.R_NQ) < 1e-9,
                      "network rate identity failed");
    per_N.push_back({{"N", p.N},
                     {"link_loads", loads.per_hop},
                     {"link_total", loads.total_both_sides},
                     {"mac",
                      {{"P_tot", mac.P_tot},
                       {"C_sum", mac.C_sum},
                       {"required", mac.required},
                       {"margin", mac.margin},
                       {"sufficient", mac.sufficient}}}});
  }
  s["per_N"] = per_N;
  out.summary(s);
  return 0;
}

int cmd_twodim(const ds::ExperimentConfig& cfg) {
  std::vector<int> ks;
  for (int N : cfg.N_list) ks.push_back(std::bit_width(static_cast<unsigned>(N)) - 1);
  const int Lprime = cfg.Lprime >= 0
                         ? cfg.Lprime
                         : ds::sweep_Lprime(*std::max_element(ks.begin(), ks.end()),
                                            cfg.lambda);
  const auto seeds = ds::seed_range(cfg.seed, cfg.trials);
  const auto points = ds::twodim_sweep(ks, Lprime, seeds, cfg.pipeline());
  Output out(cfg.out_path);
  ds::CsvWriter csv(*out.data, {"N", "D", "line_D"});
  for (const auto& p : points) {
    csv << p.N << p.D << p.line_D;
    csv.end_row();
  }
  ds::Json s = base_summary(cfg);
  s["Lprime"] = Lprime;
  ds::Json ratios = ds::Json::array();
  for (std::size_t i = 1; i < points.size(); ++i) ratios.push_back(points[i].D / points[i - 1].D);
  s["doubling_ratios"] = ratios;
  out.summary(s);
  return 0;
}

int cmd_validate(const ds::ExperimentConfig& cfg) {
  const ds::DitherSpec d = cfg.dither == ds::DitherKind::kCosine
                               ? ds::make_cosine_dither(cfg.gamma, cfg.lambda)
                               : ds::make_triangular_dither(cfg.gamma, cfg.lambda);
  ds::Json reports = ds::Json::array();
  bool ok = true;
  auto add = [&](const ds::DitherSpec& spec) {
    const ds::DitherReport r = ds::validate_dither(spec, cfg.lambda);
    ok = ok && r.all_passed();
    reports.push_back({{"dither", ds::to_json(spec)}, {"report", ds::to_json(r)}});
  };
  add(d);
  const int k = *std::max_element(cfg.k_range.begin(), cfg.k_range.end());
  for (int b : cfg.b_list) {
    if (b > 1 && b < k) {
      add(ds::make_bbit_dither(d, b, k, cfg.c > 0.0 ? cfg.c : ds::default_bbit_c()));
    }
  }
  Output out(cfg.out_path);
  *out.data << reports.dump(2) << '\n';
  require_invariant(ok, "dither validation failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed sampling experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  ds::ExperimentConfig flags;
  std::string config_path;
  std::vector<std::string> k_tokens;
  std::vector<std::string> b_tokens;
  std::vector<std::string> N_tokens;
  std::vector<std::string> Lp_tokens;
  std::string field_name = "deterministic";
  std::string scheme_name = "nyquist";
  std::string engine_name = "lagrange";
  std::string dither_name = "triangular";
  long long seed = 1;

  app.add_option("--config", config_path, "JSON config file; flags override it");
  auto* o_lambda = app.add_option("--lambda", flags.lambda, "oversampling factor");
  auto* o_gamma = app.add_option("--gamma", flags.gamma, "dither amplitude");
  auto* o_c = app.add_option("--c", flags.c, "b-bit dither scale constant");
  auto* o_k = app.add_option("--k", k_tokens, "bit budgets, e.g. 3..8")->delimiter(',');
  auto* o_b = app.add_option("--b", b_tokens, "ADC precisions")->delimiter(',');
  auto* o_N = app.add_option("--N", N_tokens, "sensor counts, e.g. 2^4..2^10")->delimiter(',');
  auto* o_Lp = app.add_option("--Lprime", Lp_tokens, "window extensions")->delimiter(',');
  auto* o_L = app.add_option("--L", flags.L, "region half-width in intervals");
  auto* o_trials = app.add_option("--trials", flags.trials, "fields per point");
  auto* o_snap = app.add_option("--snapshots", flags.snapshots, "snapshots");
  auto* o_seed = app.add_option("--seed", seed, "first field seed");
  auto* o_field = app.add_option("--field", field_name, "deterministic | wss1 | wss2");
  auto* o_out = app.add_option("--out", flags.out_path, "output CSV path");
  auto* o_scheme = app.add_option("--scheme", scheme_name, "nyquist | one-bit | b-bit");
  auto* o_engine = app.add_option("--engine", engine_name, "lagrange | least-squares");
  auto* o_dither = app.add_option("--dither", dither_name, "triangular | cosine");
  auto* o_amp = app.add_option("--amplitude", flags.amplitude, "field amplitude bound");
  auto* o_cw = app.add_option("--channel-W", flags.channel_W, "MAC bandwidth");
  auto* o_pw = app.add_option("--power", flags.sensor_power, "per-sensor power");
  auto* o_sr = app.add_option("--snapshot-rate", flags.snapshot_rate, "snapshots per second");

  const std::pair<ds::Command, const char*> commands[] = {
      {ds::Command::kSynth, "sample one seeded field on a dense grid"},
      {ds::Command::kSweepRd, "distortion against rate for one scheme"},
      {ds::Command::kBitConservation, "split a fixed bit budget across ADC precisions"},
      {ds::Command::kFiniteWindow, "Lagrange error against window extension"},
      {ds::Command::kNetwork, "network rate, link loads and scaling fit"},
      {ds::Command::kTwoDim, "line-by-line reconstruction of a 2-D field"},
      {ds::Command::kValidate, "check dither properties and print the reports"},
  };
  for (const auto& [c, help] : commands) app.add_subcommand(ds::to_string(c), help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    ds::ExperimentConfig cfg;
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ds::ParameterError("cannot read config " + config_path);
      ds::Json j;
      try {
        j = ds::Json::parse(is);
      } catch (const nlohmann::json::exception& e) {
        throw ds::ParameterError(std::string("config is not valid JSON: ") + e.what());
      }
      cfg = ds::config_from_json(j);
    }
    cfg.command = ds::command_from_string(app.get_subcommands().front()->get_name());
    auto given = [](const CLI::Option* o) { return o->count() > 0; };
    if (given(o_lambda)) cfg.lambda = flags.lambda;
    if (given(o_gamma)) cfg.gamma = flags.gamma;
    if (given(o_c)) cfg.c = flags.c;
    if (given(o_k)) cfg.k_range = expand_list(k_tokens);
    if (given(o_b)) cfg.b_list = expand_list(b_tokens);
    if (given(o_N)) cfg.N_list = expand_N_list(N_tokens);
    if (given(o_Lp)) {
      cfg.Lprime_list = expand_list(Lp_tokens);
      cfg.Lprime = cfg.Lprime_list.front();
    }
    if (given(o_L)) cfg.L = flags.L;
    if (given(o_trials)) cfg.trials = flags.trials;
    if (given(o_snap)) cfg.snapshots = flags.snapshots;
    if (given(o_seed)) {
      if (seed < 0) throw ds::ParameterError("seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(seed);
    }
    if (given(o_field)) cfg.field_kind = ds::field_kind_from_string(field_name);
    if (given(o_out)) cfg.out_path = flags.out_path;
    if (given(o_scheme)) cfg.scheme = ds::scheme_from_string(scheme_name);
    if (given(o_engine)) cfg.engine = ds::engine_from_string(engine_name);
    if (given(o_dither)) cfg.dither = ds::dither_kind_from_string(dither_name);
    if (given(o_amp)) cfg.amplitude = flags.amplitude;
    if (given(o_cw)) cfg.channel_W = flags.channel_W;
    if (given(o_pw)) cfg.sensor_power = flags.sensor_power;
    if (given(o_sr)) cfg.snapshot_rate = flags.snapshot_rate;
    if (cfg.command == ds::Command::kFiniteWindow && !given(o_N) && config_path.empty()) {
      cfg.N_list = {256};
    }
    cfg.validate();

    switch (cfg.command) {
      case ds::Command::kSynth:
        return cmd_synth(cfg);
      case ds::Command::kSweepRd:
        return cmd_sweep_rd(cfg);
      case ds::Command::kBitConservation:
        return cmd_bit_conservation(cfg);
      case ds::Command::kFiniteWindow:
        return cmd_finite_window(cfg);
      case ds::Command::kNetwork:
        return cmd_network(cfg);
      case ds::Command::kTwoDim:
        return cmd_twodim(cfg);
      case ds::Command::kValidate:
        return cmd_validate(cfg);
    }
  } catch (const ds::ParameterError& e) {
    std::cerr << "distsamp: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ds::InvariantViolation& e) {
    std::cerr << "distsamp: invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const ds::ProtocolError& e) {
    std::cerr << "distsamp: protocol error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "distsamp: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
