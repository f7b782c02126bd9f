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

#include <cmath>
#include <vector>

#include "distsamp/field_model.hpp"
#include "distsamp/kernel.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace ds = distsamp;
using test_util::kPi;

TEST_CASE("kernel value at zero") {
  for (double W : {1.0, kPi, 5.0}) {
    for (double delta : {0.3, kPi / 2.0, kPi}) {
      CHECK(ds::zakai_kernel(0.0, W, delta) ==
            doctest::Approx((2.0 * W + delta) / (2.0 * kPi)).epsilon(1e-15));
    }
  }
}

TEST_CASE("kernel is even and continuous through the origin") {
  for (double t : {1e-8, 5e-7, 2e-6, 0.1, 0.77, 3.0, 41.5}) {
    CHECK(ds::zakai_kernel(-t, kPi, kPi) == ds::zakai_kernel(t, kPi, kPi));
  }
  // Taylor branch against the closed form just outside it.
  for (double t : {9.9e-7, 1.01e-6, 3e-6}) {
    CHECK(ds::zakai_kernel(t, kPi, kPi / 2) ==
          doctest::Approx(test_util::trapezoid_kernel(t, kPi, kPi / 2)).epsilon(1e-10));
  }
  CHECK(ds::zakai_kernel(1e-7, 2.0, 1.0) ==
        doctest::Approx(ds::zakai_kernel(0.0, 2.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("kernel matches the independent closed form") {
  for (double t = -20.0; t <= 20.0; t += 0.37) {
    CHECK(ds::zakai_kernel(t, 2.0, 0.75) ==
          doctest::Approx(test_util::trapezoid_kernel(t, 2.0, 0.75)).epsilon(1e-12));
  }
}

TEST_CASE("kernel spectrum is a trapezoid") {
  const double W = kPi;
  const double delta = kPi;
  const double T = 400.0;
  const long n = 80000;
  auto expected = [&](double w) {
    w = std::abs(w);
    if (w <= W) return 1.0;
    if (w >= W + delta) return 0.0;
    return (W + delta - w) / delta;
  };
  double worst = 0.0;
  for (double w = 0.0; w <= 8.0; w += 0.1) {
    // h is even, so the transform is the cosine integral.
    const double H = test_util::trapezoid(
        [&](double t) { return ds::zakai_kernel(t, W, delta) * std::cos(w * t); }, -T, T, n);
    worst = std::max(worst, std::abs(H - expected(w)));
  }
  CHECK(worst <= 2e-2);
}

TEST_CASE("stable kernel is the scaled trapezoid kernel") {
  for (double lambda : {1.5, 2.0, 3.0}) {
    for (double t : {0.0, 0.25, 1.3, -7.1}) {
      CHECK(ds::stable_kernel(t, lambda) ==
            doctest::Approx(test_util::trapezoid_kernel(t, kPi, kPi * (lambda - 1)) / lambda)
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("fejer kernel partitions unity over integer shifts") {
  for (double t : {0.0, 0.1, 0.5, 0.93}) {
    double acc = 0.0;
    for (int l = -4000; l <= 4000; ++l) acc += ds::fejer_kernel(t + l);
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-3));
  }
  CHECK(ds::fejer_kernel(0.0) == 1.0);
  CHECK(std::abs(ds::fejer_kernel(3.0)) < 1e-30);
}

TEST_CASE("parameter validation") {
  ds::FieldParams p;
  p.lambda = 1.0;
  CHECK_THROWS_AS(p.validate(), ds::ParameterError);
  p.lambda = 1.5;
  CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(p.validate(true), ds::ParameterError);
  p.lambda = 2.0;
  p.amplitude_A = 0.0;
  CHECK_THROWS_AS(p.validate(), ds::ParameterError);
  CHECK_THROWS_AS(ds::synth_deterministic(ds::FieldParams{}, 3, 1), ds::ParameterError);
  CHECK(ds::FieldParams::defaults_for(ds::FieldKind::kWssExample1).amplitude_A ==
        doctest::Approx(1.0 / (2.0 * kPi * kPi)));
}

TEST_CASE("zero coefficients give the zero field") {
  const auto f = ds::deterministic_from_coefficients(ds::FieldParams{}, std::vector<double>(9, 0.0));
  CHECK(test_util::grid_sup(f, -6.0, 6.0, 1e-3) == 0.0);
  const auto g = ds::normalized(f, 0.8);
  CHECK(g.amplitude_scale == 1.0);
  CHECK(g(0.4) == 0.0);
}

TEST_CASE("single coefficient reproduces the basis kernel") {
  std::vector<double> c(9, 0.0);
  c[4] = 1.0;
  const ds::FieldParams p;
  const auto f = ds::deterministic_from_coefficients(p, c);
  // Trapezoid spectrum flat to pi - delta, ending at pi.
  const double W = p.bandwidth_W - p.margin_delta;
  CHECK(f(0.0) == doctest::Approx((2.0 * W + p.margin_delta) / (2.0 * kPi)));
  CHECK(f(0.0) == doctest::Approx(0.75));
  CHECK(f(1.7) == doctest::Approx(test_util::trapezoid_kernel(1.7, W, p.margin_delta)));
}

TEST_CASE("seeded deterministic field obeys amplitude and slope bounds") {
  const auto f = ds::synth_deterministic(ds::FieldParams{}, 32, 42);
  const double lo = f.extent.lo;
  const double hi = f.extent.hi;
  const double sup = test_util::grid_sup(f, lo, hi, 1e-4);
  CHECK(sup >= 0.7);
  CHECK(sup <= 0.95 + 1e-3);
  CHECK(test_util::grid_slope(f, lo, hi, 1e-4) <= kPi * (1.0 + 1e-3));
}

TEST_CASE("deterministic ensemble stays inside the bounds") {
  for (std::uint64_t seed = 100; seed < 120; ++seed) {
    const auto f = ds::synth_deterministic(ds::FieldParams{}, 16, seed);
    CHECK(test_util::grid_sup(f, f.extent.lo, f.extent.hi, 1e-3) <= 1.0);
    CHECK(test_util::grid_slope(f, f.extent.lo, f.extent.hi, 1e-3) <= kPi * (1.0 + 1e-3));
  }
}

TEST_CASE("dense grid sup equals the exhaustive maximum") {
  for (std::uint64_t seed : {3u, 42u, 77u}) {
    auto f = ds::synth_deterministic(ds::FieldParams{}, 16, seed);
    f.amplitude_scale = 1.0;
    const double step = ds::normalization_step(f.params);
    const ds::Region r{-3.0, 5.0};
    CHECK(ds::dense_grid_sup(f, r, step) == test_util::grid_sup(f, r.lo, r.hi, step));
  }
}

TEST_CASE("equal seeds give identical fields and eval is pure") {
  const auto a = ds::synth_deterministic(ds::FieldParams{}, 16, 9);
  const auto b = ds::synth_deterministic(ds::FieldParams{}, 16, 9);
  CHECK(a.coeffs == b.coeffs);
  CHECK(a.amplitude_scale == b.amplitude_scale);
  for (double t : {-3.3, 0.0, 0.3, 2.9}) {
    CHECK(ds::eval(a, t) == ds::eval(b, t));
    CHECK(ds::eval(a, t) == ds::eval(a, t));
  }
  const auto c = ds::synth_deterministic(ds::FieldParams{}, 16, 10);
  CHECK(c.coeffs != a.coeffs);
}

TEST_CASE("hard-limited filter: zero and saturated inputs") {
  const auto p = ds::FieldParams::defaults_for(ds::FieldKind::kWssExample1);
  const double dur = 10.0;
  const std::size_t n = ds::wss_example1_input_size(p, dur);
  const auto zero = ds::wss_example1_from_input(p, dur, std::vector<double>(n, 0.0));
  CHECK(test_util::grid_sup(zero, -5.0, 5.0, 1e-2) == 0.0);

  // Saturated input is the constant 1 after the limiter, so the output is
  // the kernel's integral, its transform at zero frequency.
  const auto sat = ds::wss_example1_from_input(p, dur, std::vector<double>(n, 10.0));
  const double W = p.bandwidth_W - p.margin_delta;
  const double integral = test_util::trapezoid(
      [&](double t) { return test_util::trapezoid_kernel(t, W, p.margin_delta); }, -2000.0,
      2000.0, 400000);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-3));
  for (double t : {-4.0, -1.3, 0.0, 2.2, 5.0}) {
    CHECK(sat(t) == doctest::Approx(integral).epsilon(1e-2));
  }
}

TEST_CASE("hard-limited filter path obeys its bounds") {
  const auto p = ds::FieldParams::defaults_for(ds::FieldKind::kWssExample1);
  const auto x = ds::synth_wss_example1(p, 30.0, 7);
  const double A = p.amplitude_A;
  const double W = p.bandwidth_W;
  CHECK(test_util::grid_sup(x, x.extent.lo, x.extent.hi, 1e-3) <= A * (1.0 + 1e-6));
  CHECK(test_util::grid_slope(x, x.extent.lo, x.extent.hi, 1e-3) <=
        2.0 * A * W * W * (1.0 + 1e-3));
}

TEST_CASE("random-phase fejer construction") {
  const auto p = ds::FieldParams::defaults_for(ds::FieldKind::kWssExample2);
  const double dur = 20.0;
  const std::size_t n = ds::wss_example2_input_size(p, dur);
  const auto zero = ds::wss_example2_from_sequence(p, dur, std::vector<double>(n, 0.0), 0.3);
  CHECK(test_util::grid_sup(zero, -10.0, 10.0, 1e-2) == 0.0);

  // psi vanishes at nonzero integers, so only the l = 0 term survives.
  const auto ones = ds::wss_example2_from_sequence(p, dur, std::vector<double>(n, 1.0), 0.0);
  CHECK(ones(0.0) == doctest::Approx(1.0).epsilon(1e-12));

  const auto x = ds::synth_wss_example2(p, dur, 11);
  // Bound on sum_l |psi(t + l)| by grid maximization over one period.
  double C = 0.0;
  for (double t = 0.0; t < 1.0; t += 1e-3) {
    double acc = 0.0;
    for (int l = -2000; l <= 2000; ++l) acc += std::abs(ds::fejer_kernel(t + l));
    C = std::max(C, acc);
  }
  const double raw_sup = test_util::grid_sup(x, x.extent.lo, x.extent.hi, 1e-3) / x.amplitude_scale;
  CHECK(raw_sup <= C * (1.0 + 1e-9));
  CHECK(test_util::grid_sup(x, x.extent.lo, x.extent.hi, 1e-3) <= p.amplitude_A * (1.0 + 1e-6));
  CHECK(test_util::grid_slope(x, x.extent.lo, x.extent.hi, 1e-3) <=
        2.0 * p.amplitude_A * p.bandwidth_W * p.bandwidth_W * (1.0 + 1e-3));
}

TEST_CASE("field kind names round trip") {
  for (auto k : {ds::FieldKind::kDeterministic, ds::FieldKind::kWssExample1,
                 ds::FieldKind::kWssExample2}) {
    CHECK(ds::field_kind_from_string(ds::to_string(k)) == k);
  }
  CHECK_THROWS_AS(ds::field_kind_from_string("gaussian"), ds::ParameterError);
}
