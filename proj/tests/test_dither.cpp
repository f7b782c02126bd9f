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

#include "distsamp/dither.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace ds = distsamp;
using test_util::kPi;

namespace {

const ds::PropertyCheck& property(const ds::DitherReport& r, const std::string& name) {
  for (const auto& p : r.properties) {
    if (p.name == name) return p;
  }
  FAIL("missing property " << name);
  return r.properties.front();
}

}  // namespace

TEST_CASE("cosine dither values and slope") {
  const auto d = ds::make_cosine_dither(1.2, 2.0);
  CHECK(d(0.0) == doctest::Approx(1.2));
  CHECK(d(0.5) == doctest::Approx(-1.2));
  CHECK(d.Delta == doctest::Approx(1.2 * 2.0 * kPi));
  const double slope = test_util::grid_slope(d, 0.0, 1.0, 1e-6);
  CHECK(slope == doctest::Approx(7.5398).epsilon(1e-3 / 7.5398));
  CHECK_THROWS_AS(ds::make_cosine_dither(1.0, 2.0), ds::ParameterError);
  CHECK_THROWS_AS(ds::make_cosine_dither(1.2, 1.0), ds::ParameterError);
}

TEST_CASE("triangular dither shape") {
  const double gamma = 1.1;
  const double lambda = 2.0;
  const auto d = ds::make_triangular_dither(gamma, lambda);
  for (int l = -6; l <= 6; ++l) {
    const double expect = (l % 2 == 0) ? gamma : -gamma;
    CHECK(d(l / lambda) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(d((l + 0.5) / lambda)) < 1e-12);
    // Constant slope 2 gamma lambda inside each segment.
    const double a = (l + 0.2) / lambda;
    const double b = (l + 0.7) / lambda;
    CHECK(std::abs(d(b) - d(a)) / (b - a) == doctest::Approx(4.4).epsilon(1e-12));
  }
  CHECK(d.Delta == doctest::Approx(4.4));
  CHECK(test_util::grid_slope(d, -3.0, 3.0, 1e-5) <= 4.4 * (1.0 + 1e-9));
}

TEST_CASE("triangular dither needs a steep enough slope") {
  CHECK_THROWS_AS(ds::make_triangular_dither(1.01, 1.5), ds::ParameterError);
  CHECK_NOTHROW(ds::make_triangular_dither(1.1, 1.5));
  CHECK_THROWS_AS(ds::make_triangular_dither(0.9, 2.0), ds::ParameterError);
}

TEST_CASE("one-bit dithers are periodic with period 2/lambda") {
  for (const auto& d : {ds::make_cosine_dither(1.3, 2.5), ds::make_triangular_dither(1.1, 2.0)}) {
    for (double t = -2.0; t < 2.0; t += 0.173) {
      CHECK(d(t + 2.0 / d.lambda) == doctest::Approx(d(t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("b-bit dither endpoints and slope") {
  const auto base = ds::make_triangular_dither(1.1, 2.0);
  const double c = 1.1;
  const auto d = ds::make_bbit_dither(base, 2, 6, c);
  CHECK(d.M == 2);
  CHECK(d.tau == doctest::Approx(1.0 / (2.0 * 64.0)));
  CHECK(d.active_width_B0 == doctest::Approx(1.0 / 4.0 - d.tau));
  for (int l = -3; l <= 3; ++l) {
    const double start = l / 2.0;
    CHECK(d(start) == doctest::Approx(2.0 * c / d.M).epsilon(1e-12));
    CHECK(d(start + d.active_width_B0) == doctest::Approx(-2.0 * c / d.M).epsilon(1e-9));
    // Section-periodic.
    CHECK(d(start + 0.1) == doctest::Approx(d(0.1)).epsilon(1e-12));
  }
  // Slope inside the active section stays under 4 c Delta / gamma.
  double slope = 0.0;
  for (int l = -3; l <= 3; ++l) {
    slope = std::max(slope, test_util::grid_slope(d, l / 2.0 + 1e-7,
                                                  l / 2.0 + d.active_width_B0 - 1e-7, 1e-6));
  }
  CHECK(slope < 4.0 * c / 1.1 * 4.4);
  CHECK(slope <= d.Delta * (1.0 + 1e-6));
  CHECK(d.Delta < ds::bbit_slope_bound(d));
}

TEST_CASE("b-bit dither from a cosine base") {
  const auto base = ds::make_cosine_dither(1.2, 2.0);
  const auto d = ds::make_bbit_dither(base, 3, 8, ds::default_bbit_c());
  CHECK(d(0.0) == doctest::Approx(2.0 * d.c / 4.0));
  CHECK(d(d.active_width_B0) == doctest::Approx(-2.0 * d.c / 4.0).epsilon(1e-9));
  CHECK(ds::validate_dither(d, 2.0).all_passed());
}

TEST_CASE("b-bit dither preconditions") {
  const auto base = ds::make_triangular_dither(1.1, 2.0);
  CHECK_THROWS_AS(ds::make_bbit_dither(base, 1, 6, 1.1), ds::ParameterError);
  CHECK_THROWS_AS(ds::make_bbit_dither(base, 6, 6, 1.1), ds::ParameterError);
  CHECK_THROWS_AS(ds::make_bbit_dither(base, 2, 6, (1.0 + kPi) / 4.0), ds::ParameterError);
  CHECK(ds::default_bbit_c() == doctest::Approx(1.05 * (1.0 + kPi) / 4.0));
  const auto bb = ds::make_bbit_dither(base, 2, 6, 1.1);
  CHECK_THROWS_AS(ds::make_bbit_dither(bb, 2, 6, 1.1), ds::ParameterError);
}

TEST_CASE("validation passes on valid dithers") {
  const auto cos_report = ds::validate_dither(ds::make_cosine_dither(1.2, 2.0), 2.0);
  CHECK(cos_report.all_passed());
  const auto tri_report = ds::validate_dither(ds::make_triangular_dither(1.1, 2.0), 2.0);
  CHECK(tri_report.all_passed());
  CHECK(tri_report.measured_Delta == doctest::Approx(4.4).epsilon(1e-6));
  for (int b : {2, 3, 4}) {
    const auto d = ds::make_bbit_dither(ds::make_triangular_dither(1.1, 2.0), b, 8,
                                        ds::default_bbit_c());
    CHECK(ds::validate_dither(d, 2.0).all_passed());
  }
}

TEST_CASE("validation flags an undersized dither at the origin") {
  // Built by hand: the constructor refuses gamma <= 1.
  ds::DitherSpec d;
  d.kind = ds::DitherKind::kCosine;
  d.gamma = 0.9;
  d.lambda = 2.0;
  d.Delta = 0.9 * 2.0 * kPi;
  const auto r = ds::validate_dither(d, 2.0);
  CHECK_FALSE(r.all_passed());
  const auto& level = property(r, "nyquist_level");
  CHECK_FALSE(level.passed);
  CHECK(level.witness_t == 0.0);
  CHECK(level.witness_value == doctest::Approx(0.9));
  CHECK(property(r, "sign_alternation").passed);
  CHECK(property(r, "slope_bound").passed);
}

TEST_CASE("validation flags an understated slope") {
  auto d = ds::make_triangular_dither(1.1, 2.0);
  d.Delta = 4.0;
  const auto r = ds::validate_dither(d, 2.0);
  CHECK_FALSE(property(r, "slope_bound").passed);
  CHECK(property(r, "slope_bound").witness_value == doctest::Approx(4.4).epsilon(1e-6));
}

TEST_CASE("dither kind names round trip") {
  for (auto k : {ds::DitherKind::kCosine, ds::DitherKind::kTriangular, ds::DitherKind::kBbit}) {
    CHECK(ds::dither_kind_from_string(ds::to_string(k)) == k);
  }
  CHECK_THROWS_AS(ds::dither_kind_from_string("sawtooth"), ds::ParameterError);
}
