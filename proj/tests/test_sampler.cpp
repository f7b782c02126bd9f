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
#include <set>
#include <vector>

#include "distsamp/dither.hpp"
#include "distsamp/field_model.hpp"
#include "distsamp/sampler.hpp"
#include "doctest.h"
#include "test_util.hpp"

namespace ds = distsamp;
using test_util::kPi;

namespace {

ds::BandlimitedField zero_field() {
  return ds::deterministic_from_coefficients(ds::FieldParams{}, std::vector<double>(9, 0.0));
}

ds::BandlimitedField seeded(std::uint64_t seed) {
  return ds::synth_deterministic(ds::FieldParams{}, 16, seed);
}

// Triangular wave written out from its corner values.
double triangle(double gamma, double lambda, double t) {
  const double x = lambda * t;
  const double l = std::floor(x);
  const double frac = x - l;
  const bool even = static_cast<long>(l) % 2 == 0;
  const double from = even ? gamma : -gamma;
  return from + (-2.0 * from) * frac;
}

}  // namespace

TEST_CASE("quantizer hand values") {
  const auto q0 = ds::quantize_uniform(0.0, 1);
  CHECK(q0.reproduction == 0.5);
  CHECK(std::abs(0.0 - q0.reproduction) == 0.5);
  const auto q = ds::quantize_uniform(0.3, 3);
  CHECK(q.reproduction == 0.375);
  CHECK(std::abs(0.3 - q.reproduction) == doctest::Approx(0.075));
  CHECK(ds::quantize_uniform(-1.0, 3).reproduction == -0.875);
  CHECK(ds::quantize_uniform(1.0, 3).reproduction == 0.875);
  CHECK_FALSE(ds::quantize_uniform(1.0, 3).clamped);
  const auto c = ds::quantize_uniform(1.5, 3);
  CHECK(c.clamped);
  CHECK(c.reproduction == 0.875);
}

TEST_CASE("quantizer error bound over an exhaustive grid") {
  for (int k = 1; k <= 10; ++k) {
    const double bound = std::ldexp(1.0, -k);
    long violations = 0;
    for (long i = -10000; i <= 10000; ++i) {
      const double z = i * 1e-4;
      if (std::abs(z - ds::quantize_uniform(z, k).reproduction) > bound) ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("Nyquist samples") {
  const auto w = ds::IntervalWindow::symmetric(8);
  const auto z = ds::sample_nyquist(zero_field(), 4, w);
  CHECK(z.size() == 16);
  for (double r : z.reproduction) CHECK(r == z.reproduction.front());
  CHECK(z.rate_R == 8.0);

  const auto f = seeded(42);
  const auto fine = ds::sample_nyquist(f, 24, w);
  const auto coarse = ds::sample_nyquist(f, 4, w);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const double truth = f(fine.location(i));
    CHECK(fine.exact[i] == truth);
    CHECK(std::abs(fine.reproduction[i] - truth) <= std::ldexp(1.0, -24));
    CHECK(std::abs(coarse.reproduction[i] - truth) <= 1.0 / 16.0);
  }
  CHECK(fine.clamped == 0);
}

TEST_CASE("sensor arrays") {
  const auto a = ds::make_one_bit_array(5, 2.0, ds::IntervalWindow::symmetric(3));
  CHECK(a.N == 32);
  CHECK(a.tau * a.N * a.lambda == doctest::Approx(1.0));
  CHECK(a.tiles_interval());
  CHECK(a.location(-1, 3) == doctest::Approx(-0.5 + 3.0 / 64.0));

  const auto b = ds::make_bbit_array(8, 3, 2.0, ds::IntervalWindow::symmetric(3));
  CHECK(b.N == 64);
  CHECK_FALSE(b.tiles_interval());
  // Index bits plus level bits equal the budget plus one.
  CHECK(std::log2(b.N) + b.b == 9.0);
  CHECK_THROWS_AS(ds::make_bbit_array(8, 8, 2.0, ds::IntervalWindow::symmetric(3)),
                  ds::ParameterError);
  CHECK_THROWS_AS(ds::make_one_bit_array(0, 2.0, ds::IntervalWindow::symmetric(3)),
                  ds::ParameterError);
}

TEST_CASE("zero field follows the dither sign pattern") {
  const double gamma = 1.1;
  const double lambda = 2.0;
  const auto d = ds::make_triangular_dither(gamma, lambda);
  const auto w = ds::IntervalWindow::symmetric(4);
  const int k = 3;
  const auto signs = ds::sample_dithered_1bit(zero_field(), d, k, w);
  const auto records = ds::detect_zero_crossings(signs, d);
  REQUIRE(records.size() == 8);
  const double tau = 1.0 / (lambda * 8);
  for (int row = 0; row < signs.rows(); ++row) {
    const int l = w.first + row;
    int first_change = -1;
    for (int m = 0; m < 8 && first_change < 0; ++m) {
      const double a = triangle(gamma, lambda, l / lambda + m * tau);
      const double b = triangle(gamma, lambda, l / lambda + (m + 1) * tau);
      // Zero counts as positive.
      if ((a >= 0.0) != (b >= 0.0)) first_change = m;
    }
    CHECK(signs.at(row, 0) == (triangle(gamma, lambda, l / lambda) >= 0 ? 1 : -1));
    CHECK(ds::count_sign_changes(signs, row) == 1);
    CHECK(records[row].interval_l == l);
    CHECK(records[row].sensor_m == first_change);
    // The dither hits zero exactly on sensor 4; ties read as +1.
    CHECK(records[row].sensor_m == (l % 2 == 0 ? 4 : 3));
    CHECK(records[row].midpoint_t == doctest::Approx(l / lambda + (first_change + 0.5) * tau));
    CHECK(records[row].level_q == 0.0);
  }
}

TEST_CASE("interval endpoints always disagree") {
  const auto d = ds::make_triangular_dither(1.1, 2.0);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = seeded(seed);
    for (int l = -8; l < 8; ++l) {
      const double a = f(l / 2.0) + d(l / 2.0);
      const double b = f((l + 1) / 2.0) + d((l + 1) / 2.0);
      CHECK(a * b < 0.0);
    }
  }
}

TEST_CASE("one sign change per interval under the triangular dither") {
  const auto d = ds::make_triangular_dither(1.1, 2.0);
  const auto w = ds::IntervalWindow::symmetric(10);
  const auto signs = ds::sample_dithered_1bit(seeded(42), d, 6, w);
  for (int row = 0; row < signs.rows(); ++row) {
    int changes = 0;
    for (int m = 0; m < signs.cols(); ++m) {
      const int next = m + 1 < signs.cols() ? signs.at(row, m + 1) : signs.successor(row);
      changes += signs.at(row, m) != next;
    }
    CHECK(changes == 1);
    CHECK(ds::count_sign_changes(signs, row) == 1);
  }
}

TEST_CASE("one-bit sample errors obey the bound and halve with k") {
  const auto d = ds::make_triangular_dither(1.1, 2.0);
  const auto w = ds::IntervalWindow::symmetric(8);
  std::vector<double> worst;
  for (int k = 6; k <= 9; ++k) {
    const double bound = (kPi + d.Delta) / (2.0 * 2.0) * std::ldexp(1.0, -k);
    CHECK(ds::one_bit_error_bound(d, k) == doctest::Approx(bound));
    double w_k = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto f = seeded(seed);
      for (const auto& r : ds::detect_zero_crossings(ds::sample_dithered_1bit(f, d, k, w), d)) {
        const double err = std::abs(f(r.midpoint_t) - r.value_estimate);
        CHECK(err <= bound);
        w_k = std::max(w_k, err);
      }
    }
    worst.push_back(w_k);
  }
  for (std::size_t i = 1; i < worst.size(); ++i) {
    const double ratio = worst[i - 1] / worst[i];
    CHECK(ratio >= 2.0 / 1.2);
    CHECK(ratio <= 2.0 * 1.2);
  }
}

TEST_CASE("missing crossing is a protocol error") {
  const auto d = ds::make_triangular_dither(1.1, 2.0);
  auto signs = ds::sample_dithered_1bit(zero_field(), d, 3, ds::IntervalWindow::symmetric(2));
  std::fill(signs.data.begin(), signs.data.end(), std::int8_t{1});
  signs.next_first = 1;
  CHECK_THROWS_AS(ds::detect_zero_crossings(signs, d), ds::ProtocolError);
}

TEST_CASE("b-bit cells and levels") {
  // b = 2 exposes the levels 0 and +-1/2.
  std::set<int> cells;
  for (double v = -3.0; v <= 3.0; v += 0.01) cells.insert(ds::bbit_cell(v, 2));
  CHECK(cells == std::set<int>{-2, -1, 0, 1});
  CHECK(ds::bbit_cell(0.0, 2) == 0);
  CHECK(ds::bbit_cell(-1e-12, 2) == -1);
  CHECK(ds::bbit_cell(0.5, 2) == 1);

  const auto base = ds::make_triangular_dither(1.1, 2.0);
  const auto db = ds::make_bbit_dither(base, 2, 6, ds::default_bbit_c());
  const auto w = ds::IntervalWindow::symmetric(4);
  const auto idx = ds::sample_dithered_bbit(zero_field(), db, 6, 2, w);
  CHECK(idx.cols() == 32);
  for (int row = 0; row < idx.rows(); ++row) {
    CHECK(idx.at(row, 0) == ds::bbit_cell(2.0 * db.c / 2.0, 2));
    CHECK(idx.at(row, idx.cols() - 1) == ds::bbit_cell(-2.0 * db.c / 2.0, 2));
  }
  std::set<double> levels;
  for (const auto& r : ds::detect_level_crossings(idx, db)) levels.insert(r.level_q);
  for (double q : levels) CHECK((q == 0.0 || q == 0.5 || q == -0.5));
}

TEST_CASE("b-bit sections always hold a level crossing") {
  const auto base = ds::make_triangular_dither(1.1, 2.0);
  const auto db = ds::make_bbit_dither(base, 2, 6, ds::default_bbit_c());
  const auto w = ds::IntervalWindow::symmetric(10);
  const auto idx = ds::sample_dithered_bbit(seeded(42), db, 6, 2, w);
  for (int row = 0; row < idx.rows(); ++row) {
    int changes = 0;
    for (int m = 0; m + 1 < idx.cols(); ++m) changes += idx.at(row, m) != idx.at(row, m + 1);
    CHECK(changes >= 1);
  }
  CHECK(ds::detect_level_crossings(idx, db).size() == static_cast<std::size_t>(idx.rows()));
}

TEST_CASE("b-bit sample errors obey the bound") {
  const auto base = ds::make_triangular_dither(1.1, 2.0);
  const int k = 8;
  const int b = 3;
  const auto db = ds::make_bbit_dither(base, b, k, ds::default_bbit_c());
  const double bound = (kPi + db.Delta) / 2.0 * std::ldexp(1.0, -k);
  CHECK(ds::bbit_error_bound(db, k) == doctest::Approx(bound));
  const auto f = seeded(42);
  const auto idx = ds::sample_dithered_bbit(f, db, k, b, ds::IntervalWindow::symmetric(10));
  for (const auto& r : ds::detect_level_crossings(idx, db)) {
    CHECK(std::abs(f(r.midpoint_t) - r.value_estimate) <= bound);
    CHECK(r.value_estimate == doctest::Approx(r.level_q - db(r.midpoint_t)));
  }
}

TEST_CASE("single-level detection reduces to zero crossings") {
  const auto d = ds::make_triangular_dither(1.1, 2.0);
  const auto signs = ds::sample_dithered_1bit(seeded(5), d, 5, ds::IntervalWindow::symmetric(6));
  const auto a = ds::detect_zero_crossings(signs, d);
  const auto b = ds::detect_level_crossings(ds::indices_from_signs(signs), d);
  CHECK(a == b);
}

TEST_CASE("local protocol matches the detector") {
  const auto d = ds::make_triangular_dither(1.1, 2.0);
  for (int k : {3, 5, 7}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto signs = ds::sample_dithered_1bit(seeded(seed), d, k, ds::IntervalWindow::symmetric(6));
      const auto records = ds::detect_zero_crossings(signs, d);
      for (int row = 0; row < signs.rows(); ++row) {
        const auto out = ds::run_local_protocol(signs, row, d);
        CHECK(out.record == records[row]);
        CHECK(out.bits_exchanged == 2 * (signs.cols() - 1));
      }
    }
  }
  const auto signs = ds::sample_dithered_1bit(zero_field(), d, 3, ds::IntervalWindow::symmetric(2));
  const auto out = ds::run_local_protocol(signs, 0, d);
  CHECK(out.bits_exchanged == 14);
  CHECK(out.bits_exchanged / 8.0 < 2.0);
}

TEST_CASE("crossing midpoints are well separated") {
  const double gamma = 1.1;
  const double lambda = 2.0;
  const auto d = ds::make_triangular_dither(gamma, lambda);
  const double min_gap = std::min(1.0 / (2.0 * lambda), (gamma - 1.0) / d.Delta);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto rec = ds::detect_zero_crossings(
        ds::sample_dithered_1bit(seeded(seed), d, 7, ds::IntervalWindow::symmetric(8)), d);
    const auto g = ds::crossing_geometry(rec, lambda);
    CHECK(g.min_gap >= min_gap);
    CHECK(g.max_offset <= 1.0 / lambda);
    for (std::size_t i = 1; i < rec.size(); ++i) {
      CHECK(rec[i].midpoint_t - rec[i - 1].midpoint_t >= g.min_gap);
    }
  }
}
