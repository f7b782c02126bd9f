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

#ifndef DISTSAMP_COMMON_HPP_
#define DISTSAMP_COMMON_HPP_

#include <numbers>
#include <stdexcept>
#include <string>

namespace distsamp {

inline constexpr double kPi = std::numbers::pi;

// Thrown when an argument violates an operation's precondition.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when sensor data contradicts a guarantee of the sampling scheme
// (e.g. an interval without a crossing). Always indicates an upstream bug.
class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by experiment drivers when a checked invariant fails at runtime.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ParameterError(what);
}

// Inclusive range of Nyquist-interval indices [first, last]. Interval l covers
// [l/lambda, (l+1)/lambda).
struct IntervalWindow {
  int first = 0;
  int last = -1;

  int count() const { return last >= first ? last - first + 1 : 0; }

  // Symmetric window of 2n intervals covering [-n/lambda, n/lambda].
  static IntervalWindow symmetric(int n) { return {-n, n - 1}; }
};

// Closed region [lo, hi] in meters.
struct Region {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const { return t >= lo && t <= hi; }
  double length() const { return hi - lo; }
};

}  // namespace distsamp

#endif  // DISTSAMP_COMMON_HPP_
