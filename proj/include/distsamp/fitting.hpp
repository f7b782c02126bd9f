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

#ifndef DISTSAMP_FITTING_HPP_
#define DISTSAMP_FITTING_HPP_

#include <span>

namespace distsamp {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Ordinary least-squares line through (x[i], y[i]); needs two distinct x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace distsamp

#endif  // DISTSAMP_FITTING_HPP_
