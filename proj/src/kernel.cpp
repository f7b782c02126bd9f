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

#include "distsamp/kernel.hpp"

#include <cmath>

#include "distsamp/common.hpp"

namespace distsamp {

double zakai_kernel(double t, double W, double delta) {
  const double a = W + 0.5 * delta;
  const double b = 0.5 * delta;
  if (std::abs(t) < 1e-6) {
    const double h0 = (2.0 * W + delta) / (2.0 * kPi);
    return h0 * (1.0 - (a * a + b * b) * t * t / 6.0);
  }
  return 2.0 / (kPi * delta * t * t) * std::sin(a * t) * std::sin(b * t);
}

double stable_kernel(double t, double lambda) {
  return zakai_kernel(t, kPi, kPi * (lambda - 1.0)) / lambda;
}

double sinc(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - (kPi * t) * (kPi * t) / 6.0;
  return std::sin(kPi * t) / (kPi * t);
}

double fejer_kernel(double t) {
  const double s = sinc(t);
  return s * s;
}

double FieldKernel::operator()(double t) const {
  switch (shape) {
    case Shape::kZakai:
      return zakai_kernel(t, W, delta);
    case Shape::kFejer:
      return fejer_kernel(time_scale * t);
  }
  return 0.0;
}

double FieldKernel::spectral_edge() const {
  return shape == Shape::kZakai ? W + delta : 2.0 * kPi * time_scale;
}

FieldKernel FieldKernel::band_limited(double band, double margin) {
  require(band > 0.0 && margin > 0.0 && margin < band,
          "band-limited kernel needs 0 < margin < band");
  return FieldKernel{Shape::kZakai, band - margin, margin, 1.0};
}

FieldKernel FieldKernel::fejer(double time_scale) {
  require(time_scale > 0.0, "fejer kernel needs a positive time scale");
  return FieldKernel{Shape::kFejer, 0.0, 0.0, time_scale};
}

std::string FieldKernel::name() const {
  return shape == Shape::kZakai ? "zakai" : "fejer";
}

KernelSpec KernelSpec::stable(double lambda) {
  require(lambda > 1.0, "stable kernel needs lambda > 1");
  return KernelSpec{KernelKind::kZakaiTrapezoid, kPi, kPi * (lambda - 1.0),
                    lambda, 40.0 / lambda};
}

KernelSpec KernelSpec::sinc_kernel(double lambda) {
  return KernelSpec{KernelKind::kSinc, kPi, 0.0, lambda, 40.0 / lambda};
}

double KernelSpec::operator()(double t) const {
  switch (kind) {
    case KernelKind::kSinc:
      // Critically sampled sinc at the stable spacing; kept for comparison.
      return sinc(lambda * t);
    case KernelKind::kZakaiTrapezoid:
      return zakai_kernel(t, W, delta) / lambda;
    case KernelKind::kLagrangeWindow:
    case KernelKind::kLeastSquares:
      break;
  }
  throw ParameterError("kernel kind has no closed-form shift kernel");
}

}  // namespace distsamp
