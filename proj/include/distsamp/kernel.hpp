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

// Interpolation and synthesis kernels shared by the field model and the
// reconstruction engines.

#ifndef DISTSAMP_KERNEL_HPP_
#define DISTSAMP_KERNEL_HPP_

#include <string>

namespace distsamp {

/// Trapezoid-spectrum kernel
///   h(t) = 2 / (pi delta t^2) * sin((W + delta/2) t) * sin(delta t / 2),
///   h(0) = (2W + delta) / (2 pi).
/// Its Fourier transform is 1 on [-W, W] and rolls off linearly to 0 at
/// +-(W + delta). Near t = 0 a quadratic Taylor expansion replaces the
/// removable singularity.
double zakai_kernel(double t, double W, double delta);

/// Stable uniform-sampling kernel for spacing 1/lambda: the trapezoid kernel
/// with W = pi, delta = pi (lambda - 1), scaled by 1/lambda so that
/// f(t) = sum_l f(l/lambda) phi(t - l/lambda) for f band-limited to [-pi, pi].
double stable_kernel(double t, double lambda);

/// sin(pi t) / (pi t), 1 at 0.
double sinc(double t);

/// sinc(t)^2. Triangle spectrum on [-2 pi, 2 pi]; integer shifts sum to one.
double fejer_kernel(double t);

/// Kernel used to build a test field as a finite sum of shifted copies.
struct FieldKernel {
  enum class Shape { kZakai, kFejer };

  Shape shape = Shape::kZakai;
  double W = 0.0;           // flat-band edge (kZakai)
  double delta = 0.0;       // roll-off width (kZakai)
  double time_scale = 1.0;  // kFejer evaluates fejer_kernel(time_scale * t)

  double operator()(double t) const;

  /// Upper edge of the spectral support in rad/m. Bernstein's inequality
  /// bounds |f'| by this times sup|f| for any finite sum of shifts.
  double spectral_edge() const;

  /// Trapezoid kernel whose spectrum ends exactly at `band`.
  static FieldKernel band_limited(double band, double margin);
  static FieldKernel fejer(double time_scale);

  std::string name() const;
};

/// How a reconstruction engine interpolates between samples.
enum class KernelKind { kSinc, kZakaiTrapezoid, kLagrangeWindow, kLeastSquares };

struct KernelSpec {
  KernelKind kind = KernelKind::kZakaiTrapezoid;
  double W = 0.0;
  double delta = 0.0;
  double lambda = 2.0;
  // Kernel sums skip samples farther than this from the evaluation point.
  double radius = 0.0;

  /// The stable kernel for spacing 1/lambda with the default 40/lambda cutoff.
  static KernelSpec stable(double lambda);
  static KernelSpec sinc_kernel(double lambda);

  double operator()(double t) const;
};

}  // namespace distsamp

#endif  // DISTSAMP_KERNEL_HPP_
