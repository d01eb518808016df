// SPDX-License-Identifier: Apache-2.0
//
// sparray: sparse active planar arrays, co-arrays and imaging under coupling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "sparray/errors.hpp"

namespace sparray {

/// Chebyshev polynomial of the first kind T_n(x), valid for all real x.
inline double chebyshev_polynomial(int n, double x) {
  if (std::abs(x) <= 1.0) return std::cos(n * std::acos(x));
  const double mag = std::cosh(n * std::acosh(std::abs(x)));
  return (x < 0.0 && n % 2 != 0) ? -mag : mag;
}

// Dolph-Chebyshev window by frequency sampling. The window's spectrum at bin
// k is T_{N-1}(x0 cos(pi k / N)) with x0 chosen so the equiripple sidelobes
// sit at -sidelobe_db; pairing bins k and N-k leaves a cosine series about
// the window center (N-1)/2, which works for both parities.
inline std::vector<double> chebyshev_window(int length, double sidelobe_db) {
  if (length < 1) throw UsageError("chebyshev_window: length must be positive");
  if (!(sidelobe_db > 0.0)) throw UsageError("chebyshev_window: sidelobe attenuation must be positive");
  if (length == 1) return {1.0};

  const int order = length - 1;
  const double ripple = std::pow(10.0, sidelobe_db / 20.0);
  const double x0 = std::cosh(std::acosh(ripple) / order);
  const double center = 0.5 * order;
  const int half = (length + 1) / 2;  // ceil(N/2)

  std::vector<double> spectrum(half);
  for (int k = 0; k < half; ++k)
    spectrum[k] = chebyshev_polynomial(order, x0 * std::cos(std::numbers::pi * k / length));

  std::vector<double> w(length);
  for (int n = 0; n < length; ++n) {
    double acc = spectrum[0];
    for (int k = 1; k < half; ++k)
      acc += 2.0 * spectrum[k] * std::cos(2.0 * std::numbers::pi * k * (n - center) / length);
    w[n] = acc;
  }
  const double peak = *std::max_element(w.begin(), w.end());
  for (auto& v : w) v /= peak;
  return w;
}

/// Separable 2-D taper over the sum co-array {0:2lx}x{0:2ly}; entry (cx, cy)
/// is the product of two 1-D windows of lengths 2lx+1 and 2ly+1.
inline Eigen::MatrixXd chebyshev_taper_2d(int lx, int ly, double sidelobe_db) {
  if (lx < 0 || ly < 0) throw UsageError("chebyshev_taper_2d: dimensions must be non-negative");
  const auto wx = chebyshev_window(2 * lx + 1, sidelobe_db);
  const auto wy = chebyshev_window(2 * ly + 1, sidelobe_db);
  Eigen::MatrixXd taper(wx.size(), wy.size());
  for (std::size_t i = 0; i < wx.size(); ++i)
    for (std::size_t j = 0; j < wy.size(); ++j) taper(i, j) = wx[i] * wy[j];
  return taper;
}

}  // namespace sparray
