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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sparray/geometry.hpp"

namespace sparray {

/// Exact distance on the integer grid, stored as its square.
struct SquaredDistance {
  std::int64_t value = 0;

  double length() const { return std::sqrt(static_cast<double>(value)); }
  friend constexpr auto operator<=>(const SquaredDistance&, const SquaredDistance&) = default;
};

/// Snaps a real distance to the grid. Returns nothing when dist^2 is not an
/// integer (to 1e-9 relative), i.e. when no pair of grid points can realize it.
inline std::optional<SquaredDistance> to_squared_distance(double dist) {
  if (!(dist > 0.0)) return std::nullopt;
  const double sq = dist * dist;
  const double rounded = std::round(sq);
  if (std::abs(sq - rounded) > 1e-9 * std::max(1.0, sq)) return std::nullopt;
  return SquaredDistance{static_cast<std::int64_t>(rounded)};
}

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

/// R = N(N+1) / (2 |C_sum|) as an exact reduced fraction. Uses the actual sum
/// co-array support, so non-contiguous arrays are scored too.
inline Rational redundancy_exact(const ElementSet& d) {
  const auto n = static_cast<std::int64_t>(d.size());
  std::int64_t num = n * (n + 1);
  std::int64_t den = 2 * static_cast<std::int64_t>(sum_coarray(d).support_size());
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

inline double redundancy(const ElementSet& d) { return redundancy_exact(d).value(); }

/// Number of unordered element pairs at the given separation, computed from
/// the difference co-array: half the multiplicity mass on the circle.
inline std::int64_t sparseness(const CoArray& difference, SquaredDistance dist) {
  if (difference.kind() != CoArrayKind::difference) {
    throw UsageError("sparseness: expects a difference co-array");
  }
  std::int64_t mass = 0;
  for (const auto& [v, w] : difference.weights())
    if (v.squared_norm() == dist.value) mass += w;
  return mass / 2;
}

inline std::int64_t sparseness(const ElementSet& d, SquaredDistance dist) {
  return sparseness(difference_coarray(d), dist);
}

inline std::int64_t sparseness(const ElementSet& d, double dist) {
  const auto sq = to_squared_distance(dist);
  return sq ? sparseness(d, *sq) : 0;
}

struct SparsenessEntry {
  SquaredDistance distance;
  std::int64_t count = 0;
};

using SparsenessProfile = std::vector<SparsenessEntry>;

/// Every grid-realizable distance a^2 + b^2 up to max_dist, zero counts
/// included, in increasing order.
inline SparsenessProfile sparseness_profile(const ElementSet& d, double max_dist) {
  if (!(max_dist >= 1.0)) throw UsageError("sparseness_profile: max_dist must be >= 1");
  const auto limit = static_cast<std::int64_t>(std::floor(max_dist * max_dist + 1e-9));
  std::vector<bool> realizable(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t a = 0; a * a <= limit; ++a)
    for (std::int64_t b = a; a * a + b * b <= limit; ++b) realizable[a * a + b * b] = true;

  std::vector<std::int64_t> mass(static_cast<std::size_t>(limit) + 1, 0);
  const CoArray diffs = difference_coarray(d);
  for (const auto& [v, w] : diffs.weights())
    if (auto s = v.squared_norm(); s <= limit) mass[s] += w;

  SparsenessProfile out;
  for (std::int64_t s = 1; s <= limit; ++s)
    if (realizable[s]) out.push_back({SquaredDistance{s}, mass[s] / 2});
  return out;
}

/// (shorter side + 1) / (longer side + 1).
inline double aspect_ratio(int lx, int ly) {
  if (lx < 0 || ly < 0) throw UsageError("aspect_ratio: dimensions must be non-negative");
  const int lo = std::min(lx, ly);
  const int hi = std::max(lx, ly);
  return static_cast<double>(lo + 1) / static_cast<double>(hi + 1);
}

namespace detail {
inline void require_aspect_ratio(double rho, const char* who) {
  if (!(rho > 0.0 && rho <= 1.0)) {
    throw std::domain_error(std::string(who) + ": aspect ratio must lie in (0, 1], got " + std::to_string(rho));
  }
}
}  // namespace detail

/// Large-aperture redundancy of the CRA (and BA) at aspect ratio rho.
inline double asymptotic_redundancy_cra(double rho) {
  detail::require_aspect_ratio(rho, "asymptotic_redundancy_cra");
  return (rho + 1.0) * (rho + 1.0) / (2.0 * rho);
}

/// Element count relative to an array reaching asymptotic redundancy 2 for
/// any aspect ratio.
inline double element_redundancy(double rho) {
  detail::require_aspect_ratio(rho, "element_redundancy");
  return (rho + 1.0) / (2.0 * std::sqrt(rho));
}

/// Summary reported by `analyze`.
struct ArrayMetrics {
  std::size_t n = 0;
  Rational redundancy;
  bool contiguous_sum = false;
  bool contiguous_diff = false;
  std::int64_t s1 = 0;
  std::int64_t s_sqrt2 = 0;
  std::int64_t s2 = 0;
  double aspect_ratio = 1.0;
};

inline ArrayMetrics analyze(const ElementSet& d) {
  const CoArray diffs = difference_coarray(d);
  ArrayMetrics m;
  m.n = d.size();
  m.redundancy = redundancy_exact(d);
  m.contiguous_sum = has_contiguous_sum_coarray(d);
  m.contiguous_diff = is_contiguous(diffs, d.lx(), d.ly());
  m.s1 = sparseness(diffs, SquaredDistance{1});
  m.s_sqrt2 = sparseness(diffs, SquaredDistance{2});
  m.s2 = sparseness(diffs, SquaredDistance{4});
  m.aspect_ratio = aspect_ratio(d.lx(), d.ly());
  return m;
}

}  // namespace sparray
