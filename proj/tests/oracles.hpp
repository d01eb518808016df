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

// Brute-force reference implementations used as test oracles.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sparray/geometry.hpp"

namespace sparray::testing {

inline std::map<GridPoint, std::int64_t> naive_sums(const ElementSet& d) {
  std::map<GridPoint, std::int64_t> m;
  for (auto a : d)
    for (auto b : d) ++m[a + b];
  return m;
}

inline std::map<GridPoint, std::int64_t> naive_differences(const ElementSet& d) {
  std::map<GridPoint, std::int64_t> m;
  for (auto a : d)
    for (auto b : d) ++m[a - b];
  return m;
}

inline bool naive_sum_contiguous(const ElementSet& d) {
  const auto m = naive_sums(d);
  for (int x = 0; x <= 2 * d.lx(); ++x)
    for (int y = 0; y <= 2 * d.ly(); ++y)
      if (!m.count({x, y})) return false;
  return true;
}

inline ElementSet from_mask(int lx, int ly, std::uint64_t mask) {
  std::vector<GridPoint> pts;
  int bit = 0;
  for (int x = 0; x <= lx; ++x)
    for (int y = 0; y <= ly; ++y, ++bit)
      if (mask >> bit & 1U) pts.push_back({x, y});
  return ElementSet(lx, ly, std::move(pts));
}

struct NaiveMra {
  int n = -1;
  std::set<std::vector<GridPoint>> optima;
};

// Every subset of the aperture, smallest contiguous ones kept.
inline NaiveMra naive_mra(int lx, int ly) {
  const int cells = (lx + 1) * (ly + 1);
  NaiveMra best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << cells); ++mask) {
    const int k = __builtin_popcountll(mask);
    if (best.n >= 0 && k > best.n) continue;
    const ElementSet d = from_mask(lx, ly, mask);
    if (!naive_sum_contiguous(d)) continue;
    if (best.n < 0 || k < best.n) {
      best.n = k;
      best.optima.clear();
    }
    best.optima.insert(d.elements());
  }
  return best;
}

inline ElementSet random_subset(int lx, int ly, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::vector<GridPoint> pts;
  for (int x = 0; x <= lx; ++x)
    for (int y = 0; y <= ly; ++y)
      if (keep(rng)) pts.push_back({x, y});
  if (pts.empty()) pts.push_back({0, 0});
  return ElementSet(lx, ly, std::move(pts));
}

inline ElementSet random_mirror_symmetric(int lx, int ly, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution keep(p);
  std::set<GridPoint> pts;
  for (int x = 0; x <= lx; ++x)
    for (int y = 0; y <= ly; ++y) {
      const GridPoint q{x, y};
      const GridPoint m = mirror(q, lx, ly);
      if (m < q) continue;
      if (keep(rng)) {
        pts.insert(q);
        pts.insert(m);
      }
    }
  if (pts.empty()) {
    pts.insert({0, 0});
    pts.insert({lx, ly});
  }
  return ElementSet(lx, ly, std::vector<GridPoint>(pts.begin(), pts.end()));
}

}  // namespace sparray::testing
