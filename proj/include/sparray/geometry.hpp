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
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sparray/errors.hpp"

namespace sparray {

/// Integer position on the normalized half-wavelength grid. Used both for
/// physical elements and for co-array points.
struct GridPoint {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
  friend constexpr GridPoint operator+(GridPoint a, GridPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr GridPoint operator-(GridPoint a, GridPoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr GridPoint operator-(GridPoint a) { return {-a.x, -a.y}; }

  constexpr std::int64_t squared_norm() const {
    return std::int64_t{x} * x + std::int64_t{y} * y;
  }
};

inline std::string to_string(GridPoint p) {
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

/// A physical array: distinct grid points inside the aperture {0:lx}x{0:ly}.
/// Elements are kept sorted lexicographically, which fixes the element
/// numbering used by every matrix built from the set.
class ElementSet {
 public:
  ElementSet(int lx, int ly, std::vector<GridPoint> elements) : lx_(lx), ly_(ly), elements_(std::move(elements)) {
    if (lx_ < 0 || ly_ < 0) {
      throw UsageError("aperture bounds must be non-negative, got lx=" + std::to_string(lx_) +
                       " ly=" + std::to_string(ly_));
    }
    if (elements_.empty()) throw UsageError("element set must contain at least one element");
    std::sort(elements_.begin(), elements_.end());
    if (auto dup = std::adjacent_find(elements_.begin(), elements_.end()); dup != elements_.end()) {
      throw UsageError("duplicate element " + to_string(*dup));
    }
    for (const auto& p : elements_) {
      if (!in_aperture(p)) {
        throw UsageError("element " + to_string(p) + " outside aperture {0:" + std::to_string(lx_) + "}x{0:" +
                         std::to_string(ly_) + "}");
      }
    }
  }

  int lx() const noexcept { return lx_; }
  int ly() const noexcept { return ly_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<GridPoint>& elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }
  const GridPoint& operator[](std::size_t i) const { return elements_[i]; }

  bool contains(GridPoint p) const { return std::binary_search(elements_.begin(), elements_.end(), p); }

  bool in_aperture(GridPoint p) const { return p.x >= 0 && p.x <= lx_ && p.y >= 0 && p.y <= ly_; }

  /// Copy without `p`; throws if that would leave the set empty.
  ElementSet without(GridPoint p) const {
    std::vector<GridPoint> rest;
    rest.reserve(elements_.size());
    std::copy_if(elements_.begin(), elements_.end(), std::back_inserter(rest), [&](GridPoint q) { return q != p; });
    return ElementSet(lx_, ly_, std::move(rest));
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  int lx_;
  int ly_;
  std::vector<GridPoint> elements_;
};

enum class CoArrayKind { sum, difference };

/// Sparse multiplicity map of a sum or difference co-array. Multiplicities
/// count ordered element pairs, so the total mass is always N^2.
class CoArray {
 public:
  CoArray(CoArrayKind kind, std::map<GridPoint, std::int64_t> weights) : kind_(kind), weights_(std::move(weights)) {}

  CoArrayKind kind() const noexcept { return kind_; }
  const std::map<GridPoint, std::int64_t>& weights() const noexcept { return weights_; }
  std::size_t support_size() const noexcept { return weights_.size(); }

  std::int64_t multiplicity(GridPoint p) const {
    auto it = weights_.find(p);
    return it == weights_.end() ? 0 : it->second;
  }

  std::int64_t total_multiplicity() const {
    std::int64_t total = 0;
    for (const auto& [p, w] : weights_) total += w;
    return total;
  }

 private:
  CoArrayKind kind_;
  std::map<GridPoint, std::int64_t> weights_;
};

namespace detail {

// Dense accumulation over the bounding box, then compaction. The box for a
// sum co-array is {0:2lx}x{0:2ly}; for a difference co-array it is
// {-lx:lx}x{-ly:ly}, shifted by (lx, ly) into non-negative indices.
template <typename Combine>
CoArray accumulate_pairs(const ElementSet& d, CoArrayKind kind, GridPoint offset, Combine combine) {
  const int width = 2 * d.lx() + 1;
  const int height = 2 * d.ly() + 1;
  std::vector<std::int64_t> dense(static_cast<std::size_t>(width) * height, 0);
  for (const auto& a : d) {
    for (const auto& b : d) {
      const GridPoint c = combine(a, b) + offset;
      ++dense[static_cast<std::size_t>(c.y) * width + c.x];
    }
  }
  std::map<GridPoint, std::int64_t> weights;
  for (int x = 0; x < width; ++x) {
    for (int y = 0; y < height; ++y) {
      if (auto w = dense[static_cast<std::size_t>(y) * width + x]; w > 0) {
        weights.emplace_hint(weights.end(), GridPoint{x, y} - offset, w);
      }
    }
  }
  return CoArray(kind, std::move(weights));
}

}  // namespace detail

/// Multiplicity of every pairwise sum d_n + d_m over ordered pairs (n, m).
inline CoArray sum_coarray(const ElementSet& d) {
  return detail::accumulate_pairs(d, CoArrayKind::sum, {0, 0}, [](GridPoint a, GridPoint b) { return a + b; });
}

/// Multiplicity of every pairwise difference d_m - d_n over ordered pairs.
inline CoArray difference_coarray(const ElementSet& d) {
  return detail::accumulate_pairs(d, CoArrayKind::difference, {d.lx(), d.ly()},
                                  [](GridPoint a, GridPoint b) { return b - a; });
}

/// True iff the support fills the full rectangle implied by (lx, ly):
/// {0:2lx}x{0:2ly} for a sum co-array, {-lx:lx}x{-ly:ly} for a difference one.
inline bool is_contiguous(const CoArray& c, int lx, int ly) {
  const std::int64_t cells = std::int64_t{2 * lx + 1} * (2 * ly + 1);
  if (static_cast<std::int64_t>(c.support_size()) != cells) return false;
  const int x0 = c.kind() == CoArrayKind::sum ? 0 : -lx;
  const int y0 = c.kind() == CoArrayKind::sum ? 0 : -ly;
  // Equal cardinality, so it suffices that every support point is inside.
  return std::all_of(c.weights().begin(), c.weights().end(), [&](const auto& kv) {
    const GridPoint p = kv.first;
    return p.x >= x0 && p.x <= x0 + 2 * lx && p.y >= y0 && p.y <= y0 + 2 * ly;
  });
}

inline bool has_contiguous_sum_coarray(const ElementSet& d) { return is_contiguous(sum_coarray(d), d.lx(), d.ly()); }

inline bool has_contiguous_difference_coarray(const ElementSet& d) {
  return is_contiguous(difference_coarray(d), d.lx(), d.ly());
}

/// Point reflection through the aperture center: (x, y) -> (lx - x, ly - y).
inline GridPoint mirror(GridPoint p, int lx, int ly) { return {lx - p.x, ly - p.y}; }

/// True iff the set is invariant under point reflection through the center of
/// its aperture. The center may be half-integral.
inline bool is_mirror_symmetric(const ElementSet& d) {
  return std::all_of(d.begin(), d.end(), [&](GridPoint p) { return d.contains(mirror(p, d.lx(), d.ly())); });
}

/// Outcome of comparing the shifted difference multiplicities with the sum
/// multiplicities. `violation` holds the first sum co-array point (in
/// lexicographic order) where they disagree.
struct ShiftEqualityReport {
  bool equal = true;
  std::optional<GridPoint> violation;
  std::int64_t sum_multiplicity = 0;
  std::int64_t difference_multiplicity = 0;

  explicit operator bool() const noexcept { return equal; }
};

/// Checks v_diff(v - (lx, ly)) == v_sum(v) for every v in {0:2lx}x{0:2ly}.
/// Holds for every mirror-symmetric set.
inline ShiftEqualityReport multiplicity_shift_report(const ElementSet& d) {
  const CoArray sums = sum_coarray(d);
  const CoArray diffs = difference_coarray(d);
  const GridPoint shift{d.lx(), d.ly()};
  for (int x = 0; x <= 2 * d.lx(); ++x) {
    for (int y = 0; y <= 2 * d.ly(); ++y) {
      const GridPoint v{x, y};
      const auto s = sums.multiplicity(v);
      const auto t = diffs.multiplicity(v - shift);
      if (s != t) return {false, v, s, t};
    }
  }
  return {};
}

inline bool multiplicity_shift_equal(const ElementSet& d) { return multiplicity_shift_report(d).equal; }

}  // namespace sparray
