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

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sparray/errors.hpp"
#include "sparray/geometry.hpp"

namespace sparray {

enum class ArrayFamily { ura, ba, cra };

inline std::string_view family_name(ArrayFamily f) {
  switch (f) {
    case ArrayFamily::ura: return "ura";
    case ArrayFamily::ba: return "ba";
    case ArrayFamily::cra: return "cra";
  }
  return "?";
}

inline std::optional<ArrayFamily> parse_family(std::string_view name) {
  if (name == "ura") return ArrayFamily::ura;
  if (name == "ba") return ArrayFamily::ba;
  if (name == "cra") return ArrayFamily::cra;
  return std::nullopt;
}

namespace detail {

inline void require_non_negative(int lx, int ly, std::string_view who) {
  if (lx < 0 || ly < 0) {
    throw UsageError(std::string(who) + ": dimensions must be non-negative, got " + std::to_string(lx) + "x" +
                     std::to_string(ly));
  }
}

inline ElementSet from_point_set(int lx, int ly, const std::set<GridPoint>& points) {
  return ElementSet(lx, ly, std::vector<GridPoint>(points.begin(), points.end()));
}

// One-dimensional row patterns of the concentric construction. For even L
// they are symmetric about L/2. For odd L the outer pattern gets an extra
// L-1 so the row still reaches both ends with unit steps; the opposite rows
// are obtained by point reflection instead of copying.
inline std::set<int> cra_row_pattern(int ring, int L) {
  std::set<int> out;
  switch (ring) {
    case 0:
      out = {0, L};
      for (int v = 1; v <= L - 1; v += 2) out.insert(v);
      if (L % 2 != 0) out.insert(L - 1);
      break;
    case 1:
      out = {0, 1, L - 1, L};
      break;
    default:
      for (int v = 2; v <= L - 2; v += 2) out.insert(v);
      break;
  }
  return out;
}

}  // namespace detail

/// Filled rectangle {0:lx}x{0:ly}, N = (lx+1)(ly+1).
inline ElementSet make_ura(int lx, int ly) {
  detail::require_non_negative(lx, ly, "make_ura");
  std::vector<GridPoint> pts;
  pts.reserve(static_cast<std::size_t>(lx + 1) * (ly + 1));
  for (int x = 0; x <= lx; ++x)
    for (int y = 0; y <= ly; ++y) pts.push_back({x, y});
  return ElementSet(lx, ly, std::move(pts));
}

/// Hollow perimeter of {0:lx}x{0:ly}. Degenerates to the URA when lx or
/// ly is below 2.
inline ElementSet make_ba(int lx, int ly) {
  detail::require_non_negative(lx, ly, "make_ba");
  std::vector<GridPoint> pts;
  for (int x = 0; x <= lx; ++x)
    for (int y = 0; y <= ly; ++y)
      if (x == 0 || x == lx || y == 0 || y == ly) pts.push_back({x, y});
  return ElementSet(lx, ly, std::move(pts));
}

/// Concentric Rectangular Array: two sparse interleaved rectangles two units
/// apart plus the corner blocks. For even dimensions this is
///
///   union over i in {0,1,2} of  D_i(lx) x {i, ly-i}  and  {i, lx-i} x D_i(ly)
///
/// with D_0(L) = {0,L} u {1:2:L-1}, D_1(L) = {0,1,L-1,L}, D_2(L) = {2:2:L-2}.
/// Odd dimensions use D_0(L) = {0,L} u {1:2:L-2} u {L-1} on the near side and
/// the point reflection of each near-side row/column on the far side.
///
/// Requires lx, ly >= 2. Throws InvariantViolation if the result does not have
/// a contiguous sum co-array. Building with SPARRAY_REJECT_ODD_CRA defined
/// turns odd dimensions into a UsageError.
inline ElementSet make_cra(int lx, int ly) {
  if (lx < 2 || ly < 2) {
    throw UsageError("make_cra: requires lx, ly >= 2, got " + std::to_string(lx) + "x" + std::to_string(ly));
  }
#ifdef SPARRAY_REJECT_ODD_CRA
  if (lx % 2 != 0 || ly % 2 != 0) {
    throw UsageError("make_cra: odd dimensions disabled in this build, got " + std::to_string(lx) + "x" +
                     std::to_string(ly));
  }
#endif
  std::set<GridPoint> pts;
  for (int ring = 0; ring <= 2; ++ring) {
    for (int x : detail::cra_row_pattern(ring, lx)) {
      pts.insert({x, ring});
      pts.insert(mirror({x, ring}, lx, ly));
    }
    for (int y : detail::cra_row_pattern(ring, ly)) {
      pts.insert({ring, y});
      pts.insert(mirror({ring, y}, lx, ly));
    }
  }
  // Rings overlap or fall outside tiny apertures; keep what fits.
  std::erase_if(pts, [&](GridPoint p) { return p.x < 0 || p.x > lx || p.y < 0 || p.y > ly; });
  ElementSet d = detail::from_point_set(lx, ly, pts);
  if (!has_contiguous_sum_coarray(d)) {
    throw InvariantViolation("make_cra: constructed " + std::to_string(lx) + "x" + std::to_string(ly) +
                             " array has a hole in its sum co-array");
  }
  return d;
}

inline ElementSet make_array(ArrayFamily family, int lx, int ly) {
  switch (family) {
    case ArrayFamily::ura: return make_ura(lx, ly);
    case ArrayFamily::ba: return make_ba(lx, ly);
    case ArrayFamily::cra: return make_cra(lx, ly);
  }
  throw UsageError("unknown array family");
}

/// Elements every array with a contiguous sum co-array must contain: three
/// per corner, plus the second element along each short edge so that the
/// co-array points adjacent to the far corners can be generated.
///
/// Points that fall outside the aperture (lx or ly below 2) are dropped, which
/// keeps the set a valid necessary condition for degenerate apertures too.
inline ElementSet corner_property_set(int lx, int ly) {
  detail::require_non_negative(lx, ly, "corner_property_set");
  std::set<GridPoint> pts;
  for (int x : {1, lx - 1})
    for (int y : {0, ly}) pts.insert({x, y});
  for (int x : {0, lx})
    for (int y : {0, 1, ly - 1, ly}) pts.insert({x, y});
  std::erase_if(pts, [&](GridPoint p) { return p.x < 0 || p.x > lx || p.y < 0 || p.y > ly; });
  return detail::from_point_set(lx, ly, pts);
}

inline bool satisfies_corner_property(const ElementSet& d) {
  const ElementSet required = corner_property_set(d.lx(), d.ly());
  return std::all_of(required.begin(), required.end(), [&](GridPoint p) { return d.contains(p); });
}

/// Elements whose removal opens a hole in the sum co-array.
inline std::vector<GridPoint> essential_elements(const ElementSet& d) {
  if (!has_contiguous_sum_coarray(d)) {
    throw UsageError("essential_elements: the array's sum co-array is not contiguous");
  }
  std::vector<GridPoint> out;
  if (d.size() == 1) return {d[0]};
  for (const auto& e : d) {
    if (!has_contiguous_sum_coarray(d.without(e))) out.push_back(e);
  }
  return out;
}

}  // namespace sparray
