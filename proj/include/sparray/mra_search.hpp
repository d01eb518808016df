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

// Exact search for planar Minimum-Redundancy Arrays: the fewest elements in
// {0:lx}x{0:ly} whose sum co-array is the full rectangle {0:2lx}x{0:2ly}.
//
// The search is a depth-first include/exclude branch-and-bound over grid
// cells (or over mirror pairs of cells in symmetric mode), wrapped in
// iterative deepening on the element count. Pruning:
//   * the corner elements are forced in;
//   * a co-array point whose generating pairs have all been decided must
//     already be covered;
//   * an admissible bound on the number of further elements needed to cover
//     what is still uncovered;
//   * optionally, the running unit-spacing count against the incumbent.
// Only small apertures (a few dozen cells) finish in reasonable time.

#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "sparray/configurations.hpp"
#include "sparray/errors.hpp"
#include "sparray/geometry.hpp"
#include "sparray/metrics.hpp"

namespace sparray {

struct SearchSpec {
  int lx = 0;
  int ly = 0;
  bool enumerate_all = false;
  std::uint64_t max_nodes = 100'000'000;
  // Restrict to arrays invariant under point reflection through the center.
  bool require_symmetry = false;
  // Full enumeration is refused above this many decision variables (cells,
  // or mirror pairs in symmetric mode).
  int enumerate_variable_limit = 36;
};

struct SearchResult {
  int lx = 0;
  int ly = 0;
  // Size of the smallest feasible array found. Proven minimal only when
  // `exhaustive` is set; otherwise an upper bound.
  int optimal_n = 0;
  // Largest count for which infeasibility has been established, plus one.
  int lower_bound = 0;
  // Canonical representatives (lexicographically smallest image under the
  // rectangle's symmetry group), sorted.
  std::vector<ElementSet> solutions;
  // Number of labeled solutions visited by the search, before symmetry
  // reduction. Equals the sum of the representatives' orbit sizes.
  std::uint64_t raw_solution_count = 0;
  std::int64_t min_s1 = 0;
  std::vector<ElementSet> min_s1_solutions;
  std::uint64_t nodes_explored = 0;
  bool exhaustive = false;
  bool symmetric_only = false;
  // Set when the search pruned on unit spacings, so `solutions` only holds
  // the optima with the fewest unit spacings.
  bool s1_restricted = false;
};

// ---------------------------------------------------------------------------
// Symmetry group of the rectangle

/// The 4 (rectangle) or 8 (square) isometries of {0:lx}x{0:ly}.
inline std::vector<std::function<GridPoint(GridPoint)>> rectangle_symmetries(int lx, int ly) {
  std::vector<std::function<GridPoint(GridPoint)>> out = {
      [](GridPoint p) { return p; },
      [lx](GridPoint p) { return GridPoint{lx - p.x, p.y}; },
      [ly](GridPoint p) { return GridPoint{p.x, ly - p.y}; },
      [lx, ly](GridPoint p) { return GridPoint{lx - p.x, ly - p.y}; },
  };
  if (lx == ly) {
    const int l = lx;
    out.push_back([](GridPoint p) { return GridPoint{p.y, p.x}; });
    out.push_back([l](GridPoint p) { return GridPoint{l - p.y, p.x}; });
    out.push_back([l](GridPoint p) { return GridPoint{p.y, l - p.x}; });
    out.push_back([l](GridPoint p) { return GridPoint{l - p.y, l - p.x}; });
  }
  return out;
}

inline std::vector<ElementSet> symmetry_orbit(const ElementSet& d) {
  std::set<std::vector<GridPoint>> images;
  for (const auto& g : rectangle_symmetries(d.lx(), d.ly())) {
    std::vector<GridPoint> img;
    img.reserve(d.size());
    for (auto p : d) img.push_back(g(p));
    std::sort(img.begin(), img.end());
    images.insert(std::move(img));
  }
  std::vector<ElementSet> out;
  for (auto& img : images) out.emplace_back(d.lx(), d.ly(), img);
  return out;
}

inline ElementSet canonical_form(const ElementSet& d) { return symmetry_orbit(d).front(); }

// ---------------------------------------------------------------------------

/// Admissible bound on the elements still needed to make the sum co-array of
/// `partial` fill {0:2lx}x{0:2ly}: k new elements add at most k(k+1)/2 new-new
/// and k*N new-old pair sums, so return the least k covering the holes.
inline int coverage_lower_bound(std::int64_t uncovered, std::int64_t n_present) {
  int k = 0;
  while (std::int64_t{k} * (k + 1) / 2 + std::int64_t{k} * n_present < uncovered) ++k;
  return k;
}

inline int coverage_lower_bound(const ElementSet& partial, const SearchSpec& spec) {
  if (partial.lx() > spec.lx || partial.ly() > spec.ly) {
    throw UsageError("coverage_lower_bound: partial array exceeds the search aperture");
  }
  std::int64_t covered = 0;
  const CoArray sums = sum_coarray(partial);
  for (const auto& [p, w] : sums.weights()) {
    if (p.x <= 2 * spec.lx && p.y <= 2 * spec.ly) ++covered;
  }
  const std::int64_t total = std::int64_t{2 * spec.lx + 1} * (2 * spec.ly + 1);
  return coverage_lower_bound(total - covered, static_cast<std::int64_t>(partial.size()));
}

/// Convenience for the empty partial array.
inline int coverage_lower_bound_empty(const SearchSpec& spec) {
  return coverage_lower_bound(std::int64_t{2 * spec.lx + 1} * (2 * spec.ly + 1), 0);
}

namespace detail {

class CoverSearch {
 public:
  enum class Mode { first, all, min_s1 };
  enum class Outcome { found, none, truncated };

  CoverSearch(int lx, int ly, bool symmetric, std::uint64_t max_nodes)
      : lx_(lx), ly_(ly), width_(lx + 1), sum_width_(2 * lx + 1), symmetric_(symmetric), max_nodes_(max_nodes) {
    cells_ = (lx + 1) * (ly + 1);
    sums_ = (2 * lx + 1) * (2 * ly + 1);
    build_variables();
    build_schedule();
    build_neighbors();
    build_tables();
    build_symmetries();
    included_.assign(cells_, 0);
    cover_.assign(sums_, 0);
  }

  int variable_count() const { return static_cast<int>(vars_.size()); }
  int forced_count() const { return forced_cells_; }
  bool has_center() const { return has_center_; }
  std::uint64_t nodes() const { return nodes_; }

  // Collects solutions with exactly n elements.
  Outcome run(int n, Mode mode, std::int64_t s1_cap = LLONG_MAX) {
    target_ = n;
    mode_ = mode;
    best_s1_ = s1_cap;
    found_.clear();
    truncated_ = false;
    stop_ = false;
    members_.clear();
    std::fill(included_.begin(), included_.end(), 0);
    std::fill(cover_.begin(), cover_.end(), 0);
    uncovered_ = sums_;
    open_col_.assign(sum_width_, 2 * ly_ + 1);
    open_row_.assign(2 * ly_ + 1, sum_width_);
    col_members_.assign(lx_ + 1, 0);
    row_members_.assign(ly_ + 1, 0);
    s1_ = 0;
    break_symmetry_ = mode != Mode::all;
    if (n >= forced_cells_ && n <= cells_) dfs(0, LexScan(symmetries_.size(), 0));
    if (truncated_) return Outcome::truncated;
    return found_.empty() ? Outcome::none : Outcome::found;
  }

  struct Found {
    std::vector<GridPoint> elements;
    std::int64_t s1;
  };
  const std::vector<Found>& found() const { return found_; }

 private:
  struct Variable {
    std::array<int, 2> cells{};
    int size = 1;
    bool forced = false;
  };

  GridPoint coord(int cell) const { return {cell % width_, cell / width_}; }
  int sum_index(int a, int b) const {
    const GridPoint p = coord(a) + coord(b);
    return p.y * sum_width_ + p.x;
  }

  void build_tables() {
    pair_sum_.resize(static_cast<std::size_t>(cells_) * cells_);
    for (int a = 0; a < cells_; ++a)
      for (int b = 0; b < cells_; ++b) pair_sum_[a * cells_ + b] = sum_index(a, b);
    var_ring_.resize(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const GridPoint p = coord(vars_[i].cells[0]);
      var_ring_[i] = std::min({p.x, lx_ - p.x, p.y, ly_ - p.y});
    }
    // bound_[count * (sums_ + 1) + uncovered] = coverage_lower_bound(uncovered, count)
    bound_.resize(static_cast<std::size_t>(cells_ + 1) * (sums_ + 1));
    for (int n = 0; n <= cells_; ++n)
      for (int u = 0; u <= sums_; ++u) bound_[n * (sums_ + 1) + u] = coverage_lower_bound(u, n);
  }

  // Variable permutations induced by the rectangle's symmetries, identity
  // and duplicates dropped.
  void build_symmetries() {
    std::vector<int> var_of_cell(cells_, 0);
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (int k = 0; k < vars_[i].size; ++k) var_of_cell[vars_[i].cells[k]] = static_cast<int>(i);
    std::vector<std::function<GridPoint(GridPoint)>> maps = {
        [&](GridPoint p) { return GridPoint{lx_ - p.x, p.y}; },
        [&](GridPoint p) { return GridPoint{p.x, ly_ - p.y}; },
        [&](GridPoint p) { return GridPoint{lx_ - p.x, ly_ - p.y}; },
    };
    if (lx_ == ly_) {
      maps.push_back([](GridPoint p) { return GridPoint{p.y, p.x}; });
      maps.push_back([&](GridPoint p) { return GridPoint{lx_ - p.y, ly_ - p.x}; });
      maps.push_back([&](GridPoint p) { return GridPoint{lx_ - p.y, p.x}; });
      maps.push_back([&](GridPoint p) { return GridPoint{p.y, ly_ - p.x}; });
    }
    std::set<std::vector<int>> seen;
    for (const auto& g : maps) {
      std::vector<int> perm(vars_.size());
      bool identity = true;
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        const GridPoint q = g(coord(vars_[i].cells[0]));
        perm[i] = var_of_cell[q.y * width_ + q.x];
        identity = identity && perm[i] == static_cast<int>(i);
      }
      if (!identity && seen.insert(perm).second) symmetries_.push_back(std::move(perm));
    }
  }

  void build_variables() {
    const ElementSet forced = corner_property_set(lx_, ly_);
    std::vector<char> is_forced(cells_, 0);
    for (auto p : forced) is_forced[p.y * width_ + p.x] = 1;
    forced_cells_ = static_cast<int>(forced.size());

    std::vector<Variable> free_vars;
    for (int c = 0; c < cells_; ++c) {
      Variable v;
      v.cells[0] = c;
      if (symmetric_) {
        const int m = cells_ - 1 - c;
        if (m < c) continue;
        if (m != c) {
          v.cells[1] = m;
          v.size = 2;
        } else {
          has_center_ = true;
        }
      }
      v.forced = is_forced[c] != 0;
      (v.forced ? vars_ : free_vars).push_back(v);
    }
    // Outer rings first, corners first within a ring: a co-array point on
    // ring t only involves element rings <= t, so its coverage is settled early.
    auto key = [&](const Variable& v) {
      const GridPoint p = coord(v.cells[0]);
      const int ring = std::min({p.x, lx_ - p.x, p.y, ly_ - p.y});
      const int corner = std::min(p.x, lx_ - p.x) + std::min(p.y, ly_ - p.y);
      return std::make_tuple(ring, corner, v.cells[0]);
    };
    std::stable_sort(free_vars.begin(), free_vars.end(),
                     [&](const Variable& a, const Variable& b) { return key(a) < key(b); });
    vars_.insert(vars_.end(), free_vars.begin(), free_vars.end());
  }

  // For every co-array point, the position after which all of its generating
  // pairs are decided; points are checked for coverage right there.
  void build_schedule() {
    std::vector<int> when(cells_, 0);
    for (int i = 0; i < static_cast<int>(vars_.size()); ++i)
      for (int k = 0; k < vars_[i].size; ++k) when[vars_[i].cells[k]] = i;
    std::vector<int> decided_at(sums_, -1);
    for (int a = 0; a < cells_; ++a)
      for (int b = a; b < cells_; ++b) {
        const int s = sum_index(a, b);
        decided_at[s] = std::max(decided_at[s], std::max(when[a], when[b]));
      }
    checks_.assign(vars_.size(), {});
    for (int s = 0; s < sums_; ++s) checks_[decided_at[s]].push_back(s);
    cells_after_.assign(vars_.size() + 1, 0);
    for (int i = static_cast<int>(vars_.size()) - 1; i >= 0; --i)
      cells_after_[i] = cells_after_[i + 1] + vars_[i].size;
  }

  void build_neighbors() {
    neighbors_.assign(cells_, {});
    for (int c = 0; c < cells_; ++c) {
      const GridPoint p = coord(c);
      for (GridPoint q : {GridPoint{p.x - 1, p.y}, GridPoint{p.x + 1, p.y}, GridPoint{p.x, p.y - 1},
                          GridPoint{p.x, p.y + 1}}) {
        if (q.x >= 0 && q.x <= lx_ && q.y >= 0 && q.y <= ly_) neighbors_[c].push_back(q.y * width_ + q.x);
      }
    }
  }

  void open_point(int s, int delta) {
    uncovered_ += delta;
    open_col_[s % sum_width_] += delta;
    open_row_[s / sum_width_] += delta;
  }

  void add(int c) {
    const int* row = &pair_sum_[c * cells_];
    for (int m : members_)
      if (cover_[row[m]]++ == 0) open_point(row[m], -1);
    if (cover_[row[c]]++ == 0) open_point(row[c], -1);
    ++col_members_[c % width_];
    ++row_members_[c / width_];
    for (int nb : neighbors_[c]) s1_ += included_[nb];
    members_.push_back(c);
    included_[c] = 1;
  }

  void remove(int c) {
    included_[c] = 0;
    members_.pop_back();
    for (int nb : neighbors_[c]) s1_ -= included_[nb];
    --col_members_[c % width_];
    --row_members_[c / width_];
    const int* row = &pair_sum_[c * cells_];
    if (--cover_[row[c]] == 0) open_point(row[c], +1);
    for (int m : members_)
      if (--cover_[row[m]] == 0) open_point(row[m], +1);
  }

  // Cells still undecided lie on rings >= r. For r >= 1 an open point in
  // co-array column r can then only pair a new cell of column r with a
  // member of column 0, and likewise for the other three sides, which bounds
  // the number of cells ring r still needs.
  int side_lower_bound(std::size_t pos) const {
    const int r = var_ring_[pos];
    if (r < 1 || 2 * r >= lx_ || 2 * r >= ly_) return 0;
    constexpr int kImpossible = 1 << 20;
    auto need = [](int open, int partners) {
      if (open == 0) return 0;
      return partners == 0 ? kImpossible : (open + partners - 1) / partners;
    };
    const int left = need(open_col_[r], col_members_[0]);
    const int right = need(open_col_[2 * lx_ - r], col_members_[lx_]);
    const int bottom = need(open_row_[r], row_members_[0]);
    const int top = need(open_row_[2 * ly_ - r], row_members_[ly_]);
    return std::max({left + right, bottom + top, left + right + bottom + top - 4});
  }

  bool decided_points_covered(int pos) const {
    for (int s : checks_[pos])
      if (cover_[s] == 0) return false;
    return true;
  }

  void record() {
    if (mode_ == Mode::min_s1) {
      if (s1_ > best_s1_) return;
      if (s1_ < best_s1_) {
        found_.clear();
        best_s1_ = s1_;
      }
    }
    Found f;
    f.s1 = s1_;
    for (int c : members_) f.elements.push_back(coord(c));
    std::sort(f.elements.begin(), f.elements.end());
    found_.push_back(std::move(f));
    if (mode_ == Mode::first) stop_ = true;
  }

  // Per symmetry, the first position not yet known to compare equal, or -1
  // once the current set is known to be lexicographically larger.
  using LexScan = std::vector<int>;

  // Keeps only sets that are lexicographically maximal among their images,
  // which leaves one representative of every orbit.
  bool lex_leader(std::size_t pos, LexScan& scan) const {
    const int decided = static_cast<int>(pos);
    for (std::size_t g = 0; g < symmetries_.size(); ++g) {
      int& i = scan[g];
      const std::vector<int>& perm = symmetries_[g];
      while (i >= 0 && i < decided && perm[i] < decided) {
        const char mine = included_[vars_[i].cells[0]];
        const char image = included_[vars_[perm[i]].cells[0]];
        if (mine < image) return false;
        i = mine > image ? -1 : i + 1;
      }
    }
    return true;
  }

  void dfs(std::size_t pos, LexScan scan) {
    if (stop_) return;
    if (break_symmetry_ && !lex_leader(pos, scan)) return;
    if (++nodes_ > max_nodes_) {
      truncated_ = stop_ = true;
      return;
    }
    const int count = static_cast<int>(members_.size());
    if (count == target_) {
      // Every remaining variable is excluded; only the still-undecided
      // co-array points could change, and they cannot gain coverage.
      if (uncovered_ == 0) record();
      return;
    }
    if (pos == vars_.size()) return;
    if (count + cells_after_[pos] < target_) return;
    if (bound_[count * (sums_ + 1) + uncovered_] > target_ - count) return;
    if (side_lower_bound(pos) > target_ - count) return;

    const Variable& v = vars_[pos];
    if (count + v.size <= target_) {
      for (int k = 0; k < v.size; ++k) add(v.cells[k]);
      const bool s1_ok = mode_ != Mode::min_s1 || s1_ <= best_s1_;
      if (s1_ok && decided_points_covered(pos)) dfs(pos + 1, scan);
      for (int k = v.size - 1; k >= 0; --k) remove(v.cells[k]);
    }
    if (!v.forced && decided_points_covered(pos)) dfs(pos + 1, scan);
  }

  int lx_, ly_, width_, sum_width_;
  bool symmetric_;
  std::uint64_t max_nodes_;
  int cells_ = 0;
  int sums_ = 0;
  int forced_cells_ = 0;
  bool has_center_ = false;

  std::vector<Variable> vars_;
  std::vector<std::vector<int>> checks_;
  std::vector<int> cells_after_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> pair_sum_;
  std::vector<int> var_ring_;
  std::vector<int> open_col_;
  std::vector<int> open_row_;
  std::vector<int> col_members_;
  std::vector<int> row_members_;
  std::vector<int> bound_;
  std::vector<std::vector<int>> symmetries_;
  bool break_symmetry_ = false;

  int target_ = 0;
  Mode mode_ = Mode::all;
  std::int64_t best_s1_ = LLONG_MAX;
  std::vector<char> included_;
  std::vector<int> members_;
  std::vector<int> cover_;
  int uncovered_ = 0;
  std::int64_t s1_ = 0;
  std::uint64_t nodes_ = 0;
  bool truncated_ = false;
  bool stop_ = false;
  std::vector<Found> found_;
};

// Known feasible arrays used as the incumbent when the budget runs out and
// as the starting point of the descent.
inline ElementSet feasible_incumbent(int lx, int ly, bool symmetric = false) {
  ElementSet best = make_ura(lx, ly);
  auto consider = [&](auto make) {
    try {
      const ElementSet d = make();
      if (d.size() < best.size() && has_contiguous_sum_coarray(d) && (!symmetric || is_mirror_symmetric(d))) {
        best = d;
      }
    } catch (const Error&) {
    }
  };
  consider([&] { return make_ba(lx, ly); });
  if (lx >= 2 && ly >= 2) consider([&] { return make_cra(lx, ly); });
  return best;
}

inline void finalize_solutions(SearchResult& r, const std::vector<CoverSearch::Found>& found) {
  std::set<std::vector<GridPoint>> canon;
  for (const auto& f : found) {
    canon.insert(canonical_form(ElementSet(r.lx, r.ly, f.elements)).elements());
  }
  r.raw_solution_count = found.size();
  r.solutions.clear();
  for (const auto& c : canon) r.solutions.emplace_back(r.lx, r.ly, c);
  r.min_s1 = LLONG_MAX;
  for (const auto& d : r.solutions) r.min_s1 = std::min(r.min_s1, sparseness(d, SquaredDistance{1}));
  r.min_s1_solutions.clear();
  for (const auto& d : r.solutions)
    if (sparseness(d, SquaredDistance{1}) == r.min_s1) r.min_s1_solutions.push_back(d);
}

inline SearchResult search_impl(const SearchSpec& spec, CoverSearch::Mode mode) {
  if (spec.lx < 0 || spec.ly < 0) throw UsageError("find_mra: dimensions must be non-negative");
  if (spec.max_nodes == 0) throw UsageError("find_mra: node budget must be positive");
  CoverSearch engine(spec.lx, spec.ly, spec.require_symmetry, spec.max_nodes);
  if (mode == CoverSearch::Mode::all && engine.variable_count() > spec.enumerate_variable_limit) {
    throw UsageError("find_mra: enumeration over " + std::to_string(engine.variable_count()) +
                     " decision variables exceeds the limit of " + std::to_string(spec.enumerate_variable_limit));
  }

  SearchResult r;
  r.lx = spec.lx;
  r.ly = spec.ly;
  r.symmetric_only = spec.require_symmetry;
  r.s1_restricted = mode == CoverSearch::Mode::min_s1;

  const ElementSet forced = corner_property_set(spec.lx, spec.ly);
  const int floor_n = static_cast<int>(forced.size()) + coverage_lower_bound(forced, spec);
  r.lower_bound = floor_n;

  // Adding an element (or, among symmetric sets, a mirror pair or the
  // centre) keeps the sum co-array contiguous, so below a feasible size
  // only the levels not implied by others need refuting.
  auto dominating_levels = [&](int top) {
    std::vector<int> levels;
    if (!spec.require_symmetry) {
      levels = {top - 1};
    } else if (!engine.has_center()) {
      levels = {top - 2};
    } else if (top % 2 == 0) {
      levels = {top - 1};
    } else {
      levels = {top - 1, top - 2};
    }
    std::erase_if(levels, [&](int n) { return n < floor_n; });
    return levels;
  };

  const ElementSet seed = feasible_incumbent(spec.lx, spec.ly, spec.require_symmetry);
  int top = static_cast<int>(seed.size());
  std::optional<CoverSearch::Found> witness;
  bool truncated = false;
  for (bool improved = true; improved && !truncated;) {
    improved = false;
    for (int n : dominating_levels(top)) {
      const auto outcome = engine.run(n, CoverSearch::Mode::first);
      if (outcome == CoverSearch::Outcome::truncated) {
        truncated = true;
        break;
      }
      if (outcome == CoverSearch::Outcome::found) {
        top = n;
        witness = engine.found().front();
        improved = true;
        break;
      }
    }
  }
  if (!truncated) {
    r.lower_bound = top;
    r.optimal_n = top;
    const std::int64_t seed_s1 = witness ? witness->s1 : sparseness(seed, SquaredDistance{1});
    if (mode == CoverSearch::Mode::first) {
      if (witness) {
        finalize_solutions(r, {*witness});
      } else {
        finalize_solutions(r, {CoverSearch::Found{seed.elements(), seed_s1}});
      }
      r.exhaustive = true;
      r.nodes_explored = engine.nodes();
      return r;
    }
    const auto full = engine.run(top, mode, mode == CoverSearch::Mode::min_s1 ? seed_s1 : LLONG_MAX);
    r.nodes_explored = engine.nodes();
    if (full != CoverSearch::Outcome::truncated) {
      finalize_solutions(r, engine.found());
      r.exhaustive = true;
      return r;
    }
  }
  // Budget exhausted: fall back to the smallest feasible array seen.
  r.nodes_explored = engine.nodes();
  r.exhaustive = false;
  const ElementSet incumbent = witness ? ElementSet(spec.lx, spec.ly, witness->elements) : seed;
  r.optimal_n = static_cast<int>(incumbent.size());
  r.solutions = {canonical_form(incumbent)};
  r.raw_solution_count = 0;
  r.min_s1 = sparseness(incumbent, SquaredDistance{1});
  r.min_s1_solutions = r.solutions;
  return r;
}

}  // namespace detail

/// Minimum element count with a contiguous sum co-array. With
/// `enumerate_all`, every optimal array up to the rectangle's symmetries.
inline SearchResult find_mra(const SearchSpec& spec) {
  return detail::search_impl(spec, spec.enumerate_all ? detail::CoverSearch::Mode::all
                                                      : detail::CoverSearch::Mode::first);
}

/// The optimal arrays with the fewest unit spacings, ties sorted by S(sqrt 2)
/// and then canonical order. Unit spacings only grow as elements are added,
/// so the final level is pruned against the best count found so far.
inline SearchResult min_unit_spacing_mra(const SearchSpec& spec) {
  SearchResult r = detail::search_impl(spec, detail::CoverSearch::Mode::min_s1);
  auto key = [](const ElementSet& d) {
    return std::make_pair(sparseness(d, SquaredDistance{2}), d.elements());
  };
  std::sort(r.min_s1_solutions.begin(), r.min_s1_solutions.end(),
            [&](const ElementSet& a, const ElementSet& b) { return key(a) < key(b); });
  return r;
}

struct Confirmed {};
struct Refuted {
  ElementSet witness;
};
struct Inconclusive {
  std::uint64_t nodes_explored = 0;
};
using MraVerdict = std::variant<Confirmed, Refuted, Inconclusive>;

/// Decides whether an array with a contiguous sum co-array uses the fewest
/// possible elements. A feasible set with N-1 elements exists iff one with
/// fewer does (supersets stay feasible), so a single level is searched.
inline MraVerdict verify_is_mra(const ElementSet& d, std::uint64_t max_nodes) {
  if (!has_contiguous_sum_coarray(d)) throw UsageError("verify_is_mra: the array's sum co-array is not contiguous");
  const int n = static_cast<int>(d.size());
  if (n <= 1) return Confirmed{};
  detail::CoverSearch engine(d.lx(), d.ly(), false, max_nodes);
  switch (engine.run(n - 1, detail::CoverSearch::Mode::first)) {
    case detail::CoverSearch::Outcome::found:
      return Refuted{ElementSet(d.lx(), d.ly(), engine.found().front().elements)};
    case detail::CoverSearch::Outcome::none: return Confirmed{};
    case detail::CoverSearch::Outcome::truncated: return Inconclusive{engine.nodes()};
  }
  return Inconclusive{engine.nodes()};
}

}  // namespace sparray
