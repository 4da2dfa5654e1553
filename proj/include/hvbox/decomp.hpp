/**
 * @file decomp.hpp
 * @brief Box partition of the dominated region and the HBDA drivers.
 *
 * Every local upper bound u owns the box
 *
 *   B(u) = [z^1_1(u), ref_1] x prod_{j >= 2} [max_{k < j} z^k_j(u), u_j)
 *
 * and the boxes over U(N) partition the dominated region, so the
 * hypervolume is the sum of their volumes. hbda_ni() builds U(N) with the
 * streaming nonincremental engine, hbda_i() with the incremental one.
 */

#ifndef HVBOX_DECOMP_HPP
#define HVBOX_DECOMP_HPP

#include <algorithm>
#include <cassert>
#include <span>
#include <vector>

#include "core.hpp"
#include "lub.hpp"
#include "spatial.hpp"
#include "store.hpp"

namespace hvbox {

/// Axis-parallel box, closed in component 0 and half-open [lo, hi) elsewhere.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;

  [[nodiscard]] std::size_t dim() const { return lower.size(); }

  [[nodiscard]] double volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < lower.size(); ++j) v *= upper[j] - lower[j];
    return v;
  }

  [[nodiscard]] bool contains(std::span<const double> x) const {
    if (!(lower[0] <= x[0] && x[0] <= upper[0])) return false;
    for (std::size_t j = 1; j < lower.size(); ++j) {
      if (!(lower[j] <= x[j] && x[j] < upper[j])) return false;
    }
    return true;
  }
};

/// True when a and b share no point under the closed/half-open convention.
inline bool disjoint(const Box& a, const Box& b) {
  if (a.upper[0] < b.lower[0] || b.upper[0] < a.lower[0]) return true;
  for (std::size_t j = 1; j < a.dim(); ++j) {
    if (a.upper[j] <= b.lower[j] || b.upper[j] <= a.lower[j]) return true;
  }
  // An empty half-open extent makes the box itself empty.
  for (std::size_t j = 1; j < a.dim(); ++j) {
    if (a.upper[j] <= a.lower[j] || b.upper[j] <= b.lower[j]) return true;
  }
  return false;
}

inline Box box_of(const LubView& lub, const PointStore& store) {
  const std::size_t p = store.dim();
  Box b{std::vector<double>(p), std::vector<double>(p)};
  b.lower[0] = store.at(lub.defining[0], 0);
  b.upper[0] = store.ref()[0];
  for (std::size_t j = 1; j < p; ++j) {
    double lo = store.at(lub.defining[0], j);
    for (std::size_t k = 1; k < j; ++k) lo = std::max(lo, store.at(lub.defining[k], j));
    b.lower[j] = lo;
    b.upper[j] = lub.u[j];
  }
  for (std::size_t j = 0; j < p; ++j) assert(b.lower[j] <= b.upper[j]);
  return b;
}

/// Volume of box_of(lub, store) without materializing the box.
inline double box_volume(const LubView& lub, const PointStore& store) {
  const std::size_t p = store.dim();
  double v = store.ref()[0] - store.at(lub.defining[0], 0);
  for (std::size_t j = 1; j < p; ++j) {
    double lo = store.at(lub.defining[0], j);
    for (std::size_t k = 1; k < j; ++k) lo = std::max(lo, store.at(lub.defining[k], j));
    assert(lo <= lub.u[j]);
    v *= lub.u[j] - lo;
  }
  return v;
}

enum class IndexKind { kd_tree, sum_sorted, linear };

struct HbdaResult {
  double volume = 0.0;
  LubCounters counters;
  /// Local upper bounds whose boxes were summed, |U(N)|.
  std::size_t boxes = 0;
  /// hbda_i only: hypervolume after each insertion, in arrival order.
  std::vector<double> prefix_volumes;
};

namespace detail {

inline std::vector<Point> sorted_by_last(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  if (sorted.empty()) return sorted;
  const std::size_t last = sorted.front().dim() - 1;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [last](const Point& a, const Point& b) { return a[last] < b[last]; });
  for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i].id = i;
  return sorted;
}

template <class Engine, class OnBox>
HbdaResult run_ni(Engine& engine, std::span<const Point> sorted, OnBox& on_box) {
  HbdaResult r;
  const PointStore& store = engine.points();
  auto volume_of = [&](const LubView& v) {
    ++r.boxes;
    on_box(v, store);
    return box_volume(v, store);
  };
  for (const auto& z : sorted) engine.insert(std::span(z.coords), volume_of);
  r.volume = engine.finalize(volume_of);
  r.counters = engine.counters();
  return r;
}

}  // namespace detail

/**
 * @brief Nonincremental box decomposition.
 *
 * Sorts by the last component (stable, so ties keep input order), assigns
 * ids in processing order and streams the points through
 * NonincrementalUpperBounds. `on_box(view, store)` sees every local upper
 * bound of U(N) exactly once. Requires a stable set inside (0, ref).
 */
template <class OnBox>
HbdaResult hbda_ni(std::span<const Point> points, std::span<const double> ref, OnBox&& on_box,
                   IndexKind index = IndexKind::kd_tree) {
  std::vector<double> r(ref.begin(), ref.end());
  const auto sorted = detail::sorted_by_last(points);
  switch (index) {
    case IndexKind::sum_sorted: {
      NonincrementalUpperBounds<SumSortedList> engine(std::move(r));
      return detail::run_ni(engine, sorted, on_box);
    }
    case IndexKind::linear: {
      NonincrementalUpperBounds<LinearList> engine(std::move(r));
      return detail::run_ni(engine, sorted, on_box);
    }
    case IndexKind::kd_tree:
    default: {
      NonincrementalUpperBounds<KdCellIndex> engine(std::move(r), std::span<const Point>(sorted));
      return detail::run_ni(engine, sorted, on_box);
    }
  }
}

inline HbdaResult hbda_ni(std::span<const Point> points, std::span<const double> ref,
                          IndexKind index = IndexKind::kd_tree) {
  return hbda_ni(points, ref, [](const LubView&, const PointStore&) {}, index);
}

inline HbdaResult hbda_ni(const StableSet& set, IndexKind index = IndexKind::kd_tree) {
  return hbda_ni(std::span(set.points), std::span(set.ref), index);
}

/// Sum of box volumes over the current upper bound set, recomputed from scratch.
template <class Engine>
double total_box_volume(const Engine& engine) {
  CompensatedSum sum;
  engine.for_each_active([&](const LubView& v) { sum += box_volume(v, engine.points()); });
  return sum.value();
}

/// Boxes of the current upper bound set.
template <class Engine>
std::vector<Box> boxes_of(const Engine& engine) {
  std::vector<Box> out;
  engine.for_each_active([&](const LubView& v) { out.push_back(box_of(v, engine.points())); });
  return out;
}

/**
 * @brief Incremental box decomposition in arrival order.
 *
 * The running volume gains the boxes of new bounds and loses those of
 * replaced ones. prefix_volumes[i] is the hypervolume of the first i + 1
 * points. Throws StabilityError on an arrival that breaks stability.
 */
template <LubIndex Index = SumSortedList>
HbdaResult hbda_i(std::span<const Point> points, std::span<const double> ref) {
  IncrementalUpperBounds<Index> engine(std::vector<double>(ref.begin(), ref.end()));
  HbdaResult r;
  r.prefix_volumes.reserve(points.size());
  CompensatedSum running;
  const PointStore& store = engine.points();
  for (const auto& z : points) {
    engine.insert(
        std::span(z.coords), [&](const LubView& v) { running -= box_volume(v, store); },
        [&](const LubView& v) { running += box_volume(v, store); });
    r.prefix_volumes.push_back(running.value());
  }
  r.volume = running.value();
  r.counters = engine.counters();
  r.boxes = engine.active_count();
  return r;
}

inline HbdaResult hbda_i(const StableSet& set) { return hbda_i(std::span(set.points), std::span(set.ref)); }

}  // namespace hvbox

#endif  // HVBOX_DECOMP_HPP
