/**
 * @file wfg.hpp
 * @brief Instrumented WFG baselines.
 *
 * All variants compute V(N + z) = V(N) + V({z}) - V(N'), where the limit set
 * N' is the nondominated subset of { pmax(z, y) : y in N }.
 *
 *  - wfg_basic recurses on N' in the same dimension.
 *  - wfg_sliced processes points in nondecreasing order of the last
 *    component, so every point of N' shares z's last component and V(N')
 *    is (ref_p - z_p) times a (p-1)-dimensional hypervolume. Two-dimensional
 *    subproblems are solved by a linear staircase sweep.
 *  - wfg_incremental processes points in arrival order; each limit set is a
 *    full p-dimensional subproblem handed to the sliced recursion.
 */

#ifndef HVBOX_WFG_HPP
#define HVBOX_WFG_HPP

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "core.hpp"

namespace hvbox {

struct WfgCounters {
  /// Calls of the recursion, keyed by the dimension of their subproblem.
  std::map<std::size_t, std::size_t> recursive_calls_by_dim;
  /// Raw pmax outputs, before the nondominance filter.
  std::size_t limitset_points_generated = 0;
  /// Two-dimensional sweeps, keyed by their number of points.
  std::map<std::size_t, std::size_t> base2d_calls_by_size;

  [[nodiscard]] std::size_t calls(std::size_t dim) const {
    const auto it = recursive_calls_by_dim.find(dim);
    return it == recursive_calls_by_dim.end() ? 0 : it->second;
  }
  [[nodiscard]] std::size_t total_calls() const {
    std::size_t s = 0;
    for (const auto& [d, c] : recursive_calls_by_dim) s += c;
    return s;
  }
};

struct WfgResult {
  double volume = 0.0;
  WfgCounters counters;
  /// wfg_incremental only: hypervolume after each arrival.
  std::vector<double> prefix_volumes;
};

/// Componentwise maximum.
inline Point pmax(const Point& a, const Point& b) {
  detail::require_same_dim(a.coords, b.coords);
  Point out(a.coords, std::max(a.id, b.id));
  for (std::size_t j = 0; j < out.dim(); ++j) out[j] = std::max(a[j], b[j]);
  return out;
}

namespace detail {

/// Row-major block of same-dimension points.
struct PointBlock {
  std::size_t dim = 0;
  std::vector<double> data;

  PointBlock() = default;
  explicit PointBlock(std::size_t d) : dim(d) {}

  [[nodiscard]] std::size_t size() const { return dim == 0 ? 0 : data.size() / dim; }
  [[nodiscard]] std::span<const double> row(std::size_t i) const { return {data.data() + i * dim, dim}; }
  void push(std::span<const double> z) { data.insert(data.end(), z.begin(), z.end()); }

  static PointBlock from(std::span<const Point> pts, std::size_t d) {
    PointBlock b(d);
    b.data.reserve(pts.size() * d);
    for (const auto& z : pts) b.push(z.coords);
    return b;
  }
};

inline bool weakly_below(const double* a, const double* b, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

/**
 * Nondominated subset, sorted by the last component (ties lexicographic).
 * In that order a point can only be weakly dominated by an earlier one.
 */
inline PointBlock nondominated_sorted(const PointBlock& in) {
  const std::size_t d = in.dim;
  const std::size_t n = in.size();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    const double* x = in.data.data() + a * d;
    const double* y = in.data.data() + b * d;
    if (x[d - 1] != y[d - 1]) return x[d - 1] < y[d - 1];
    for (std::size_t j = 0; j + 1 < d; ++j) {
      if (x[j] != y[j]) return x[j] < y[j];
    }
    return a < b;
  });
  PointBlock out(d);
  out.data.reserve(in.data.size());
  for (std::uint32_t i : order) {
    const double* z = in.data.data() + static_cast<std::size_t>(i) * d;
    bool covered = false;
    // Recently kept points are the likeliest dominators.
    for (std::size_t k = out.size(); k-- > 0;) {
      if (weakly_below(out.data.data() + k * d, z, d)) {
        covered = true;
        break;
      }
    }
    if (!covered) out.data.insert(out.data.end(), z, z + d);
  }
  return out;
}

/// Limit set of rows [0, count) of `pts` against z, over the first `d` components.
inline PointBlock limit_block(const PointBlock& pts, std::size_t count, std::span<const double> z, std::size_t d,
                              WfgCounters& counters) {
  PointBlock raw(d);
  raw.data.resize(count * d);
  for (std::size_t i = 0; i < count; ++i) {
    const double* y = pts.data.data() + i * pts.dim;
    double* q = raw.data.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) q[j] = std::max(y[j], z[j]);
  }
  counters.limitset_points_generated += count;
  return nondominated_sorted(raw);
}

/// Stable 2-D set sorted by component 1 ascending (so component 0 descends).
inline double sweep_2d(const PointBlock& pts, std::span<const double> ref) {
  double v = 0.0;
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto z = pts.row(i);
    const double next = i + 1 < n ? pts.row(i + 1)[1] : ref[1];
    v += (ref[0] - z[0]) * (next - z[1]);
  }
  return v;
}

/// Hypervolume of a stable block sorted by its last component.
inline double sliced(const PointBlock& pts, std::span<const double> ref, WfgCounters& counters) {
  const std::size_t d = pts.dim;
  ++counters.recursive_calls_by_dim[d];
  const std::size_t n = pts.size();
  if (n == 0) return 0.0;
  if (d == 2) {
    ++counters.base2d_calls_by_size[n];
    return sweep_2d(pts, ref);
  }
  double v = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto z = pts.row(i);
    double exclusive = point_volume(z, ref);
    if (i > 0) {
      const PointBlock limit = limit_block(pts, i, z, d - 1, counters);
      exclusive -= (ref[d - 1] - z[d - 1]) * sliced(limit, ref.first(d - 1), counters);
    }
    v += exclusive;
  }
  return v;
}

inline double basic(const PointBlock& pts, std::span<const double> ref, WfgCounters& counters) {
  ++counters.recursive_calls_by_dim[pts.dim];
  double v = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto z = pts.row(i);
    double exclusive = point_volume(z, ref);
    if (i > 0) exclusive -= basic(limit_block(pts, i, z, pts.dim, counters), ref, counters);
    v += exclusive;
  }
  return v;
}

}  // namespace detail

/**
 * @brief Nondominated subset of { pmax(z, y) : y in N }, sorted by the last
 * component. Adds |N| to counters.limitset_points_generated.
 */
inline std::vector<Point> limit_set(std::span<const Point> set, const Point& z, WfgCounters& counters) {
  const std::size_t d = z.dim();
  const auto block = detail::limit_block(detail::PointBlock::from(set, d), set.size(), z.coords, d, counters);
  std::vector<Point> out;
  out.reserve(block.size());
  for (std::size_t i = 0; i < block.size(); ++i) {
    const auto r = block.row(i);
    out.emplace_back(std::vector<double>(r.begin(), r.end()), i);
  }
  return out;
}

/// Basic recursion in the full dimension, points taken in the given order.
inline WfgResult wfg_basic(std::span<const Point> points, std::span<const double> ref) {
  WfgResult r;
  if (points.empty()) return r;
  r.volume = detail::basic(detail::PointBlock::from(points, ref.size()), ref, r.counters);
  return r;
}

/// Sliced recursion; the sort component is always the last one.
inline WfgResult wfg_sliced(std::span<const Point> points, std::span<const double> ref) {
  WfgResult r;
  std::vector<Point> sorted(points.begin(), points.end());
  const std::size_t last = ref.size() - 1;
  std::stable_sort(sorted.begin(), sorted.end(), [last](const Point& a, const Point& b) { return a[last] < b[last]; });
  r.volume = detail::sliced(detail::PointBlock::from(sorted, ref.size()), ref, r.counters);
  return r;
}

/**
 * @brief Arrival-order variant. Processing order acts as an extra sorted
 * component, so the limit set of each arrival is a p-dimensional
 * subproblem solved by the sliced recursion.
 */
inline WfgResult wfg_incremental(std::span<const Point> points, std::span<const double> ref) {
  WfgResult r;
  const std::size_t p = ref.size();
  detail::PointBlock seen(p);
  double running = 0.0;
  r.prefix_volumes.reserve(points.size());
  for (const auto& z : points) {
    for (std::size_t i = 0; i < seen.size(); ++i) {
      const auto y = seen.row(i);
      if (weakly_dominates(y, std::span(z.coords)) || weakly_dominates(std::span(z.coords), y)) {
        throw StabilityError("point " + detail::format_point(z.coords) + " and earlier point " +
                             detail::format_point(y) + " are not mutually nondominated");
      }
    }
    double exclusive = point_volume(z.coords, ref);
    if (seen.size() > 0) {
      const auto limit = detail::limit_block(seen, seen.size(), z.coords, p, r.counters);
      exclusive -= detail::sliced(limit, ref, r.counters);
    }
    running += exclusive;
    r.prefix_volumes.push_back(running);
    seen.push(z.coords);
  }
  r.volume = running;
  return r;
}

}  // namespace hvbox

#endif  // HVBOX_WFG_HPP
