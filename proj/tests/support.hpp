// Test-only helpers: random instances and brute-force references that do
// not go through the library's algorithms.

#ifndef HVBOX_TESTS_SUPPORT_HPP
#define HVBOX_TESTS_SUPPORT_HPP

#include <algorithm>
#include <set>
#include <span>
#include <vector>

#include "hvbox/hvbox.hpp"

namespace hvbox::testing {

inline std::vector<Point> make_points(std::initializer_list<std::vector<double>> rows) {
  std::vector<Point> out;
  for (const auto& r : rows) out.emplace_back(r, out.size());
  return out;
}

inline std::vector<Point> staircase() { return make_points({{1, 5}, {2, 3}, {4, 2}, {6, 1}}); }

/// Random stable set of exactly n points of type C, X or L (chosen by seed).
inline Instance random_instance(std::uint64_t seed, std::size_t p, std::size_t n) {
  InstanceSpec spec;
  spec.type = static_cast<InstanceType>(seed % 3);
  spec.p = p;
  spec.n = n;
  spec.seed = seed;
  return gen_cxl(spec);
}

/**
 * Random stable set with many tied coordinates: values drawn from a small
 * integer grid, then filtered for nondominance.
 */
inline std::vector<Point> tied_points(std::uint64_t seed, std::size_t p, std::size_t n, int levels) {
  SplitMix64 rng(seed);
  std::vector<Point> raw;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> z(p);
    for (auto& v : z) v = static_cast<double>(1 + rng.below(static_cast<std::uint64_t>(levels)));
    raw.emplace_back(std::move(z), i);
  }
  auto kept = filter_nondominated(raw);
  for (std::size_t i = 0; i < kept.size(); ++i) kept[i].id = i;
  return kept;
}

/// u-vectors as a sorted multiset, for order-independent comparison.
inline std::vector<std::vector<double>> sorted_us(std::span<const LocalUpperBound> lubs) {
  std::vector<std::vector<double>> us;
  for (const auto& l : lubs) us.push_back(l.u);
  std::sort(us.begin(), us.end());
  return us;
}

/**
 * Maximal points u of [0, ref] whose open lower box [0, u) holds no point.
 * Every coordinate of such a u is a point coordinate or ref_j, so the
 * candidates are the grid of those values.
 */
inline std::vector<std::vector<double>> brute_force_upper_bounds(std::span<const Point> pts,
                                                                 std::span<const double> ref) {
  const std::size_t p = ref.size();
  std::vector<std::vector<double>> grid(p);
  for (std::size_t j = 0; j < p; ++j) {
    for (const auto& z : pts) grid[j].push_back(z[j]);
    grid[j].push_back(ref[j]);
    std::sort(grid[j].begin(), grid[j].end());
    grid[j].erase(std::unique(grid[j].begin(), grid[j].end()), grid[j].end());
  }
  auto empty_box = [&](const std::vector<double>& u) {
    for (const auto& z : pts) {
      bool inside = true;
      for (std::size_t j = 0; j < p && inside; ++j) inside = z[j] < u[j];
      if (inside) return false;
    }
    return true;
  };
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> idx(p, 0);
  std::vector<double> u(p);
  while (true) {
    for (std::size_t j = 0; j < p; ++j) u[j] = grid[j][idx[j]];
    if (empty_box(u)) {
      bool maximal = true;
      for (std::size_t j = 0; j < p && maximal; ++j) {
        if (idx[j] + 1 < grid[j].size()) {
          auto v = u;
          v[j] = grid[j][idx[j] + 1];
          maximal = !empty_box(v);
        }
      }
      if (maximal) out.push_back(u);
    }
    std::size_t j = 0;
    while (j < p && ++idx[j] == grid[j].size()) idx[j++] = 0;
    if (j == p) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Handles of `pool` whose u is strictly above z on the first `dims` components.
inline std::set<LubHandle> linear_scan(const LubPool& pool, std::span<const double> z, std::size_t dims) {
  std::set<LubHandle> out;
  for (LubHandle h = 0; h < pool.capacity(); ++h) {
    if (!pool.live(h)) continue;
    const auto u = pool.u(h);
    bool below = true;
    for (std::size_t j = 0; j < dims && below; ++j) below = z[j] < u[j];
    if (below) out.insert(h);
  }
  return out;
}

/**
 * Fills a pool with random bounds, removes a random third, then compares
 * collect_dominated of Index against linear_scan on `queries` random points.
 * Returns the number of queries whose answers differ.
 */
template <class MakeIndex>
std::size_t index_disagreements(std::uint64_t seed, std::size_t p, std::size_t bounds, std::size_t queries,
                                MakeIndex&& make_index) {
  SplitMix64 rng(seed);
  LubPool pool(p);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < bounds; ++i) {
    std::vector<double> z(p);
    for (auto& v : z) v = rng.uniform_open();
    pts.emplace_back(std::move(z), i);
  }
  auto index = make_index(pool, std::span<const Point>(pts));
  const std::size_t dims = p;
  std::vector<LubHandle> handles;
  for (std::size_t i = 0; i < bounds; ++i) {
    const LubHandle h = pool.acquire();
    auto u = pool.u(h);
    for (std::size_t j = 0; j < p; ++j) {
      // Reuse point coordinates half of the time so ties with queries occur.
      u[j] = rng.below(2) == 0 ? pts[rng.below(bounds)][j] : rng.uniform_open();
    }
    index.insert(h);
    handles.push_back(h);
  }
  for (LubHandle h : handles) {
    if (rng.below(3) == 0) {
      index.remove(h);
      pool.release(h);
    }
  }
  std::size_t bad = 0;
  std::vector<LubHandle> got;
  for (std::size_t q = 0; q < queries; ++q) {
    std::vector<double> z(p);
    for (std::size_t j = 0; j < p; ++j) z[j] = rng.below(4) == 0 ? pts[rng.below(bounds)][j] : rng.uniform_open();
    got.clear();
    index.collect_dominated(z, got);
    const std::set<LubHandle> got_set(got.begin(), got.end());
    if (got_set.size() != got.size() || got_set != linear_scan(pool, z, dims)) ++bad;
  }
  return bad;
}

}  // namespace hvbox::testing

#endif  // HVBOX_TESTS_SUPPORT_HPP
