/**
 * @file spatial.hpp
 * @brief Indexes answering "which local upper bounds does z strictly dominate?"
 *
 * Every index stores LubHandles into a LubPool and compares the first
 * `query_dims` components only. The nonincremental driver uses p - 1 query
 * dimensions because all of its active bounds share u_p = ref_p.
 *
 * An index type I satisfies LubIndex when it offers
 *   insert(h), remove(h), size(), and
 *   collect_dominated(z, out) -> number of strict dominance tests run,
 * appending to `out` exactly the resident handles h with z_j < u(h)_j for
 * every compared component j.
 */

#ifndef HVBOX_SPATIAL_HPP
#define HVBOX_SPATIAL_HPP

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include "store.hpp"

namespace hvbox {

template <class I>
concept LubIndex = requires(I idx, const I cidx, LubHandle h, std::span<const double> z, std::vector<LubHandle>& out) {
  idx.insert(h);
  idx.remove(h);
  { cidx.size() } -> std::convertible_to<std::size_t>;
  { cidx.collect_dominated(z, out) } -> std::convertible_to<std::size_t>;
};

namespace detail {

inline bool strictly_below(std::span<const double> z, std::span<const double> u, std::size_t dims) {
  for (std::size_t j = 0; j < dims; ++j) {
    if (!(z[j] < u[j])) return false;
  }
  return true;
}

}  // namespace detail

/// Unordered list with swap-removal. Every query tests every resident bound.
class LinearList {
 public:
  LinearList(const LubPool& pool, std::size_t query_dims) : pool_(&pool), dims_(query_dims) {}

  void insert(LubHandle h) {
    if (pos_.size() <= h) pos_.resize(h + 1, npos);
    assert(pos_[h] == npos);
    pos_[h] = items_.size();
    items_.push_back(h);
  }

  void remove(LubHandle h) {
    assert(h < pos_.size() && pos_[h] != npos);
    const std::size_t at = pos_[h];
    items_[at] = items_.back();
    pos_[items_[at]] = at;
    items_.pop_back();
    pos_[h] = npos;
  }

  [[nodiscard]] std::size_t size() const { return items_.size(); }

  std::size_t collect_dominated(std::span<const double> z, std::vector<LubHandle>& out) const {
    for (LubHandle h : items_) {
      if (detail::strictly_below(z, pool_->u(h), dims_)) out.push_back(h);
    }
    return items_.size();
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const LubPool* pool_;
  std::size_t dims_;
  std::vector<LubHandle> items_;
  std::vector<std::size_t> pos_;
};

/**
 * @brief Bounds kept in nondecreasing order of their coordinate sum.
 *
 * z < u implies sum(z) < sum(u), so a query starts at the first bound whose
 * sum reaches sum(z) and skips everything before it untested. Rounded sums
 * keep the implication in its weak form, which is the one used here.
 */
class SumSortedList {
 public:
  SumSortedList(const LubPool& pool, std::size_t query_dims) : pool_(&pool), dims_(query_dims) {}

  void insert(LubHandle h) {
    if (where_.size() <= h) {
      where_.resize(h + 1);
      resident_.resize(h + 1, 0);
    }
    assert(!resident_[h]);
    where_[h] = entries_.emplace(key(pool_->u(h)), h);
    resident_[h] = 1;
  }

  void remove(LubHandle h) {
    assert(h < resident_.size() && resident_[h]);
    entries_.erase(where_[h]);
    resident_[h] = 0;
  }

  [[nodiscard]] std::size_t size() const { return entries_.size(); }

  std::size_t collect_dominated(std::span<const double> z, std::vector<LubHandle>& out) const {
    std::size_t tests = 0;
    for (auto it = entries_.lower_bound(key(z)); it != entries_.end(); ++it) {
      ++tests;
      if (detail::strictly_below(z, pool_->u(it->second), dims_)) out.push_back(it->second);
    }
    return tests;
  }

  /// Handles in list order, for inspecting the ordering invariant.
  [[nodiscard]] std::vector<LubHandle> ordered() const {
    std::vector<LubHandle> hs;
    hs.reserve(entries_.size());
    for (const auto& [k, h] : entries_) hs.push_back(h);
    return hs;
  }

  [[nodiscard]] double key(std::span<const double> v) const {
    double s = 0.0;
    for (std::size_t j = 0; j < dims_; ++j) s += v[j];
    return s;
  }

 private:
  using Map = std::multimap<double, LubHandle>;
  const LubPool* pool_;
  std::size_t dims_;
  Map entries_;
  std::vector<Map::const_iterator> where_;
  std::vector<std::uint8_t> resident_;
};

/**
 * @brief Balanced kd-tree over the input points with a bucket of local upper
 * bounds at every empty child position.
 *
 * The tree splits on the median point, cycling through components
 * 0..query_dims-1, and never changes after construction. A bound with
 * u_d >= split is routed right. Buckets are intrusive doubly linked lists,
 * so removal is O(1) given the handle.
 */
class KdCellIndex {
 public:
  KdCellIndex(const LubPool& pool, std::size_t query_dims, std::span<const Point> points)
      : pool_(&pool), dims_(query_dims) {
    assert(dims_ >= 1);
    std::vector<std::uint32_t> order(points.size());
    std::iota(order.begin(), order.end(), 0u);
    root_ = build(points, order, 0, order.size(), 0);
  }

  void insert(LubHandle h) {
    grow(h);
    assert(bucket_of_[h] == none);
    const std::uint32_t b = locate(pool_->u(h));
    bucket_of_[h] = b;
    prev_[h] = none;
    next_[h] = heads_[b];
    if (heads_[b] != none) prev_[heads_[b]] = h;
    heads_[b] = h;
    ++size_;
  }

  void remove(LubHandle h) {
    assert(h < bucket_of_.size() && bucket_of_[h] != none);
    const std::uint32_t b = bucket_of_[h];
    if (prev_[h] != none) {
      next_[prev_[h]] = next_[h];
    } else {
      heads_[b] = next_[h];
    }
    if (next_[h] != none) prev_[next_[h]] = prev_[h];
    bucket_of_[h] = none;
    --size_;
  }

  [[nodiscard]] std::size_t size() const { return size_; }

  std::size_t collect_dominated(std::span<const double> z, std::vector<LubHandle>& out) const {
    std::size_t tests = 0;
    visit(root_, z, out, tests);
    return tests;
  }

  /// Resident bounds strictly above z on the indexed components.
  [[nodiscard]] std::vector<LubHandle> query(std::span<const double> z) const {
    std::vector<LubHandle> out;
    collect_dominated(z, out);
    return out;
  }

  [[nodiscard]] std::size_t bucket_count() const { return heads_.size(); }
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t depth() const { return depth_of(root_); }

  /// Members of bucket b, newest first.
  [[nodiscard]] std::vector<LubHandle> bucket(std::size_t b) const {
    std::vector<LubHandle> hs;
    for (LubHandle h = heads_[b]; h != none; h = next_[h]) hs.push_back(h);
    return hs;
  }

 private:
  static constexpr std::uint32_t none = static_cast<std::uint32_t>(-1);

  struct Node {
    double split;
    std::uint32_t dim;
    // >= 0: node index; < 0: bucket ~child.
    std::int64_t child[2];
  };

  std::int64_t new_bucket() {
    heads_.push_back(none);
    return ~static_cast<std::int64_t>(heads_.size() - 1);
  }

  std::int64_t build(std::span<const Point> pts, std::vector<std::uint32_t>& order, std::size_t lo, std::size_t hi,
                     std::size_t depth) {
    if (lo == hi) return new_bucket();
    const auto d = static_cast<std::uint32_t>(depth % dims_);
    const std::size_t mid = lo + (hi - lo) / 2;
    std::nth_element(order.begin() + static_cast<std::ptrdiff_t>(lo), order.begin() + static_cast<std::ptrdiff_t>(mid),
                     order.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::uint32_t a, std::uint32_t b) {
                       return pts[a][d] < pts[b][d] || (pts[a][d] == pts[b][d] && a < b);
                     });
    const auto self = static_cast<std::int64_t>(nodes_.size());
    nodes_.push_back({pts[order[mid]][d], d, {0, 0}});
    const std::int64_t left = build(pts, order, lo, mid, depth + 1);
    const std::int64_t right = build(pts, order, mid + 1, hi, depth + 1);
    nodes_[static_cast<std::size_t>(self)].child[0] = left;
    nodes_[static_cast<std::size_t>(self)].child[1] = right;
    return self;
  }

  [[nodiscard]] std::uint32_t locate(std::span<const double> u) const {
    std::int64_t at = root_;
    while (at >= 0) {
      const Node& n = nodes_[static_cast<std::size_t>(at)];
      at = n.child[u[n.dim] >= n.split ? 1 : 0];
    }
    return static_cast<std::uint32_t>(~at);
  }

  void visit(std::int64_t at, std::span<const double> z, std::vector<LubHandle>& out, std::size_t& tests) const {
    while (at >= 0) {
      const Node& n = nodes_[static_cast<std::size_t>(at)];
      // Left cell holds u_d < split; it can meet (z_d, ref_d] only if z_d < split.
      if (z[n.dim] < n.split) visit(n.child[0], z, out, tests);
      at = n.child[1];
    }
    for (LubHandle h = heads_[static_cast<std::size_t>(~at)]; h != none; h = next_[h]) {
      ++tests;
      if (detail::strictly_below(z, pool_->u(h), dims_)) out.push_back(h);
    }
  }

  [[nodiscard]] std::size_t depth_of(std::int64_t at) const {
    if (at < 0) return 0;
    const Node& n = nodes_[static_cast<std::size_t>(at)];
    return 1 + std::max(depth_of(n.child[0]), depth_of(n.child[1]));
  }

  void grow(LubHandle h) {
    if (bucket_of_.size() <= h) {
      const std::size_t n = std::max<std::size_t>(h + 1, bucket_of_.size() * 2);
      bucket_of_.resize(n, none);
      prev_.resize(n, none);
      next_.resize(n, none);
    }
  }

  const LubPool* pool_;
  std::size_t dims_;
  std::vector<Node> nodes_;
  std::int64_t root_ = -1;
  std::vector<std::uint32_t> heads_;
  std::vector<std::uint32_t> bucket_of_;
  std::vector<std::uint32_t> prev_;
  std::vector<std::uint32_t> next_;
  std::size_t size_ = 0;
};

static_assert(LubIndex<LinearList>);
static_assert(LubIndex<SumSortedList>);
static_assert(LubIndex<KdCellIndex>);

}  // namespace hvbox

#endif  // HVBOX_SPATIAL_HPP
