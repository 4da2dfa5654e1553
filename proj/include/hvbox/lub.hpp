/**
 * @file lub.hpp
 * @brief Upper bound sets U(N) with defining points.
 *
 * IncrementalUpperBounds maintains the full set U(N) under arbitrary-order
 * insertions. NonincrementalUpperBounds consumes points sorted by their
 * last component and keeps only the bounds with u_p = ref_p; every other
 * bound is handed to a volume callback as soon as it appears and then
 * dropped, because later insertions can no longer touch it.
 *
 * Both engines use the update rule: for every bound u strictly dominated by
 * the new point z, the candidate (z_j, u_{-j}) is a new bound iff
 * z_j >= max_{k != j} z^k_j(u), where z^k(u) are the defining points of u.
 * The candidate inherits u's defining points except z^j, which becomes z.
 *
 * Ties between coordinates need no special handling as long as the point
 * being inserted carries the largest id so far: the plain comparisons
 * used here are then consistent with a symbolic perturbation of the input.
 */

#ifndef HVBOX_LUB_HPP
#define HVBOX_LUB_HPP

#include <algorithm>
#include <cassert>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "spatial.hpp"
#include "store.hpp"

namespace hvbox {

struct LubCounters {
  std::size_t lubs_created = 0;
  std::size_t lubs_retired = 0;
  std::size_t dominance_tests = 0;
  std::size_t max_active = 0;
};

/// Owning copy of a local upper bound, for results and tests.
struct LocalUpperBound {
  std::vector<double> u;
  std::vector<PointRef> defining;

  bool operator==(const LocalUpperBound&) const = default;
};

inline LocalUpperBound to_value(const LubView& v) {
  return {std::vector<double>(v.u.begin(), v.u.end()), std::vector<PointRef>(v.defining.begin(), v.defining.end())};
}

enum class LubMode { incremental, nonincremental };

namespace detail {

/// Candidate test for (z_j, u_{-j}); z is the newest point, so plain >= suffices.
inline bool keeps_component(const PointStore& store, std::span<const PointRef> def, std::span<const double> z,
                            std::size_t j) {
  for (std::size_t k = 0; k < def.size(); ++k) {
    if (k != j && store.at(def[k], j) > z[j]) return false;
  }
  return true;
}

inline void require_in_box(std::span<const double> z, std::span<const double> ref) {
  if (z.size() != ref.size()) {
    throw InputError("point has " + std::to_string(z.size()) + " components, reference point has " +
                     std::to_string(ref.size()));
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (!(z[j] > 0.0 && z[j] < ref[j])) {
      throw InputError("point " + format_point(z) + ": component " + std::to_string(j + 1) +
                       " is not inside the open reference box");
    }
  }
}

}  // namespace detail

/**
 * @brief Engine shared by both modes: storage, index and the candidate rule.
 */
template <LubIndex Index>
class UpperBoundsBase {
 public:
  [[nodiscard]] std::size_t dim() const { return store_.dim(); }
  [[nodiscard]] std::span<const double> ref() const { return store_.ref(); }
  [[nodiscard]] const PointStore& points() const { return store_; }
  [[nodiscard]] const LubPool& pool() const { return pool_; }
  [[nodiscard]] const Index& index() const { return index_; }
  [[nodiscard]] const LubCounters& counters() const { return counters_; }
  [[nodiscard]] std::size_t active_count() const { return pool_.live_count(); }

  template <class Fn>
  void for_each_active(Fn&& fn) const {
    for (LubHandle h = 0; h < pool_.capacity(); ++h) {
      if (pool_.live(h)) fn(pool_.view(h));
    }
  }

  [[nodiscard]] std::vector<LocalUpperBound> active() const {
    std::vector<LocalUpperBound> out;
    for_each_active([&](const LubView& v) { out.push_back(to_value(v)); });
    return out;
  }

 protected:
  template <class... IndexArgs>
  UpperBoundsBase(std::vector<double> ref, std::size_t unindexed_dims, IndexArgs&&... args)
      : store_(std::move(ref)),
        pool_(store_.dim()),
        index_(pool_, store_.dim() - unindexed_dims, std::forward<IndexArgs>(args)...) {
    const std::size_t p = store_.dim();
    const LubHandle h = pool_.acquire();
    auto u = pool_.u(h);
    auto def = pool_.defining(h);
    for (std::size_t j = 0; j < p; ++j) {
      u[j] = store_.ref()[j];
      def[j] = PointStore::dummy(j);
    }
    index_.insert(h);
    counters_.lubs_created = 1;
    counters_.max_active = 1;
  }

  /// Snapshot of A: handles plus copies of their u and defining points.
  void collect(std::span<const double> z) {
    hits_.clear();
    counters_.dominance_tests += index_.collect_dominated(z, hits_);
    const std::size_t p = dim();
    hit_u_.resize(hits_.size() * p);
    hit_def_.resize(hits_.size() * p);
    for (std::size_t i = 0; i < hits_.size(); ++i) {
      std::ranges::copy(pool_.u(hits_[i]), hit_u_.begin() + static_cast<std::ptrdiff_t>(i * p));
      std::ranges::copy(pool_.defining(hits_[i]), hit_def_.begin() + static_cast<std::ptrdiff_t>(i * p));
    }
  }

  [[nodiscard]] std::span<const double> hit_u(std::size_t i) const { return {hit_u_.data() + i * dim(), dim()}; }
  [[nodiscard]] std::span<const PointRef> hit_def(std::size_t i) const {
    return {hit_def_.data() + i * dim(), dim()};
  }

  LubHandle spawn(std::span<const double> u, std::span<const PointRef> def, std::size_t j, double zj, PointRef zref) {
    const LubHandle h = pool_.acquire();
    auto nu = pool_.u(h);
    auto nd = pool_.defining(h);
    std::ranges::copy(u, nu.begin());
    std::ranges::copy(def, nd.begin());
    nu[j] = zj;
    nd[j] = zref;
    ++counters_.lubs_created;
    return h;
  }

  void retire_hits() {
    for (LubHandle h : hits_) {
      index_.remove(h);
      pool_.release(h);
      ++counters_.lubs_retired;
    }
  }

  void note_active() { counters_.max_active = std::max(counters_.max_active, pool_.live_count()); }

  PointStore store_;
  LubPool pool_;
  Index index_;
  LubCounters counters_;
  std::vector<LubHandle> hits_;
  std::vector<double> hit_u_;
  std::vector<PointRef> hit_def_;
  std::vector<LubHandle> fresh_;
};

/**
 * @brief Full upper bound set under arbitrary-order insertion.
 *
 * Starts from U = {ref} with the dummy points as defining points.
 */
template <LubIndex Index = SumSortedList>
class IncrementalUpperBounds : public UpperBoundsBase<Index> {
  using Base = UpperBoundsBase<Index>;

 public:
  static constexpr LubMode mode = LubMode::incremental;

  template <class... IndexArgs>
  explicit IncrementalUpperBounds(std::vector<double> ref, IndexArgs&&... args)
      : Base(std::move(ref), 0, std::forward<IndexArgs>(args)...) {}

  struct InsertResult {
    std::vector<LocalUpperBound> removed;
    std::vector<LocalUpperBound> added;
  };

  /**
   * @brief Inserts z; reports every bound leaving and entering U.
   *
   * Views passed to the callbacks are only valid during the call. Throws
   * StabilityError if z is weakly dominated by, or weakly dominates, a
   * point inserted earlier.
   */
  template <class OnRemoved, class OnAdded>
  void insert(std::span<const double> z, OnRemoved&& on_removed, OnAdded&& on_added) {
    detail::require_in_box(z, this->ref());
    check_stable(z);
    const PointRef zref = this->store_.add(z);
    this->collect(z);
    assert(!this->hits_.empty());

    const std::size_t p = this->dim();
    this->fresh_.clear();
    for (std::size_t i = 0; i < this->hits_.size(); ++i) {
      const auto u = this->hit_u(i);
      const auto def = this->hit_def(i);
      for (std::size_t j = 0; j < p; ++j) {
        if (detail::keeps_component(this->store_, def, z, j)) this->fresh_.push_back(this->spawn(u, def, j, z[j], zref));
      }
    }
    for (LubHandle h : this->hits_) on_removed(this->pool_.view(h));
    this->retire_hits();
    for (LubHandle h : this->fresh_) {
      this->index_.insert(h);
      on_added(this->pool_.view(h));
    }
    this->note_active();
  }

  InsertResult insert(std::span<const double> z) {
    InsertResult r;
    insert(
        z, [&](const LubView& v) { r.removed.push_back(to_value(v)); },
        [&](const LubView& v) { r.added.push_back(to_value(v)); });
    return r;
  }

 private:
  void check_stable(std::span<const double> z) const {
    const auto& store = this->store_;
    const std::size_t p = store.dim();
    for (std::size_t i = 0; i < store.input_count(); ++i) {
      const auto other = store[static_cast<PointRef>(p + i)];
      if (weakly_dominates(other, z)) {
        throw StabilityError("point " + detail::format_point(z) + " is weakly dominated by earlier point " +
                             detail::format_point(other));
      }
      if (weakly_dominates(z, other)) {
        throw StabilityError("point " + detail::format_point(z) + " dominates earlier point " +
                             detail::format_point(other));
      }
    }
  }
};

/**
 * @brief Streaming upper bound set for points sorted by their last component.
 *
 * Only bounds with u_p = ref_p stay active. The bound (z_p, u_{-p}) created
 * for each strictly dominated u is final on creation; its box volume is
 * taken from the callback, accumulated, and the bound is discarded.
 */
template <LubIndex Index = KdCellIndex>
class NonincrementalUpperBounds : public UpperBoundsBase<Index> {
  using Base = UpperBoundsBase<Index>;

 public:
  static constexpr LubMode mode = LubMode::nonincremental;

  template <class... IndexArgs>
  explicit NonincrementalUpperBounds(std::vector<double> ref, IndexArgs&&... args)
      : Base(std::move(ref), 1, std::forward<IndexArgs>(args)...) {}

  /**
   * @brief Inserts z, which must not precede any earlier point on the last
   * component. `volume_of` maps each finalized bound to its box volume.
   */
  template <class VolumeFn>
  void insert(std::span<const double> z, VolumeFn&& volume_of) {
    if (flushed_) throw SequencingError("insert after finalize");
    detail::require_in_box(z, this->ref());
    const std::size_t p = this->dim();
    const std::size_t last = p - 1;
    const bool continues_run = this->store_.input_count() > 0 && z[last] == last_key_;
    if (this->store_.input_count() > 0 && z[last] < last_key_) {
      throw SequencingError("point " + detail::format_point(z) + " arrives after a point with larger component " +
                            std::to_string(p));
    }
    if (continues_run) check_tie_run(z);
    this->collect(z);
    if (this->hits_.empty()) report_dominated(z);

    if (!continues_run) tie_run_.clear();
    last_key_ = z[last];
    const PointRef zref = this->store_.add(z);
    tie_run_.push_back(zref);

    this->fresh_.clear();
    for (std::size_t i = 0; i < this->hits_.size(); ++i) {
      const auto u = this->hit_u(i);
      const auto def = this->hit_def(i);
      finalized_u_.assign(u.begin(), u.end());
      finalized_def_.assign(def.begin(), def.end());
      finalized_u_[last] = z[last];
      finalized_def_[last] = zref;
      ++this->counters_.lubs_created;
      ++this->counters_.lubs_retired;
      volume_ += volume_of(LubView{finalized_u_, finalized_def_});
      for (std::size_t j = 0; j < last; ++j) {
        if (detail::keeps_component(this->store_, def, z, j)) this->fresh_.push_back(this->spawn(u, def, j, z[j], zref));
      }
    }
    this->retire_hits();
    for (LubHandle h : this->fresh_) this->index_.insert(h);
    this->note_active();
  }

  /// Adds the boxes of the remaining active bounds; returns the total volume.
  template <class VolumeFn>
  double finalize(VolumeFn&& volume_of) {
    if (!flushed_) {
      this->for_each_active([&](const LubView& v) { volume_ += volume_of(v); });
      flushed_ = true;
    }
    return volume_.value();
  }

  [[nodiscard]] double accumulated_volume() const { return volume_.value(); }

 private:
  // An earlier point can be dominated by z only if it shares z's last component.
  void check_tie_run(std::span<const double> z) const {
    for (PointRef r : tie_run_) {
      const auto other = this->store_[r];
      if (weakly_dominates(z, other)) {
        throw StabilityError("point " + detail::format_point(z) + " weakly dominates earlier point " +
                             detail::format_point(other));
      }
    }
  }

  [[noreturn]] void report_dominated(std::span<const double> z) const {
    const auto& store = this->store_;
    const std::size_t p = store.dim();
    for (std::size_t i = 0; i < store.input_count(); ++i) {
      const auto other = store[static_cast<PointRef>(p + i)];
      if (weakly_dominates(other, z)) {
        throw StabilityError("point " + detail::format_point(z) + " is weakly dominated by earlier point " +
                             detail::format_point(other));
      }
    }
    throw StabilityError("point " + detail::format_point(z) + " dominates no local upper bound");
  }

  CompensatedSum volume_;
  double last_key_ = 0.0;
  bool flushed_ = false;
  std::vector<PointRef> tie_run_;
  std::vector<double> finalized_u_;
  std::vector<PointRef> finalized_def_;
};

}  // namespace hvbox

#endif  // HVBOX_LUB_HPP
