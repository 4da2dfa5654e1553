/**
 * @file store.hpp
 * @brief Flat storage for defining points and local upper bounds.
 *
 * Local upper bounds refer to their defining points by PointRef. The first
 * p entries of a PointStore are the dummy points (ref_j, 0_{-j}); input
 * points follow in insertion order, so a PointRef also orders points by
 * processing time.
 */

#ifndef HVBOX_STORE_HPP
#define HVBOX_STORE_HPP

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "core.hpp"

namespace hvbox {

using PointRef = std::uint32_t;
using LubHandle = std::uint32_t;

class PointStore {
 public:
  explicit PointStore(std::vector<double> ref) : p_(ref.size()), ref_(std::move(ref)) {
    if (p_ < 2) throw InputError("reference point needs at least 2 components");
    coords_.assign(p_ * p_, 0.0);
    for (std::size_t j = 0; j < p_; ++j) coords_[j * p_ + j] = ref_[j];
  }

  [[nodiscard]] std::size_t dim() const { return p_; }
  [[nodiscard]] std::span<const double> ref() const { return ref_; }

  /// Dummy point j, which has ref_j at component j and 0 elsewhere.
  [[nodiscard]] static PointRef dummy(std::size_t j) { return static_cast<PointRef>(j); }
  [[nodiscard]] bool is_dummy(PointRef r) const { return r < p_; }

  [[nodiscard]] std::span<const double> operator[](PointRef r) const {
    return {coords_.data() + static_cast<std::size_t>(r) * p_, p_};
  }
  [[nodiscard]] double at(PointRef r, std::size_t j) const { return coords_[static_cast<std::size_t>(r) * p_ + j]; }

  PointRef add(std::span<const double> z) {
    assert(z.size() == p_);
    const auto r = static_cast<PointRef>(coords_.size() / p_);
    coords_.insert(coords_.end(), z.begin(), z.end());
    return r;
  }

  /// Number of stored points excluding dummies.
  [[nodiscard]] std::size_t input_count() const { return coords_.size() / p_ - p_; }

 private:
  std::size_t p_;
  std::vector<double> ref_;
  std::vector<double> coords_;
};

/// Read-only view of one local upper bound and its defining points.
struct LubView {
  std::span<const double> u;
  std::span<const PointRef> defining;
};

/**
 * @brief Slab allocator for local upper bounds.
 *
 * Handles stay valid until release(); released slots are recycled.
 */
class LubPool {
 public:
  explicit LubPool(std::size_t p) : p_(p) {}

  [[nodiscard]] std::size_t dim() const { return p_; }

  LubHandle acquire() {
    if (!free_.empty()) {
      const LubHandle h = free_.back();
      free_.pop_back();
      live_[h] = 1;
      ++live_count_;
      return h;
    }
    const auto h = static_cast<LubHandle>(live_.size());
    u_.resize(u_.size() + p_);
    def_.resize(def_.size() + p_);
    live_.push_back(1);
    ++live_count_;
    return h;
  }

  void release(LubHandle h) {
    assert(live_[h]);
    live_[h] = 0;
    --live_count_;
    free_.push_back(h);
  }

  [[nodiscard]] bool live(LubHandle h) const { return h < live_.size() && live_[h]; }
  [[nodiscard]] std::size_t live_count() const { return live_count_; }
  /// One past the largest handle ever issued.
  [[nodiscard]] std::size_t capacity() const { return live_.size(); }

  std::span<double> u(LubHandle h) { return {u_.data() + static_cast<std::size_t>(h) * p_, p_}; }
  [[nodiscard]] std::span<const double> u(LubHandle h) const {
    return {u_.data() + static_cast<std::size_t>(h) * p_, p_};
  }
  std::span<PointRef> defining(LubHandle h) { return {def_.data() + static_cast<std::size_t>(h) * p_, p_}; }
  [[nodiscard]] std::span<const PointRef> defining(LubHandle h) const {
    return {def_.data() + static_cast<std::size_t>(h) * p_, p_};
  }
  [[nodiscard]] LubView view(LubHandle h) const { return {u(h), defining(h)}; }

 private:
  std::size_t p_;
  std::vector<double> u_;
  std::vector<PointRef> def_;
  std::vector<std::uint8_t> live_;
  std::vector<LubHandle> free_;
  std::size_t live_count_ = 0;
};

}  // namespace hvbox

#endif  // HVBOX_STORE_HPP
