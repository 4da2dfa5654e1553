/**
 * @file core.hpp
 * @brief Dominance relations, tie-breaking orders and reference frames.
 *
 * All algorithms in hvbox work on minimization problems whose points lie in
 * the open box (0, ref). canonicalize() maps arbitrary input into that form.
 */

#ifndef HVBOX_CORE_HPP
#define HVBOX_CORE_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvbox {

/// Malformed or out-of-domain input (bad arity, point outside the reference box).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point set handed to a strict algorithm is not mutually nondominated.
class StabilityError : public InputError {
 public:
  using InputError::InputError;
};

/// Points reached the nonincremental algorithm out of order on the sort key.
class SequencingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exact oracle refused an instance that exceeds its budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { minimize, maximize };

/**
 * @brief A point of the objective space.
 *
 * `id` is the processing index. Drivers assign it so that the point being
 * inserted always carries the largest id seen so far.
 */
struct Point {
  std::vector<double> coords;
  std::size_t id = 0;

  Point() = default;
  explicit Point(std::vector<double> c, std::size_t i = 0) : coords(std::move(c)), id(i) {}

  [[nodiscard]] std::size_t dim() const { return coords.size(); }
  double operator[](std::size_t j) const { return coords[j]; }
  double& operator[](std::size_t j) { return coords[j]; }

  bool operator==(const Point& other) const { return coords == other.coords; }
};

namespace detail {

inline void require_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
}

inline std::string format_point(std::span<const double> z) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (j) os << ", ";
    os << z[j];
  }
  os << ')';
  return os.str();
}

}  // namespace detail

/// z1_j <= z2_j for every j.
inline bool weakly_dominates(std::span<const double> z1, std::span<const double> z2) {
  detail::require_same_dim(z1, z2);
  for (std::size_t j = 0; j < z1.size(); ++j) {
    if (z1[j] > z2[j]) return false;
  }
  return true;
}

/// Weak dominance with z1 != z2.
inline bool dominates(std::span<const double> z1, std::span<const double> z2) {
  detail::require_same_dim(z1, z2);
  bool some_less = false;
  for (std::size_t j = 0; j < z1.size(); ++j) {
    if (z1[j] > z2[j]) return false;
    if (z1[j] < z2[j]) some_less = true;
  }
  return some_less;
}

/// z1_j < z2_j for every j.
inline bool strictly_dominates(std::span<const double> z1, std::span<const double> z2) {
  detail::require_same_dim(z1, z2);
  for (std::size_t j = 0; j < z1.size(); ++j) {
    if (!(z1[j] < z2[j])) return false;
  }
  return true;
}

inline bool weakly_dominates(const Point& a, const Point& b) { return weakly_dominates(std::span(a.coords), std::span(b.coords)); }
inline bool dominates(const Point& a, const Point& b) { return dominates(std::span(a.coords), std::span(b.coords)); }
inline bool strictly_dominates(const Point& a, const Point& b) { return strictly_dominates(std::span(a.coords), std::span(b.coords)); }

/// One component value tagged with the id of the point it belongs to.
struct RankedValue {
  double value;
  std::size_t id;
};

/**
 * @brief Symbolic-perturbation order on the values of one component.
 *
 * `a` precedes `b` when its value is smaller, or when values tie and `a`
 * has the larger id. This is a strict total order on distinct (value, id)
 * pairs and refines the natural order on values.
 */
inline bool perturbed_less(RankedValue a, RankedValue b) {
  return a.value < b.value || (a.value == b.value && a.id > b.id);
}

/**
 * @brief Reference point plus optimization direction of the caller's data.
 *
 * For minimization the reference point bounds the points from above, for
 * maximization from below.
 */
struct ReferenceFrame {
  std::vector<double> ref;
  Direction direction = Direction::minimize;

  [[nodiscard]] std::size_t dim() const { return ref.size(); }
};

/**
 * @brief Points in internal minimization form with their reference point.
 *
 * Every coordinate satisfies 0 < z_j < ref_j. The strict algorithms
 * additionally require the points to be mutually nondominated; use
 * filter_nondominated() to establish that.
 */
struct StableSet {
  std::vector<Point> points;
  std::vector<double> ref;

  [[nodiscard]] std::size_t dim() const { return ref.size(); }
  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] bool empty() const { return points.empty(); }
};

/**
 * @brief Keeps the points that no other point dominates.
 *
 * Duplicates collapse to their first occurrence. Relative order and ids of
 * the survivors are preserved.
 */
inline std::vector<Point> filter_nondominated(std::span<const Point> points) {
  if (points.empty()) return {};
  const std::size_t p = points.front().dim();
  for (const auto& z : points) {
    if (z.dim() != p) throw InputError("filter_nondominated: points of mixed dimension");
  }
  // Lexicographic order puts every dominator before the points it dominates.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].coords < points[b].coords;
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    const auto& z = points[idx].coords;
    bool covered = false;
    for (std::size_t k : kept) {
      if (weakly_dominates(std::span(points[k].coords), std::span(z))) {
        covered = true;
        break;
      }
    }
    if (!covered) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<Point> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) out.push_back(points[k]);
  return out;
}

/// Throws StabilityError naming the first dominated pair, if any.
inline void require_stable(std::span<const Point> points) {
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      if (weakly_dominates(points[a], points[b]) || weakly_dominates(points[b], points[a])) {
        throw StabilityError("points " + detail::format_point(points[a].coords) + " and " +
                             detail::format_point(points[b].coords) + " are not mutually nondominated");
      }
    }
  }
}

/// Throws InputError unless every point lies in the open box (0, ref).
inline void require_inside(std::span<const Point> points, std::span<const double> ref) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& z = points[i].coords;
    if (z.size() != ref.size()) {
      throw InputError("point " + std::to_string(i) + " has " + std::to_string(z.size()) +
                       " components, reference point has " + std::to_string(ref.size()));
    }
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (!(z[j] > 0.0 && z[j] < ref[j])) {
        throw InputError("point " + std::to_string(i) + " " + detail::format_point(z) + ": component " +
                         std::to_string(j + 1) + " is not inside (0, " + std::to_string(ref[j]) + ")");
      }
    }
  }
}

/**
 * @brief Maps raw points into internal minimization form.
 *
 * Minimization data whose coordinates are already positive passes through
 * unchanged. Maximization data with reference r is reflected per component
 * as z_j <- c_j - z_j, ref_j <- c_j - r_j, with c_j = r_j + 1 whenever all
 * points are below r_j + 1 (so unit-box data with reference 0 maps to 1 - z
 * and reference 1). Remaining components that would not be positive are
 * translated. All of these maps preserve hypervolume.
 *
 * Ids are assigned in input order. A point on or beyond the reference
 * boundary is rejected with an InputError naming it.
 */
inline StableSet canonicalize(std::span<const std::vector<double>> raw, const ReferenceFrame& frame) {
  const std::size_t p = frame.dim();
  if (p < 2) throw InputError("reference point needs at least 2 components");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].size() != p) {
      throw InputError("point " + std::to_string(i + 1) + " has " + std::to_string(raw[i].size()) +
                       " components, reference point has " + std::to_string(p));
    }
    for (std::size_t j = 0; j < p; ++j) {
      const double v = raw[i][j];
      const bool inside = frame.direction == Direction::minimize ? v < frame.ref[j] : v > frame.ref[j];
      if (!inside || !std::isfinite(v)) {
        throw InputError("point " + std::to_string(i + 1) + " " + detail::format_point(raw[i]) +
                         ": component " + std::to_string(j + 1) + " is not strictly " +
                         (frame.direction == Direction::minimize ? "below" : "above") +
                         " the reference value " + detail::format_point(std::span(&frame.ref[j], 1)));
      }
    }
  }

  StableSet out;
  out.ref = frame.ref;
  out.points.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) out.points.emplace_back(raw[i], i);

  for (std::size_t j = 0; j < p; ++j) {
    if (frame.direction == Direction::maximize) {
      double hi = frame.ref[j];
      for (const auto& z : out.points) hi = std::max(hi, z[j]);
      const double c = hi < frame.ref[j] + 1.0 ? frame.ref[j] + 1.0 : hi + 1.0;
      for (auto& z : out.points) z[j] = c - z[j];
      out.ref[j] = c - frame.ref[j];
    }
    double lo = out.ref[j];
    for (const auto& z : out.points) lo = std::min(lo, z[j]);
    if (!(lo > 0.0)) {
      const double shift = 1.0 - lo;
      for (auto& z : out.points) z[j] += shift;
      out.ref[j] += shift;
    }
  }
  return out;
}

/// Hypervolume of a single point: prod_j (ref_j - z_j).
inline double point_volume(std::span<const double> z, std::span<const double> ref) {
  double v = 1.0;
  for (std::size_t j = 0; j < z.size(); ++j) v *= ref[j] - z[j];
  return v;
}

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  CompensatedSum& operator-=(double x) {
    add(-x);
    return *this;
  }
  [[nodiscard]] double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Relative difference |a - b| / max(|a|, |b|), 0 when both are 0.
inline double relative_error(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace hvbox

#endif  // HVBOX_CORE_HPP
