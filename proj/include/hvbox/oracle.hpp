/**
 * @file oracle.hpp
 * @brief Exact reference computations for small instances.
 *
 * These are deliberately naive and share no code with the box decomposition
 * or WFG paths: inclusion-exclusion over all subsets, a dominance sweep
 * over the compressed coordinate grid, and a Monte Carlo check that a box
 * family partitions the dominated region.
 */

#ifndef HVBOX_ORACLE_HPP
#define HVBOX_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"
#include "decomp.hpp"
#include "random.hpp"

namespace hvbox {

struct OracleBudget {
  std::size_t max_points_ie = 20;
  std::size_t max_grid_cells = 40'000'000;
  std::size_t mc_samples = 100'000;
  std::uint64_t rng_seed = 0x5eed;
};

namespace detail {

inline void ie_descend(std::span<const Point> pts, std::span<const double> ref, std::size_t next,
                       std::vector<double>& corner, std::size_t depth, CompensatedSum& sum) {
  const std::size_t p = ref.size();
  std::vector<double> saved(p);
  for (std::size_t i = next; i < pts.size(); ++i) {
    std::copy(corner.begin(), corner.end(), saved.begin());
    double term = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      corner[j] = std::max(corner[j], pts[i][j]);
      term *= std::max(ref[j] - corner[j], 0.0);
    }
    // A zero term stays zero for every superset.
    if (term > 0.0) {
      if ((depth + 1) % 2 == 1) {
        sum += term;
      } else {
        sum -= term;
      }
      ie_descend(pts, ref, i + 1, corner, depth + 1, sum);
    }
    std::copy(saved.begin(), saved.end(), corner.begin());
  }
}

}  // namespace detail

/**
 * @brief sum over nonempty S of (-1)^{|S|+1} prod_j (ref_j - max_{z in S} z_j)^+.
 *
 * Throws BudgetError when |N| exceeds budget.max_points_ie.
 */
inline double volume_inclusion_exclusion(std::span<const Point> points, std::span<const double> ref,
                                         const OracleBudget& budget = {}) {
  if (points.size() > budget.max_points_ie) {
    throw BudgetError("inclusion-exclusion limited to " + std::to_string(budget.max_points_ie) + " points, got " +
                      std::to_string(points.size()));
  }
  if (points.empty()) return 0.0;
  std::vector<double> corner(ref.size(), -std::numeric_limits<double>::infinity());
  CompensatedSum sum;
  detail::ie_descend(points, ref, 0, corner, 0, sum);
  return sum.value();
}

/**
 * @brief Exact volume by coordinate compression.
 *
 * Grid lines are the point coordinates plus the reference value per
 * component. A cell is dominated iff its lower corner is weakly above some
 * point, which propagates cell-to-cell along every axis. Throws BudgetError
 * when the grid has more than budget.max_grid_cells cells.
 */
inline double volume_grid_sweep(std::span<const Point> points, std::span<const double> ref,
                                 const OracleBudget& budget = {}) {
  const std::size_t p = ref.size();
  if (points.empty()) return 0.0;
  std::vector<std::vector<double>> lines(p);
  std::size_t cells = 1;
  for (std::size_t j = 0; j < p; ++j) {
    for (const auto& z : points) lines[j].push_back(z[j]);
    lines[j].push_back(ref[j]);
    std::sort(lines[j].begin(), lines[j].end());
    lines[j].erase(std::unique(lines[j].begin(), lines[j].end()), lines[j].end());
    const std::size_t extent = lines[j].size() - 1;
    if (extent == 0) return 0.0;
    if (cells > budget.max_grid_cells / extent) {
      throw BudgetError("grid oracle exceeds " + std::to_string(budget.max_grid_cells) + " cells");
    }
    cells *= extent;
  }
  // Row-major cell numbering, last component fastest.
  std::vector<std::size_t> stride(p);
  stride[p - 1] = 1;
  for (std::size_t j = p - 1; j-- > 0;) stride[j] = stride[j + 1] * (lines[j + 1].size() - 1);

  std::vector<std::uint8_t> dominated(cells, 0);
  for (const auto& z : points) {
    std::size_t at = 0;
    for (std::size_t j = 0; j < p; ++j) {
      const auto k = static_cast<std::size_t>(std::lower_bound(lines[j].begin(), lines[j].end(), z[j]) - lines[j].begin());
      at += k * stride[j];
    }
    dominated[at] = 1;
  }
  std::vector<std::size_t> idx(p, 0);
  CompensatedSum sum;
  for (std::size_t c = 0; c < cells; ++c) {
    if (!dominated[c]) {
      for (std::size_t j = 0; j < p; ++j) {
        if (idx[j] > 0 && dominated[c - stride[j]]) {
          dominated[c] = 1;
          break;
        }
      }
    }
    if (dominated[c]) {
      double v = 1.0;
      for (std::size_t j = 0; j < p; ++j) v *= lines[j][idx[j] + 1] - lines[j][idx[j]];
      sum += v;
    }
    for (std::size_t j = p; j-- > 0;) {
      if (++idx[j] < lines[j].size() - 1) break;
      idx[j] = 0;
    }
  }
  return sum.value();
}

struct PartitionReport {
  std::size_t samples = 0;
  std::size_t in_D_count = 0;
  std::size_t exactly_one_box_violations = 0;
  /// First sample whose dominance status disagrees with its box count.
  std::optional<std::vector<double>> first_violation;
};

/**
 * @brief Samples uniformly in [0, ref) and checks that each sample is
 * weakly dominated by a point of N iff it lies in exactly one box.
 */
inline PartitionReport mc_partition_check(std::span<const Point> points, std::span<const double> ref,
                                          std::span<const Box> boxes, std::size_t samples, std::uint64_t seed) {
  const std::size_t p = ref.size();
  SplitMix64 rng(seed);
  PartitionReport rep;
  rep.samples = samples;
  std::vector<double> x(p);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t j = 0; j < p; ++j) x[j] = rng.uniform(0.0, ref[j]);
    bool in_d = false;
    for (const auto& z : points) {
      if (weakly_dominates(std::span(z.coords), std::span<const double>(x))) {
        in_d = true;
        break;
      }
    }
    std::size_t hits = 0;
    for (const auto& b : boxes) hits += b.contains(x) ? 1 : 0;
    if (in_d) ++rep.in_D_count;
    if (in_d != (hits == 1) || hits > 1) {
      ++rep.exactly_one_box_violations;
      if (!rep.first_violation) rep.first_violation = x;
    }
  }
  return rep;
}

/// Pairs (a, b), a < b, of boxes that intersect.
inline std::vector<std::pair<std::size_t, std::size_t>> overlapping_boxes(std::span<const Box> boxes) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < boxes.size(); ++a) {
    for (std::size_t b = a + 1; b < boxes.size(); ++b) {
      if (!disjoint(boxes[a], boxes[b])) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace hvbox

#endif  // HVBOX_ORACLE_HPP
