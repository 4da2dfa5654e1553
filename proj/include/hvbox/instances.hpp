/**
 * @file instances.hpp
 * @brief Instance generators and the point-set text format.
 *
 * Families, all for minimization with reference point (1, ..., 1):
 *   C  uniform draws in (0,1)^p scaled to unit l2 norm (concave front)
 *   X  1 - (C point)                                  (convex front)
 *   L  uniform draws scaled to unit l1 norm           (linear front)
 *   H  rows of the general-position block matrix M'_{k,p}, divided by
 *      (p/2)k + 1
 *   M  rows of the block-diagonal matrix M_{k,p}; raw integers with
 *      reference (p/2)k + 1, or (v + 1) / ((p/2)k + 2) when normalized
 */

#ifndef HVBOX_INSTANCES_HPP
#define HVBOX_INSTANCES_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "core.hpp"
#include "random.hpp"

namespace hvbox {

enum class InstanceType { C, X, L, H, M };

inline char to_char(InstanceType t) { return "CXLHM"[static_cast<int>(t)]; }

inline InstanceType instance_type_from(std::string_view s) {
  if (s == "C") return InstanceType::C;
  if (s == "X") return InstanceType::X;
  if (s == "L") return InstanceType::L;
  if (s == "H") return InstanceType::H;
  if (s == "M") return InstanceType::M;
  throw InputError("unknown instance type '" + std::string(s) + "'");
}

struct InstanceSpec {
  InstanceType type = InstanceType::C;
  std::size_t p = 2;
  /// Number of points for C/X/L; ignored for H/M, where n = (p/2) k.
  std::size_t n = 0;
  /// Block size for H/M.
  std::size_t k = 0;
  std::uint64_t seed = 0;
  /// Map M rows into (0,1)^p. H is always normalized.
  bool normalize = false;
};

struct Instance {
  InstanceSpec spec;
  std::vector<Point> points;
  std::vector<double> ref;
  /// Divisor applied to H/M matrix entries (1 when none).
  double scale = 1.0;

  [[nodiscard]] std::size_t size() const { return points.size(); }
  [[nodiscard]] StableSet stable_set() const { return {points, ref}; }
};

namespace detail {

inline std::vector<double> draw_point(SplitMix64& rng, std::size_t p) {
  std::vector<double> z(p);
  for (auto& v : z) v = rng.uniform_open();
  return z;
}

inline bool open_unit(const std::vector<double>& z) {
  for (double v : z) {
    if (!(v > 0.0 && v < 1.0)) return false;
  }
  return true;
}

/// Row r (0-based) of A_{k,l}: (k - r + l k, 1 + r + l k).
inline std::pair<std::size_t, std::size_t> block_row(std::size_t k, std::size_t l, std::size_t r) {
  return {k - r + l * k, 1 + r + l * k};
}

}  // namespace detail

/// Applies the C, X or L transform to one raw draw.
inline std::vector<double> transform_cxl(InstanceType type, std::vector<double> z) {
  double norm = 0.0;
  if (type == InstanceType::L) {
    for (double v : z) norm += v;
  } else {
    for (double v : z) norm += v * v;
    norm = std::sqrt(norm);
  }
  for (auto& v : z) {
    v /= norm;
    if (type == InstanceType::X) v = 1.0 - v;
  }
  return z;
}

/**
 * @brief C, X or L instance of spec.n points.
 *
 * A draw whose transformed coordinates leave (0,1) after rounding is
 * redrawn. X points are kept only if nondominated with respect to those
 * already accepted; dominated draws are replaced by fresh ones.
 */
inline Instance gen_cxl(const InstanceSpec& spec) {
  if (spec.type != InstanceType::C && spec.type != InstanceType::X && spec.type != InstanceType::L) {
    throw InputError("gen_cxl: type must be C, X or L");
  }
  if (spec.p < 2) throw InputError("dimension must be at least 2");
  if (spec.n < 1) throw InputError("need at least one point");
  SplitMix64 rng(spec.seed);
  Instance inst{spec, {}, std::vector<double>(spec.p, 1.0), 1.0};
  inst.points.reserve(spec.n);
  while (inst.points.size() < spec.n) {
    auto z = transform_cxl(spec.type, detail::draw_point(rng, spec.p));
    if (!detail::open_unit(z)) continue;
    bool clash = false;
    for (const auto& y : inst.points) {
      if (weakly_dominates(std::span(y.coords), std::span(z)) || weakly_dominates(std::span(z), std::span(y.coords))) {
        clash = true;
        break;
      }
    }
    if (clash) continue;
    inst.points.emplace_back(std::move(z), inst.points.size());
  }
  return inst;
}

/**
 * @brief Rows of the hard block matrices.
 *
 * M: A_k = rows (k - r, 1 + r) on the block diagonal, zeros elsewhere.
 * H: block (i, c) is A_{k,l} with l = (p/2 - 1 - (c - i)) mod p/2, so the
 * diagonal holds A_{k,p/2-1} and each block row is a rotation of the first.
 * Rows come out in block order, which is nondecreasing in component p for M.
 */
inline Instance gen_hard(const InstanceSpec& spec) {
  if (spec.type != InstanceType::H && spec.type != InstanceType::M) throw InputError("gen_hard: type must be H or M");
  if (spec.p < 2 || spec.p % 2 != 0) throw InputError("hard instances need an even dimension, got " + std::to_string(spec.p));
  if (spec.k < 1) throw InputError("hard instances need k >= 1");
  const std::size_t h = spec.p / 2;
  const std::size_t k = spec.k;
  const double top = static_cast<double>(h * k);
  Instance inst;
  inst.spec = spec;
  inst.spec.n = h * k;
  for (std::size_t bi = 0; bi < h; ++bi) {
    for (std::size_t r = 0; r < k; ++r) {
      std::vector<double> z(spec.p, 0.0);
      for (std::size_t bc = 0; bc < h; ++bc) {
        std::size_t l = 0;
        if (spec.type == InstanceType::H) {
          l = (h - 1 + h - ((bc + h - bi) % h)) % h;
        } else if (bc != bi) {
          continue;
        }
        const auto [a, b] = detail::block_row(k, l, r);
        z[2 * bc] = static_cast<double>(a);
        z[2 * bc + 1] = static_cast<double>(b);
      }
      inst.points.emplace_back(std::move(z), inst.points.size());
    }
  }
  if (spec.type == InstanceType::H) {
    inst.scale = top + 1.0;
    for (auto& z : inst.points) {
      for (auto& v : z.coords) v /= inst.scale;
    }
    inst.ref.assign(spec.p, 1.0);
  } else if (spec.normalize) {
    inst.scale = top + 2.0;
    for (auto& z : inst.points) {
      for (auto& v : z.coords) v = (v + 1.0) / inst.scale;
    }
    inst.ref.assign(spec.p, 1.0);
  } else {
    inst.ref.assign(spec.p, top + 1.0);
  }
  return inst;
}

inline Instance generate(const InstanceSpec& spec) {
  switch (spec.type) {
    case InstanceType::H:
    case InstanceType::M:
      return gen_hard(spec);
    default:
      return gen_cxl(spec);
  }
}

/// The maximization twin: every coordinate becomes 1 - z_j (reference 0).
inline std::vector<std::vector<double>> complement_twin(std::span<const Point> points) {
  std::vector<std::vector<double>> out;
  out.reserve(points.size());
  for (const auto& z : points) {
    std::vector<double> c(z.coords);
    for (auto& v : c) v = 1.0 - v;
    out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text format: one point per line, components separated by single spaces;
// lines starting with '%' are comments; a line "#" ends a front.

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using Front = std::vector<std::vector<double>>;

/// Shortest decimal string that reads back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

inline std::vector<Front> read_fronts(std::istream& in) {
  std::vector<Front> fronts;
  Front current;
  std::size_t arity = 0;
  std::size_t arity_line = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '%') continue;
    std::string_view rest(line);
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
    while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
    if (rest.empty()) continue;
    if (rest == "#") {
      fronts.push_back(std::move(current));
      current.clear();
      arity = 0;
      continue;
    }
    std::vector<double> z;
    while (!rest.empty()) {
      double v = 0.0;
      const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (res.ec != std::errc{}) throw ParseError(lineno, "cannot parse number in '" + line + "'");
      z.push_back(v);
      rest.remove_prefix(static_cast<std::size_t>(res.ptr - rest.data()));
      if (!rest.empty()) {
        if (rest.front() != ' ' && rest.front() != '\t') throw ParseError(lineno, "unexpected character in '" + line + "'");
        while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
      }
    }
    if (current.empty()) {
      arity = z.size();
      arity_line = lineno;
    } else if (z.size() != arity) {
      throw ParseError(lineno, "expected " + std::to_string(arity) + " values (as on line " +
                                   std::to_string(arity_line) + "), found " + std::to_string(z.size()));
    }
    current.push_back(std::move(z));
  }
  if (!current.empty()) fronts.push_back(std::move(current));
  return fronts;
}

inline void write_fronts(std::ostream& out, std::span<const Front> fronts) {
  for (const auto& front : fronts) {
    for (const auto& z : front) {
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j) out << ' ';
        out << format_double(z[j]);
      }
      out << '\n';
    }
    out << "#\n";
  }
}

inline std::vector<Front> load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_fronts(in);
}

inline void save_points(const std::string& path, std::span<const Front> fronts) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  write_fronts(out, fronts);
  if (!out) throw InputError("write to '" + path + "' failed");
}

inline Front to_front(std::span<const Point> points) {
  Front f;
  f.reserve(points.size());
  for (const auto& z : points) f.push_back(z.coords);
  return f;
}

}  // namespace hvbox

#endif  // HVBOX_INSTANCES_HPP
