/**
 * @file commands.hpp
 * @brief The hvbox subcommands, independent of argument parsing.
 *
 * Each command writes results to `out`, diagnostics to `err` and returns
 * the process exit code:
 *   0 success, 1 verification failure, 2 bad input, 3 oracle budget exceeded.
 */

#ifndef HVBOX_TOOLS_COMMANDS_HPP
#define HVBOX_TOOLS_COMMANDS_HPP

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hvbox/hvbox.hpp"

namespace hvbox::cli {

enum ExitCode : int { ok = 0, verify_failed = 1, bad_input = 2, over_budget = 3 };

enum class Algorithm { hbda_ni, hbda_i, wfg, wfg_sliced, wfg_incr, oracle_ie, oracle_grid };

inline const std::map<std::string, Algorithm>& algorithm_names() {
  static const std::map<std::string, Algorithm> names{
      {"hbda-ni", Algorithm::hbda_ni},       {"hbda-i", Algorithm::hbda_i},   {"wfg", Algorithm::wfg},
      {"wfg-sliced", Algorithm::wfg_sliced}, {"wfg-incr", Algorithm::wfg_incr}, {"oracle-ie", Algorithm::oracle_ie},
      {"oracle-grid", Algorithm::oracle_grid}};
  return names;
}

inline std::string name_of(Algorithm a) {
  for (const auto& [n, v] : algorithm_names()) {
    if (v == a) return n;
  }
  return "?";
}

inline Algorithm parse_algorithm(const std::string& s) {
  const auto it = algorithm_names().find(s);
  if (it == algorithm_names().end()) throw InputError("unknown algorithm '" + s + "'");
  return it->second;
}

struct Outcome {
  double volume = 0.0;
  std::size_t lubs_created = 0;
  std::size_t lubs_retired = 0;
  std::size_t dominance_tests = 0;
  std::size_t wfg_calls_dim2 = 0;
  std::size_t wfg_calls_total = 0;
  std::size_t limitset_points = 0;
};

/// Runs one algorithm on a stable set in internal minimization form.
inline Outcome compute(Algorithm algo, std::span<const Point> points, std::span<const double> ref,
                       const OracleBudget& budget = {}) {
  Outcome o;
  auto take_lub = [&](const HbdaResult& r) {
    o.volume = r.volume;
    o.lubs_created = r.counters.lubs_created;
    o.lubs_retired = r.counters.lubs_retired;
    o.dominance_tests = r.counters.dominance_tests;
  };
  auto take_wfg = [&](const WfgResult& r) {
    o.volume = r.volume;
    o.wfg_calls_dim2 = r.counters.calls(2);
    o.wfg_calls_total = r.counters.total_calls();
    o.limitset_points = r.counters.limitset_points_generated;
  };
  switch (algo) {
    case Algorithm::hbda_ni: take_lub(hbda_ni(points, ref)); break;
    case Algorithm::hbda_i: take_lub(hbda_i(points, ref)); break;
    case Algorithm::wfg: take_wfg(wfg_basic(points, ref)); break;
    case Algorithm::wfg_sliced: take_wfg(wfg_sliced(points, ref)); break;
    case Algorithm::wfg_incr: take_wfg(wfg_incremental(points, ref)); break;
    case Algorithm::oracle_ie: o.volume = volume_inclusion_exclusion(points, ref, budget); break;
    case Algorithm::oracle_grid: o.volume = volume_grid_sweep(points, ref, budget); break;
  }
  return o;
}

inline std::string format_volume(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------

struct RunOptions {
  std::string algorithm = "hbda-ni";
  std::vector<double> ref;
  Direction direction = Direction::minimize;
  std::string input;
};

/// Prints one volume per front of the input file.
inline int cmd_run(const RunOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    const Algorithm algo = parse_algorithm(opt.algorithm);
    const auto fronts = load_points(opt.input);
    const ReferenceFrame frame{opt.ref, opt.direction};
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      const StableSet raw = canonicalize(fronts[f], frame);
      const auto stable = filter_nondominated(raw.points);
      if (stable.size() != raw.size()) {
        err << "warning: front " << f + 1 << ": ignored " << raw.size() - stable.size()
            << " dominated or duplicate points\n";
      }
      out << format_volume(compute(algo, stable, raw.ref).volume) << '\n';
    }
    return ok;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return over_budget;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return bad_input;
  }
}

// ---------------------------------------------------------------------------

struct GenOptions {
  std::string type = "C";
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool normalize = false;
  std::string out;
  std::string maximize_twin;
};

inline std::string describe(const Instance& inst) {
  std::ostringstream os;
  os << "type=" << to_char(inst.spec.type) << " p=" << inst.spec.p << " n=" << inst.points.size();
  if (inst.spec.type == InstanceType::H || inst.spec.type == InstanceType::M) {
    os << " k=" << inst.spec.k << " scale=" << format_double(inst.scale);
  } else {
    os << " seed=" << inst.spec.seed;
  }
  return os.str();
}

inline Instance instance_from(const GenOptions& opt) {
  InstanceSpec spec;
  spec.type = instance_type_from(opt.type);
  spec.p = opt.p;
  spec.n = opt.n;
  spec.k = opt.k;
  spec.seed = opt.seed;
  spec.normalize = opt.normalize;
  return generate(spec);
}

inline int cmd_gen(const GenOptions& opt, std::ostream& out, std::ostream& err) {
  try {
    if (opt.out.empty()) throw InputError("--out is required");
    const Instance inst = instance_from(opt);
    {
      std::ofstream f(opt.out);
      if (!f) throw InputError("cannot write '" + opt.out + "'");
      f << "% hvbox " << describe(inst) << " direction=min ref=";
      for (std::size_t j = 0; j < inst.ref.size(); ++j) f << (j ? " " : "") << format_double(inst.ref[j]);
      f << '\n';
      const std::vector<Front> fronts{to_front(inst.points)};
      write_fronts(f, fronts);
    }
    if (!opt.maximize_twin.empty()) {
      if (inst.ref != std::vector<double>(inst.spec.p, 1.0)) {
        throw InputError("--maximize-twin needs an instance inside the unit box (use --normalize for M)");
      }
      std::ofstream f(opt.maximize_twin);
      if (!f) throw InputError("cannot write '" + opt.maximize_twin + "'");
      f << "% hvbox " << describe(inst) << " direction=max ref=";
      for (std::size_t j = 0; j < inst.ref.size(); ++j) f << (j ? " 0" : "0");
      f << '\n';
      const std::vector<Front> fronts{complement_twin(inst.points)};
      write_fronts(f, fronts);
    }
    out << "wrote " << inst.points.size() << " points to " << opt.out << '\n';
    return ok;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return bad_input;
  }
}

// ---------------------------------------------------------------------------

struct VerifyOptions {
  std::size_t p_max = 5;
  std::size_t n_max = 10;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t mc_samples = 2000;
  double tolerance = 1e-10;
  /// Test hook: corrupt one box bound so the partition checks must fail.
  bool inject_fault = false;
};

/// Instance drawn for trial t of a verify run.
inline InstanceSpec verify_trial_spec(const VerifyOptions& opt, std::size_t t) {
  SplitMix64 rng(opt.seed ^ mix_seed(t + 1));
  InstanceSpec spec;
  spec.type = static_cast<InstanceType>(rng.below(3));
  spec.p = 2 + static_cast<std::size_t>(rng.below(opt.p_max - 1));
  spec.n = 1 + static_cast<std::size_t>(rng.below(opt.n_max));
  spec.seed = rng();
  return spec;
}

inline int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.p_max < 2 || opt.n_max < 1) {
    err << "error: need --p-max >= 2 and --n-max >= 1\n";
    return bad_input;
  }
  std::size_t failures = 0;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const InstanceSpec spec = verify_trial_spec(opt, t);
    const Instance inst = gen_cxl(spec);
    std::vector<std::string> problems;
    const double expected = volume_inclusion_exclusion(inst.points, inst.ref);
    for (const auto& [name, algo] : algorithm_names()) {
      const double v = compute(algo, inst.points, inst.ref).volume;
      if (relative_error(v, expected) > opt.tolerance) {
        problems.push_back(name + " gives " + format_volume(v) + ", inclusion-exclusion " + format_volume(expected));
      }
    }

    IncrementalUpperBounds<> engine(inst.ref);
    for (const auto& z : inst.points) engine.insert(std::span(z.coords));
    auto boxes = boxes_of(engine);
    if (opt.inject_fault && !boxes.empty()) {
      auto& victim = *std::max_element(boxes.begin(), boxes.end(),
                                       [](const Box& a, const Box& b) { return a.volume() < b.volume(); });
      std::swap(victim.lower[0], victim.upper[0]);
    }
    CompensatedSum box_sum;
    for (const auto& b : boxes) box_sum += b.volume();
    if (relative_error(box_sum.value(), expected) > opt.tolerance) {
      problems.push_back("box volumes sum to " + format_volume(box_sum.value()));
    }
    if (const auto overlaps = overlapping_boxes(boxes); !overlaps.empty()) {
      problems.push_back(std::to_string(overlaps.size()) + " overlapping box pairs");
    }
    const auto rep = mc_partition_check(inst.points, inst.ref, boxes, opt.mc_samples, spec.seed ^ 0x9e3779b97f4a7c15ULL);
    if (rep.exactly_one_box_violations > 0) {
      problems.push_back(std::to_string(rep.exactly_one_box_violations) + " samples break the partition, first at " +
                         detail::format_point(*rep.first_violation));
    }

    if (!problems.empty()) {
      ++failures;
      err << "FAIL trial " << t << ": type=" << to_char(spec.type) << " p=" << spec.p << " n=" << spec.n
          << " seed=" << spec.seed << '\n';
      for (const auto& msg : problems) err << "  " << msg << '\n';
      err << "  reproduce: hvbox gen --type " << to_char(spec.type) << " --p " << spec.p << " --n " << spec.n
          << " --seed " << spec.seed << " --out trial.txt && hvbox run --algorithm hbda-ni --ref";
      for (std::size_t j = 0; j < spec.p; ++j) err << " 1";
      err << " --input trial.txt\n";
    }
  }
  out << "verify: " << opt.trials - failures << "/" << opt.trials << " trials passed\n";
  return failures == 0 ? ok : verify_failed;
}

// ---------------------------------------------------------------------------

struct BenchOptions {
  std::string suite = "cxl";
  std::vector<std::string> algorithms{"hbda-ni", "hbda-i", "wfg-sliced", "wfg-incr"};
  std::size_t reps = 10;
  std::string out = "bench.csv";
  /// Multiplies every instance size; 1 reproduces the full grid.
  double scale = 1.0;
  std::size_t p_min = 0;
  std::size_t p_max = 0;
  std::size_t instances = 1;
  std::uint64_t seed = 1;
};

inline constexpr const char* bench_header =
    "algorithm,type,p,n,seed,k,rep,hypervolume,wall_time_ns,lubs_created,lubs_retired,dominance_tests,"
    "wfg_calls_dim2,wfg_calls_total,limitset_points";

/// Instances of a benchmark suite, in run order.
inline std::vector<InstanceSpec> bench_grid(const BenchOptions& opt) {
  std::vector<InstanceSpec> specs;
  auto wanted = [&](std::size_t p) { return (opt.p_min == 0 || p >= opt.p_min) && (opt.p_max == 0 || p <= opt.p_max); };
  auto scaled = [&](double n) { return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(n * opt.scale))); };
  if (opt.suite == "cxl") {
    for (InstanceType type : {InstanceType::C, InstanceType::X, InstanceType::L}) {
      for (std::size_t p = 4; p <= 10; ++p) {
        if (!wanted(p)) continue;
        for (std::size_t i = 1; i <= 10; ++i) {
          for (std::size_t inst = 0; inst < opt.instances; ++inst) {
            InstanceSpec s;
            s.type = type;
            s.p = p;
            s.n = scaled(100.0 * static_cast<double>(i));
            s.seed = mix_seed(opt.seed ^ (p << 8) ^ (i << 16) ^ (inst << 24) ^ (static_cast<std::uint64_t>(type) << 40));
            specs.push_back(s);
          }
        }
      }
    }
  } else if (opt.suite == "hard") {
    const std::pair<std::size_t, double> caps[] = {{4, 1000.0}, {6, 900.0}, {8, 300.0}, {10, 150.0}};
    for (InstanceType type : {InstanceType::H, InstanceType::M}) {
      for (const auto& [p, cap] : caps) {
        if (!wanted(p)) continue;
        const double h = static_cast<double>(p / 2);
        std::size_t last_k = 0;
        for (std::size_t i = 1; i <= 10; ++i) {
          const std::size_t k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(cap * opt.scale / h * i / 10.0)));
          if (k == last_k) continue;
          last_k = k;
          InstanceSpec s;
          s.type = type;
          s.p = p;
          s.k = k;
          s.n = (p / 2) * k;
          s.normalize = true;
          specs.push_back(s);
        }
      }
    }
  } else {
    throw InputError("unknown suite '" + opt.suite + "' (expected cxl or hard)");
  }
  return specs;
}

inline void write_plot_script(const std::string& csv_path, std::ostream& os) {
  os << "# gnuplot script: mean wall time against n, one panel per dimension.\n"
     << "# usage: gnuplot -e \"csv='" << csv_path << "'\" " << csv_path << ".gp\n"
     << "if (!exists(\"csv\")) csv = '" << csv_path << "'\n"
     << "set datafile separator ','\n"
     << "set terminal pngcairo size 1400,1000\n"
     << "set output csv.'.png'\n"
     << "set logscale y\n"
     << "set xlabel 'n'\n"
     << "set ylabel 'wall time [s]'\n"
     << "set key left top\n"
     << "algos = system(\"tail -n +2 '\".csv.\"' | cut -d, -f1 | sort -u | tr '\\n' ' '\")\n"
     << "dims = system(\"tail -n +2 '\".csv.\"' | cut -d, -f3 | sort -n -u | tr '\\n' ' '\")\n"
     << "set multiplot layout 2,4\n"
     << "do for [d in dims] {\n"
     << "  set title 'p = '.d\n"
     << "  plot for [a in algos] '< awk -F, -v a='.a.' -v d='.d.' '\\''NR>1 && $1==a && $3==d "
        "{s[$4]+=$9; c[$4]++} END {for (n in s) print n\",\"s[n]/c[n]/1e9}'\\'' '.csv.' | sort -t, -n' "
        "using 1:2 with linespoints title a\n"
     << "}\n"
     << "unset multiplot\n";
}

inline int cmd_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  std::vector<Algorithm> algos;
  std::vector<InstanceSpec> specs;
  try {
    for (const auto& a : opt.algorithms) algos.push_back(parse_algorithm(a));
    specs = bench_grid(opt);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return bad_input;
  }
  std::ofstream csv(opt.out);
  if (!csv) {
    err << "error: cannot write '" << opt.out << "'\n";
    return bad_input;
  }
  csv << bench_header << '\n';
  std::size_t rows = 0;
  for (const auto& spec : specs) {
    const Instance inst = generate(spec);
    for (Algorithm algo : algos) {
      for (std::size_t rep = 0; rep < opt.reps; ++rep) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
          o = compute(algo, inst.points, inst.ref);
        } catch (const BudgetError& e) {
          err << "skip " << name_of(algo) << " on " << describe(inst) << ": " << e.what() << '\n';
          break;
        }
        const auto t1 = std::chrono::steady_clock::now();
        const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        csv << name_of(algo) << ',' << to_char(spec.type) << ',' << spec.p << ',' << inst.points.size() << ','
            << spec.seed << ',' << spec.k << ',' << rep << ',' << format_double(o.volume) << ',' << ns << ','
            << o.lubs_created << ',' << o.lubs_retired << ',' << o.dominance_tests << ',' << o.wfg_calls_dim2 << ','
            << o.wfg_calls_total << ',' << o.limitset_points << '\n';
        ++rows;
      }
    }
  }
  std::ofstream gp(opt.out + ".gp");
  write_plot_script(opt.out, gp);
  out << "wrote " << rows << " rows to " << opt.out << " and plot script " << opt.out << ".gp\n";
  return ok;
}

}  // namespace hvbox::cli

#endif  // HVBOX_TOOLS_COMMANDS_HPP
