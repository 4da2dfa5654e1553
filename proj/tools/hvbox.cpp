#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace hvbox::cli;

  CLI::App app{"Hypervolume by box decomposition"};
  app.require_subcommand(1);

  RunOptions run;
  std::string direction = "min";
  auto* run_cmd = app.add_subcommand("run", "Compute the hypervolume of every front in a point file");
  run_cmd->add_option("--algorithm", run.algorithm, "hbda-ni|hbda-i|wfg|wfg-sliced|wfg-incr|oracle-ie|oracle-grid")
      ->capture_default_str();
  run_cmd->add_option("--ref", run.ref, "Reference point, one value per objective")->required()->expected(2, -1);
  run_cmd->add_option("--direction", direction, "min or max")->check(CLI::IsMember({"min", "max"}))->capture_default_str();
  run_cmd->add_option("--input", run.input, "Point file")->required();

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("--type", gen.type, "C|X|L|H|M")->required();
  gen_cmd->add_option("--p", gen.p, "Number of objectives")->required();
  gen_cmd->add_option("--n", gen.n, "Number of points (C, X, L)");
  gen_cmd->add_option("--k", gen.k, "Block size (H, M)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  gen_cmd->add_flag("--normalize", gen.normalize, "Map M rows into (0,1)^p");
  gen_cmd->add_option("--out", gen.out, "Output file")->required();
  gen_cmd->add_option("--maximize-twin", gen.maximize_twin, "Also write the 1 - z maximization twin here");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check all algorithms against the exact oracles");
  verify_cmd->add_option("--p-max", verify.p_max)->capture_default_str();
  verify_cmd->add_option("--n-max", verify.n_max)->capture_default_str();
  verify_cmd->add_option("--trials", verify.trials)->capture_default_str();
  verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
  verify_cmd->add_option("--mc-samples", verify.mc_samples, "Monte Carlo samples per trial")->capture_default_str();
  verify_cmd->add_flag("--inject-fault", verify.inject_fault, "Corrupt one box per trial (self-test)");

  BenchOptions bench;
  std::string algorithms;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
  bench_cmd->add_option("--suite", bench.suite, "cxl or hard")->capture_default_str();
  bench_cmd->add_option("--algorithms", algorithms, "Comma-separated algorithm names");
  bench_cmd->add_option("--reps", bench.reps)->capture_default_str();
  bench_cmd->add_option("--out", bench.out)->capture_default_str();
  bench_cmd->add_option("--scale", bench.scale, "Instance size multiplier")->capture_default_str();
  bench_cmd->add_option("--p-min", bench.p_min);
  bench_cmd->add_option("--p-max", bench.p_max);
  bench_cmd->add_option("--instances", bench.instances, "Instances per (type, p, n)")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bad_input;
  }

  if (*run_cmd) {
    run.direction = direction == "max" ? hvbox::Direction::maximize : hvbox::Direction::minimize;
    return cmd_run(run, std::cout, std::cerr);
  }
  if (*gen_cmd) return cmd_gen(gen, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
  if (*bench_cmd) {
    if (!algorithms.empty()) {
      bench.algorithms.clear();
      std::size_t start = 0;
      while (start <= algorithms.size()) {
        const std::size_t comma = algorithms.find(',', start);
        const std::size_t end = comma == std::string::npos ? algorithms.size() : comma;
        if (end > start) bench.algorithms.push_back(algorithms.substr(start, end - start));
        start = end + 1;
      }
    }
    return cmd_bench(bench, std::cout, std::cerr);
  }
  return bad_input;
}
