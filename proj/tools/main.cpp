#include <iostream>

#include <CLI11.hpp>

#include "nlivp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "nlivp - solver and hypothesis checker for first-order ODE systems on "
      "the half line with nonlocal initial conditions"};
  app.require_subcommand(1);

  nlivp::CheckArgs check_args;
  CLI::App* check = app.add_subcommand(
      "check", "Evaluate the existence-theorem constants and inequality");
  check->add_option("config", check_args.config_path, "problem configuration")
      ->required();
  check->add_option("--p-max", check_args.p_max,
                    "number of seminorm levels to check");
  check->add_option("--json", check_args.json_out, "write a JSON report here");
  check->add_option("--seed", check_args.seed,
                    "RNG seed for envelope sampling (default 42)");
  check->add_option("--samples", check_args.samples,
                    "envelope sampling count (default 10000)");
  check->add_option("--radius", check_args.radius,
                    "envelope sampling radius (default 10)");
  check->add_flag("--serial", check_args.serial,
                  "run the serial reference kernels");

  nlivp::SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve the truncated problem by Picard iteration or shooting");
  solve->add_option("config", solve_args.config_path, "problem configuration")
      ->required();
  solve->add_option("--method", solve_args.method, "picard or shoot");
  solve->add_option("--tol", solve_args.tol, "convergence tolerance");
  solve->add_option("--max-iter", solve_args.max_iter, "iteration cap");
  solve->add_option("--out", solve_args.out_csv, "trajectory CSV path");
  solve->add_option("--report", solve_args.report_json,
                    "JSON diagnostics path");
  solve->add_flag("--serial", solve_args.serial,
                  "run the serial reference kernels");

  nlivp::StudyArgs study_args;
  CLI::App* study = app.add_subcommand(
      "study", "Truncation convergence study over increasing N");
  study->add_option("config", study_args.config_path, "problem configuration")
      ->required();
  study->add_option("--truncations", study_args.truncations,
                    "comma-separated levels, e.g. 4,8,16,32");
  study->add_option("--method", study_args.method, "picard or shoot");
  study->add_option("--tol", study_args.tol, "per-solve tolerance");
  study->add_option("--max-iter", study_args.max_iter, "iteration cap");
  study->add_option("--out", study_args.out_csv, "study CSV path");
  study->add_flag("--serial", study_args.serial,
                  "run the serial reference kernels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : nlivp::exit_config;
  }

  if (check->parsed())
    return nlivp::run_check(check_args, std::cout, std::cerr);
  if (solve->parsed())
    return nlivp::run_solve(solve_args, std::cout, std::cerr);
  return nlivp::run_study(study_args, std::cout, std::cerr);
}
