#pragma once

#include <cstdint>
#include <ostream>
#include <string>

namespace nlivp {

/// CLI exit codes: 0 success, 1 hypothesis failure, 2 numerical failure,
/// 3 configuration error.
enum ExitCode : int {
  exit_ok = 0,
  exit_hypothesis = 1,
  exit_numerical = 2,
  exit_config = 3
};

struct CheckArgs {
  std::string config_path;
  int p_max = 0;  // 0: use the configured schedule
  std::string json_out;
  std::uint64_t seed = 42;
  int samples = 10000;
  double radius = 10.0;
  bool serial = false;
};

struct SolveArgs {
  std::string config_path;
  std::string method = "picard";  // or "shoot"
  double tol = 1e-10;
  int max_iter = 0;  // 0: method default (picard 200, shoot 100)
  std::string out_csv;
  std::string report_json;
  bool serial = false;
};

struct StudyArgs {
  std::string config_path;
  std::string truncations = "4,8,16,32";
  std::string method = "picard";
  double tol = 1e-10;
  int max_iter = 0;
  std::string out_csv;
  bool serial = false;
};

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int run_study(const StudyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace nlivp
