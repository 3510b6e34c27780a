#pragma once

#include <string>

#include <json.hpp>

#include "nlivp/problem.hpp"

namespace nlivp {

struct LoadOptions {
  /// When > 0, extend a rule-generated seminorm schedule to this many levels
  /// (the check command's --p-max). Explicit n_seq/t_seq cannot be extended.
  int p_levels = 0;
};

/// Parse and validate a configuration document (strict schema: unknown keys
/// are rejected) and assemble the problem. Throws ConfigError on any schema
/// or consistency problem.
ProblemSpec build_problem(const nlohmann::json& document,
                          const LoadOptions& options = {});

/// Read the file and delegate to build_problem.
ProblemSpec load_problem(const std::string& path,
                         const LoadOptions& options = {});

}  // namespace nlivp
