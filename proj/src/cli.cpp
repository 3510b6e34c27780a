#include "nlivp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nlivp/config.hpp"
#include "nlivp/errors.hpp"
#include "nlivp/hypothesis.hpp"
#include "nlivp/io.hpp"
#include "nlivp/picard.hpp"
#include "nlivp/shooting.hpp"
#include "nlivp/truncation.hpp"

namespace nlivp {

namespace {

using nlohmann::ordered_json;

int map_error(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::config:
      return exit_config;
    case Error::Kind::hypothesis:
      return exit_hypothesis;
    default:
      return exit_numerical;
  }
}

ordered_json opt_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  out << body;
  if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

ExecPolicy policy_of(bool serial) {
  return serial ? ExecPolicy::serial : default_policy();
}

std::vector<int> parse_truncations(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--truncations: '" + item + "' is not an integer");
    }
  }
  if (out.empty())
    throw ConfigError("--truncations must list at least one level");
  return out;
}

}  // namespace

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  try {
    LoadOptions load;
    load.p_levels = args.p_max;
    ProblemSpec spec = load_problem(args.config_path, load);
    if (!spec.envelope)
      throw ConfigError(
          "problem.envelopes is required by the check command");

    int p_max = args.p_max > 0 ? args.p_max
                               : static_cast<int>(spec.seminorms.size());
    HypothesisReport report = build_report(spec, p_max);
    SamplingReport sampling = validate_envelope_by_sampling(
        spec, args.samples, args.radius, args.seed);

    out << "   p   n_p        t_p        G_p     ||A_p||        C_p    "
           "theta_p        M_p        K_p      rho_p        lhs  verdict\n";
    for (const PRecord& r : report.records) {
      char line[256];
      auto cell = [](std::optional<double> v) {
        return v ? *v : std::nan("");
      };
      std::snprintf(line, sizeof(line),
                    "%4d %5d %10.5g %10.6g %10.6g %10.6g %10.6g %10.6g "
                    "%10.6g %10.6g %10.8g  %s%s\n",
                    r.p, r.n_p, r.t_p, r.G, r.normA, r.C, cell(r.theta),
                    cell(r.M), cell(r.K), cell(r.rho), r.lhs,
                    r.pass ? "pass" : "FAIL", r.marginal ? " (marginal)" : "");
      out << line;
    }
    if (!report.one_value_ok) {
      out << "hypothesis <alpha_n,1> != 1 FAILS for component(s):";
      for (int n : report.violations) out << " " << n;
      out << "\n";
    }
    for (const std::string& w : report.warnings)
      out << "warning: " << w << "\n";
    out << "envelope sampling: " << sampling.violation_count
        << " violation(s) in " << sampling.samples << " samples (seed "
        << sampling.seed << ")\n";
    out << (report.overall_pass ? "verdict: all levels pass\n"
                                : "verdict: FAIL\n");

    if (!args.json_out.empty()) {
      ordered_json doc;
      doc["one_value_ok"] = report.one_value_ok;
      doc["violations"] = report.violations;
      doc["overall_pass"] = report.overall_pass;
      doc["schedule"] = ordered_json::array();
      for (const PRecord& r : report.records) {
        ordered_json rec;
        rec["p"] = r.p;
        rec["n_p"] = r.n_p;
        rec["t_p"] = r.t_p;
        rec["G"] = r.G;
        rec["normA"] = r.normA;
        rec["B"] = r.B;
        rec["C"] = r.C;
        rec["theta"] = opt_json(r.theta);
        rec["M"] = opt_json(r.M);
        rec["K"] = opt_json(r.K);
        rec["rho"] = opt_json(r.rho);
        rec["lhs"] = r.lhs;
        rec["pass"] = r.pass;
        rec["marginal"] = r.marginal;
        doc["schedule"].push_back(std::move(rec));
      }
      doc["warnings"] = report.warnings;
      ordered_json sj;
      sj["samples"] = sampling.samples;
      sj["radius"] = sampling.radius;
      sj["seed"] = sampling.seed;
      sj["violation_count"] = sampling.violation_count;
      sj["violations"] = ordered_json::array();
      for (const SamplingViolation& v : sampling.violations) {
        ordered_json vj;
        vj["p"] = v.p;
        vj["t"] = v.t;
        vj["f_value"] = v.f_value;
        vj["bound"] = v.bound;
        vj["tail_variant"] = v.tail_variant;
        sj["violations"].push_back(std::move(vj));
      }
      doc["sampling"] = std::move(sj);
      write_text_file(args.json_out, doc.dump(2) + "\n");
    }
    return report.overall_pass ? exit_ok : exit_hypothesis;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return map_error(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  }
}

namespace {

SolveResult dispatch_solve(const ProblemSpec& spec, const std::string& method,
                           double tol, int max_iter, ExecPolicy policy) {
  if (method == "picard") {
    PicardSettings s;
    s.tol = tol;
    s.max_iter = max_iter > 0 ? max_iter : 200;
    s.policy = policy;
    return solve_picard(spec, s);
  }
  if (method == "shoot") {
    ShootingSettings s;
    s.tol = tol;
    s.max_iter = max_iter > 0 ? max_iter : 100;
    s.policy = policy;
    return solve_shooting(spec, s);
  }
  throw ConfigError("--method must be \"picard\" or \"shoot\", got \"" +
                    method + "\"");
}

ordered_json solve_report(const SolveResult& result, const ProblemSpec& spec) {
  ordered_json doc;
  doc["method"] = result.method;
  doc["iterations"] = result.iterations;
  doc["final_residual"] = result.final_residual;
  doc["nonlocal_residuals"] = result.nonlocal_residuals;
  doc["seminorms"] = ordered_json::array();
  for (std::size_t i = 0; i < result.seminorms.size(); ++i) {
    ordered_json rec;
    int p = static_cast<int>(i) + 1;
    rec["p"] = p;
    rec["P"] = result.seminorms[i].P;
    rec["Q"] = result.seminorms[i].Q;
    rec["R"] = result.seminorms[i].R;
    std::optional<double> rho;
    if (spec.envelope) {
      try {
        rho = compute_constants(spec, p).rho;
      } catch (const Error&) {
        // Inequality fails at this level; no invariant radius exists.
      }
    }
    rec["rho"] = opt_json(rho);
    doc["seminorms"].push_back(std::move(rec));
  }
  doc["initial_guess"] = result.initial_guess;
  doc["warnings"] = result.warnings;
  return doc;
}

}  // namespace

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  try {
    ProblemSpec spec = load_problem(args.config_path);
    if (!(args.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (args.max_iter < 0) throw ConfigError("--max-iter must be positive");
    SolveResult result = dispatch_solve(spec, args.method, args.tol,
                                        args.max_iter, policy_of(args.serial));

    double max_nonlocal = 0.0;
    for (double v : result.nonlocal_residuals)
      max_nonlocal = std::max(max_nonlocal, v);
    out << "method: " << result.method << "\n"
        << "iterations: " << result.iterations << "\n"
        << "final_residual: " << format17(result.final_residual) << "\n"
        << "max_nonlocal_residual: " << format17(max_nonlocal) << "\n";
    for (const std::string& w : result.warnings)
      out << "warning: " << w << "\n";

    if (!args.out_csv.empty()) {
      std::ostringstream csv;
      write_trajectory_csv(csv, result.trajectory);
      write_text_file(args.out_csv, csv.str());
    }
    if (!args.report_json.empty())
      write_text_file(args.report_json,
                      solve_report(result, spec).dump(2) + "\n");
    return exit_ok;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    err << "residual history:";
    for (double r : e.residual_history()) err << " " << format17(r);
    err << "\n";
    return exit_numerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return map_error(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  }
}

int run_study(const StudyArgs& args, std::ostream& out, std::ostream& err) {
  try {
    ProblemSpec spec = load_problem(args.config_path);
    std::vector<int> levels = parse_truncations(args.truncations);

    StudySettings settings;
    if (args.method == "picard")
      settings.method = SolverMethod::picard;
    else if (args.method == "shoot")
      settings.method = SolverMethod::shoot;
    else
      throw ConfigError("--method must be \"picard\" or \"shoot\", got \"" +
                        args.method + "\"");
    if (!(args.tol > 0.0)) throw ConfigError("--tol must be positive");
    if (args.max_iter < 0) throw ConfigError("--max-iter must be positive");
    settings.tol = args.tol;
    settings.max_iter = args.max_iter > 0
                            ? args.max_iter
                            : (settings.method == SolverMethod::picard ? 200
                                                                       : 100);
    settings.policy = policy_of(args.serial);

    StudyTable table = convergence_study(spec, levels, settings);

    std::ostringstream csv;
    write_study_csv(csv, table);
    if (!args.out_csv.empty())
      write_text_file(args.out_csv, csv.str());
    else
      out << csv.str();

    if (!table.nonincreasing)
      out << "note: d(N) is not monotonically nonincreasing\n";

    bool all_converged = true;
    for (const StudyRow& row : table.rows)
      if (row.status != "converged") all_converged = false;
    if (!all_converged) {
      err << "error: at least one truncation level failed to solve\n";
      return exit_numerical;
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return map_error(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace nlivp
