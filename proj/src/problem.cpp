#include "nlivp/problem.hpp"

#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

const StieltjesFunctional& ProblemSpec::functional(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > functionals.size())
    throw IndexError("functional index " + std::to_string(n) +
                     " out of materialized range 1.." +
                     std::to_string(functionals.size()));
  return functionals[static_cast<std::size_t>(n - 1)];
}

void ProblemSpec::validate() const {
  if (!grid) throw ConfigError("problem has no grid");
  if (!rhs) throw ConfigError("problem has no RHS family");
  if (!(t0 > 0.0)) throw ConfigError("t0 must be positive");
  if (!(t0 < grid->t_max())) throw ConfigError("t0 must be less than t_max");
  if (!grid->has_node(t0)) throw ConfigError("t0 must be a grid node");
  if (truncation < 1) throw ConfigError("truncation level N must be >= 1");
  if (!rhs->is_generator() && truncation != rhs->component_count())
    throw ConfigError(
        "a finite RHS list must be solved at exactly its own size (N=" +
        std::to_string(rhs->component_count()) + ")");
  if (static_cast<int>(functionals.size()) < truncation)
    throw ConfigError("functionals materialized for fewer components than N");

  for (std::size_t i = 0; i < functionals.size(); ++i) {
    if (functionals[i].t0() != t0)
      throw ConfigError("functional " + std::to_string(i + 1) +
                        " has a different t0 than the problem");
    for (double t : functionals[i].required_nodes())
      if (!grid->has_node(t))
        throw ConfigError("functional " + std::to_string(i + 1) +
                          " needs node t=" + std::to_string(t) +
                          " which is not on the grid");
  }

  seminorms.validate(t0, grid->t_max());
  for (double tp : seminorms.t_seq)
    if (!grid->has_node(tp))
      throw ConfigError("seminorm time t_p=" + std::to_string(tp) +
                        " is not a grid node");
  for (int np : seminorms.n_seq)
    if (np > static_cast<int>(functionals.size()))
      throw ConfigError(
          "seminorm index n_p exceeds the materialized functional count");
}

std::vector<StieltjesFunctional> materialize_functionals(
    const FunctionalFamily& family, int count) {
  std::vector<StieltjesFunctional> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 1; n <= count; ++n) out.push_back(family.make(n));
  return out;
}

}  // namespace nlivp
