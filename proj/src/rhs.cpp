#include "nlivp/rhs.hpp"

#include <algorithm>

#include "nlivp/errors.hpp"

namespace nlivp {

DslGeneratorRhs::DslGeneratorRhs(dsl::Expr expr, dsl::ParamTable params)
    : expr_(std::move(expr)), params_(std::move(params)) {
  if (expr_.has_absolute_state_ref())
    throw ConfigError(
        "a generator RHS may only use relative state indices (x[n], x[n+k], "
        "x[n-k])");
  band_ = expr_.band();
}

double DslGeneratorRhs::eval(int n, double t, const StateView& x) const {
  dsl::EvalContext env;
  env.t = t;
  env.n = n;
  env.scalars = &params_.scalars;
  env.sequences = &params_.sequences;
  StateView attributed = x.for_component(n);
  env.state = &attributed;
  return expr_.eval(env);
}

DslComponentListRhs::DslComponentListRhs(std::vector<dsl::Expr> exprs,
                                         dsl::ParamTable params)
    : exprs_(std::move(exprs)), params_(std::move(params)) {
  if (exprs_.empty()) throw ConfigError("component list RHS must not be empty");
  int lo = 0, hi = 0;
  for (std::size_t i = 0; i < exprs_.size(); ++i) {
    int n = static_cast<int>(i) + 1;
    lo = std::min(lo, exprs_[i].min_read_index(n) - n);
    hi = std::max(hi, exprs_[i].max_read_index(n) - n);
  }
  band_ = CouplingBand{-lo, hi};
}

double DslComponentListRhs::eval(int n, double t, const StateView& x) const {
  const dsl::Expr& e = expr(n);
  dsl::EvalContext env;
  env.t = t;
  env.n = n;
  env.scalars = &params_.scalars;
  env.sequences = &params_.sequences;
  StateView attributed = x.for_component(n);
  env.state = &attributed;
  return e.eval(env);
}

const dsl::Expr& DslComponentListRhs::expr(int n) const {
  if (n < 1 || static_cast<std::size_t>(n) > exprs_.size())
    throw IndexError("RHS component " + std::to_string(n) +
                     " out of range 1.." + std::to_string(exprs_.size()));
  return exprs_[static_cast<std::size_t>(n - 1)];
}

int DslComponentListRhs::max_read_index(int n) const {
  return expr(n).max_read_index(n);
}

int DslComponentListRhs::min_read_index(int n) const {
  return expr(n).min_read_index(n);
}

PaddedRhs::PaddedRhs(std::shared_ptr<const RhsFamily> inner)
    : inner_(std::move(inner)) {
  if (!inner_) throw InternalError("padded RHS needs an inner family");
  inner_count_ = inner_->component_count();
  if (inner_->is_generator() || inner_count_ < 1)
    throw ConfigError("only a finite component list can be padded");
}

double PaddedRhs::eval(int n, double t, const StateView& x) const {
  return inner_->eval(std::min(n, inner_count_), t, x);
}

CouplingBand PaddedRhs::band() const {
  // Reads are absolute indices 1..inner_count_, so the relative band of
  // component n widens as n grows; report the inner band for n <= count.
  return inner_->band();
}

int PaddedRhs::max_read_index(int n) const {
  return inner_->max_read_index(std::min(n, inner_count_));
}

int PaddedRhs::min_read_index(int n) const {
  return inner_->min_read_index(std::min(n, inner_count_));
}

}  // namespace nlivp
