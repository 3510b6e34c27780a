#include "nlivp/envelope.hpp"

#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

namespace {

dsl::EvalContext p_context(const dsl::ParamTable& params, int p) {
  dsl::EvalContext env;
  env.p = p;
  env.scalars = &params.scalars;
  env.sequences = &params.sequences;
  return env;
}

double eval_nonnegative(const dsl::Expr& e, const dsl::EvalContext& env,
                        const char* what) {
  double v = e.eval(env);
  if (v < 0.0)
    throw ConfigError(std::string("envelope ") + what +
                      " must be nonnegative, got " + std::to_string(v));
  return v;
}

}  // namespace

PiecewiseEnvelope::PiecewiseEnvelope(std::vector<Piece> a_pieces, dsl::Expr b,
                                     dsl::Expr c, dsl::ParamTable params,
                                     double t0)
    : a_pieces_(std::move(a_pieces)),
      b_(std::move(b)),
      c_(std::move(c)),
      params_(std::move(params)),
      t0_(t0) {}

PiecewisePoly PiecewiseEnvelope::materialize(int p) const {
  dsl::EvalContext env = p_context(params_, p);
  PiecewisePoly poly;
  for (const Piece& piece : a_pieces_) {
    PolyPiece out;
    out.from = piece.from;
    out.to = piece.to;
    for (const dsl::Expr& coeff : piece.coeffs)
      out.coeffs.push_back(coeff.eval(env));
    poly.pieces.push_back(std::move(out));
  }
  poly.validate(0.0, t0_);
  if (poly.min_value() < -1e-12)
    throw ConfigError("envelope A_" + std::to_string(p) +
                      " is negative somewhere on [0, t0]");
  return poly;
}

double PiecewiseEnvelope::A_value(int p, double t) const {
  return materialize(p).value(t);
}

double PiecewiseEnvelope::A_l1_norm(int p) const {
  return materialize(p).abs_integral();
}

double PiecewiseEnvelope::B(int p) const {
  return eval_nonnegative(b_, p_context(params_, p), "B_p");
}

double PiecewiseEnvelope::C(int p, double t_p) const {
  auto scalars = params_.scalars;
  scalars["tp"] = t_p;
  dsl::EvalContext env;
  env.p = p;
  env.scalars = &scalars;
  env.sequences = &params_.sequences;
  return eval_nonnegative(c_, env, "C_p");
}

ExprEnvelope::ExprEnvelope(dsl::Expr a, dsl::Expr a_l1, dsl::Expr b,
                           dsl::Expr c, dsl::ParamTable params)
    : a_(std::move(a)),
      a_l1_(std::move(a_l1)),
      b_(std::move(b)),
      c_(std::move(c)),
      params_(std::move(params)) {}

double ExprEnvelope::A_value(int p, double t) const {
  dsl::EvalContext env = p_context(params_, p);
  env.t = t;
  return eval_nonnegative(a_, env, "A_p(t)");
}

double ExprEnvelope::A_l1_norm(int p) const {
  return eval_nonnegative(a_l1_, p_context(params_, p), "normA");
}

double ExprEnvelope::B(int p) const {
  return eval_nonnegative(b_, p_context(params_, p), "B_p");
}

double ExprEnvelope::C(int p, double t_p) const {
  auto scalars = params_.scalars;
  scalars["tp"] = t_p;
  dsl::EvalContext env;
  env.p = p;
  env.scalars = &scalars;
  env.sequences = &params_.sequences;
  return eval_nonnegative(c_, env, "C_p");
}

}  // namespace nlivp
