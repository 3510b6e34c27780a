#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "nlivp/dsl.hpp"
#include "nlivp/poly.hpp"

namespace nlivp {

/// Growth envelope: A_p on [0, t0], B_p, C_p with
///   [f(t,x)]_{n_p} <= A_p(t) [x]_{n_p} + B_p   on [0, t0],
///   [f(t,x)]_{n_p} <= C_p ([x]_{n_p} + 1)      on [t0, t_p].
/// A_p must be integrable and nonnegative; B_p, C_p nonnegative.
class GrowthEnvelope {
 public:
  virtual ~GrowthEnvelope() = default;

  virtual double A_value(int p, double t) const = 0;
  /// ||A_p||_{L1(0,t0)} in closed form.
  virtual double A_l1_norm(int p) const = 0;
  virtual double B(int p) const = 0;
  virtual double C(int p, double t_p) const = 0;
};

/// A_p declared as polynomial pieces whose coefficients are expressions in p;
/// the L1 norm is the exact piecewise integral. B and C are expressions in p
/// (C may also use tp).
class PiecewiseEnvelope : public GrowthEnvelope {
 public:
  struct Piece {
    double from = 0.0;
    double to = 0.0;
    std::vector<dsl::Expr> coeffs;
  };

  PiecewiseEnvelope(std::vector<Piece> a_pieces, dsl::Expr b, dsl::Expr c,
                    dsl::ParamTable params, double t0);

  double A_value(int p, double t) const override;
  double A_l1_norm(int p) const override;
  double B(int p) const override;
  double C(int p, double t_p) const override;

 private:
  PiecewisePoly materialize(int p) const;

  std::vector<Piece> a_pieces_;
  dsl::Expr b_;
  dsl::Expr c_;
  dsl::ParamTable params_;
  double t0_;
};

/// A_p given as a closed-form expression in (p, t) together with an explicit
/// closed-form expression for its L1 norm (needed because a non-polynomial
/// A admits no generic exact integral).
class ExprEnvelope : public GrowthEnvelope {
 public:
  ExprEnvelope(dsl::Expr a, dsl::Expr a_l1, dsl::Expr b, dsl::Expr c,
               dsl::ParamTable params);

  double A_value(int p, double t) const override;
  double A_l1_norm(int p) const override;
  double B(int p) const override;
  double C(int p, double t_p) const override;

 private:
  dsl::Expr a_;
  dsl::Expr a_l1_;
  dsl::Expr b_;
  dsl::Expr c_;
  dsl::ParamTable params_;
};

/// Envelope backed by native functions (builtin problems).
class NativeEnvelope : public GrowthEnvelope {
 public:
  NativeEnvelope(std::function<double(int, double)> a_value,
                 std::function<double(int)> a_l1,
                 std::function<double(int)> b,
                 std::function<double(int, double)> c)
      : a_value_(std::move(a_value)),
        a_l1_(std::move(a_l1)),
        b_(std::move(b)),
        c_(std::move(c)) {}

  double A_value(int p, double t) const override { return a_value_(p, t); }
  double A_l1_norm(int p) const override { return a_l1_(p); }
  double B(int p) const override { return b_(p); }
  double C(int p, double t_p) const override { return c_(p, t_p); }

 private:
  std::function<double(int, double)> a_value_;
  std::function<double(int)> a_l1_;
  std::function<double(int)> b_;
  std::function<double(int, double)> c_;
};

}  // namespace nlivp
