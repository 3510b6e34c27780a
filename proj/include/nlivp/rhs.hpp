#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "nlivp/dsl.hpp"
#include "nlivp/state.hpp"

namespace nlivp {

/// The right-hand-side family f_n(t, x). Implementations must be pure and
/// safe to evaluate concurrently at distinct (n, t, x).
class RhsFamily {
 public:
  virtual ~RhsFamily() = default;

  /// f_n(t, x) with x an absolute-indexed state view (1-based).
  virtual double eval(int n, double t, const StateView& x) const = 0;

  /// Relative coupling band (generator families). Per-component families
  /// report the envelope of their per-component reads expressed as offsets.
  virtual CouplingBand band() const = 0;

  /// Largest / smallest state index component n may read.
  virtual int max_read_index(int n) const { return n + band().upper; }
  virtual int min_read_index(int n) const { return n - band().lower; }

  /// True when f_n is defined for every n (infinite family); false for a
  /// fixed-size component list.
  virtual bool is_generator() const = 0;
  /// List size for finite families; 0 for generators.
  virtual int component_count() const { return 0; }
};

/// Infinite family from a single expression in (t, n, x[n+k]); only relative
/// state indices are allowed, which keeps the coupling band declarable.
class DslGeneratorRhs : public RhsFamily {
 public:
  DslGeneratorRhs(dsl::Expr expr, dsl::ParamTable params);

  double eval(int n, double t, const StateView& x) const override;
  CouplingBand band() const override { return band_; }
  bool is_generator() const override { return true; }
  const dsl::Expr& expr() const { return expr_; }

 private:
  dsl::Expr expr_;
  dsl::ParamTable params_;
  CouplingBand band_;
};

/// Finite system: one expression per component; absolute state indices
/// (x[1]...x[N]) are allowed here.
class DslComponentListRhs : public RhsFamily {
 public:
  DslComponentListRhs(std::vector<dsl::Expr> exprs, dsl::ParamTable params);

  double eval(int n, double t, const StateView& x) const override;
  CouplingBand band() const override { return band_; }
  int max_read_index(int n) const override;
  int min_read_index(int n) const override;
  bool is_generator() const override { return false; }
  int component_count() const override {
    return static_cast<int>(exprs_.size());
  }
  const dsl::Expr& expr(int n) const;

 private:
  std::vector<dsl::Expr> exprs_;
  dsl::ParamTable params_;
  CouplingBand band_;
};

/// Infinite family backed by a native function (builtin problems).
class NativeRhs : public RhsFamily {
 public:
  using Fn = std::function<double(int n, double t, const StateView& x)>;

  NativeRhs(std::string name, Fn fn, CouplingBand band)
      : name_(std::move(name)), fn_(std::move(fn)), band_(band) {}

  double eval(int n, double t, const StateView& x) const override {
    return fn_(n, t, x);
  }
  CouplingBand band() const override { return band_; }
  bool is_generator() const override { return true; }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn fn_;
  CouplingBand band_;
};

/// Infinite extension of a finite family: component n beyond the list reuses
/// the final component (which keeps reading its original absolute indices).
class PaddedRhs : public RhsFamily {
 public:
  explicit PaddedRhs(std::shared_ptr<const RhsFamily> inner);

  double eval(int n, double t, const StateView& x) const override;
  CouplingBand band() const override;
  int max_read_index(int n) const override;
  int min_read_index(int n) const override;
  bool is_generator() const override { return true; }
  int inner_count() const { return inner_count_; }
  const RhsFamily& inner() const { return *inner_; }

 private:
  std::shared_ptr<const RhsFamily> inner_;
  int inner_count_;
};

}  // namespace nlivp
