#pragma once

#include <span>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

/// Substitution rule for state indices beyond the truncation level:
/// zero reads 0, freeze reads the last retained component.
enum class Closure { zero, freeze };

/// Test hook recording raw component accesses (band instrumentation).
class AccessProbe {
 public:
  virtual ~AccessProbe() = default;
  virtual void on_access(int component, int index) = 0;
};

/// f_n may read x_m only for n - lower <= m <= n + upper.
struct CouplingBand {
  int lower = 0;
  int upper = 0;
};

/// Probe that enforces a declared band: any access outside
/// [n - lower, n + upper] throws BandViolation.
class BandEnforcingProbe : public AccessProbe {
 public:
  explicit BandEnforcingProbe(CouplingBand band) : band_(band) {}

  void on_access(int component, int index) override {
    if (index < component - band_.lower || index > component + band_.upper)
      throw BandViolation(component, index);
  }

 private:
  CouplingBand band_;
};

/// Absolute-indexed (1-based) read access to one state row, applying the
/// truncation closure beyond the stored components.
class StateView {
 public:
  StateView(std::span<const double> components, Closure closure,
            int component = 0, AccessProbe* probe = nullptr)
      : components_(components),
        closure_(closure),
        component_(component),
        probe_(probe) {}

  double operator()(int m) const {
    if (probe_) probe_->on_access(component_, m);
    if (m < 1)
      throw IndexError("component " + std::to_string(component_) +
                       " read state index " + std::to_string(m));
    if (static_cast<std::size_t>(m) <= components_.size())
      return components_[static_cast<std::size_t>(m - 1)];
    return closure_ == Closure::zero ? 0.0 : components_.back();
  }

  int size() const { return static_cast<int>(components_.size()); }
  Closure closure() const { return closure_; }

  /// Same view attributed to another component (sweeps reuse one row).
  StateView for_component(int n) const {
    return StateView(components_, closure_, n, probe_);
  }

 private:
  std::span<const double> components_;
  Closure closure_;
  int component_;  // who is reading, for diagnostics
  AccessProbe* probe_;
};

}  // namespace nlivp
