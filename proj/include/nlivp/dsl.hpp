#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nlivp/state.hpp"

namespace nlivp::dsl {

enum class Fn1 { sin, cos, exp, log, abs, atan, sqrt };
enum class Fn2 { min, max };

/// Index of a state or sequence reference: an integer constant, or an
/// offset from n or p. State references may only use the n base (the
/// coupling band must stay declarable); sequence references may use any.
struct IndexForm {
  enum class Base { absolute, n, p };
  Base base = Base::absolute;
  int value = 0;
};

class Expr;
struct EvalContext;

/// A named parameter sequence: either a literal 1-based list or a closed-form
/// rule in n.
struct SequenceParam {
  std::vector<double> values;           // used when rule is absent
  std::shared_ptr<const Expr> rule;     // expression in n

  double at(int n, const EvalContext& outer) const;
};

/// Bindings an expression is evaluated against. Absent bindings raise
/// NameError; state access outside the stored window follows the closure.
struct EvalContext {
  std::optional<double> t;
  std::optional<int> n;
  std::optional<int> p;
  const std::map<std::string, double, std::less<>>* scalars = nullptr;
  const std::map<std::string, SequenceParam, std::less<>>* sequences = nullptr;
  const StateView* state = nullptr;
};

/// Immutable arithmetic expression over t, n, p, scalar parameters, sequence
/// parameters name[i], and state references x[i]. Parsed from source text;
/// grammar: ^ (right assoc) > unary - > * / > + -, calls f(e) and f(e1,e2),
/// indices restricted to n, n+k, n-k, or an integer constant.
class Expr {
 public:
  struct Node {
    enum class Kind {
      literal,
      var,
      state,
      seq,
      neg,
      add,
      sub,
      mul,
      div,
      pow,
      call1,
      call2
    };
    Kind kind = Kind::literal;
    double literal = 0.0;
    std::string name;  // var / seq
    IndexForm index;   // state / seq
    Fn1 fn1 = Fn1::sin;
    Fn2 fn2 = Fn2::min;
    int a = -1;
    int b = -1;
  };

  static Expr parse(std::string_view source);

  const std::string& source() const { return source_; }
  std::string to_string() const;
  bool structurally_equal(const Expr& other) const;

  double eval(const EvalContext& env) const;

  bool has_state_ref() const;
  bool has_relative_state_ref() const;
  bool has_absolute_state_ref() const;
  bool references_var(std::string_view name) const;

  /// Band over relative state references: (max negative offset, max positive
  /// offset); (0,0) when no state reference. ConfigError when an absolute
  /// reference makes the relative band undefined.
  CouplingBand band() const;

  /// Smallest/largest state index read when evaluated at component n.
  int min_read_index(int n) const;
  int max_read_index(int n) const;

 private:
  Expr() = default;

  std::vector<Node> nodes_;
  int root_ = -1;
  std::string source_;

  friend class Parser;
  double eval_node(int idx, const EvalContext& env) const;
  void print_node(int idx, int context, std::string& out) const;
  bool equal_nodes(int idx, const Expr& other, int other_idx) const;
};

/// Named parameters available to expressions: scalars plus sequences.
struct ParamTable {
  std::map<std::string, double, std::less<>> scalars;
  std::map<std::string, SequenceParam, std::less<>> sequences;
};

}  // namespace nlivp::dsl
