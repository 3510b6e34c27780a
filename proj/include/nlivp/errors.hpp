#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlivp {

/// Base of all toolkit errors. `kind()` is what the CLI maps to exit codes:
/// config -> 3, hypothesis -> 1, evaluation / non_convergence / internal -> 2.
class Error : public std::runtime_error {
 public:
  enum class Kind { config, hypothesis, evaluation, non_convergence, internal };

  Error(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Malformed configuration: bad JSON, schema violation, inconsistent numbers.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(Kind::config, message) {}
};

/// An index (component, node, sequence entry) outside its valid range.
class IndexError : public ConfigError {
 public:
  explicit IndexError(const std::string& message) : ConfigError(message) {}
};

/// Expression source that does not lex/parse. `position` is a 1-based column.
class SyntaxError : public ConfigError {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : ConfigError("syntax error at position " + std::to_string(position) +
                    ": expected " + expected),
        position_(position),
        expected_(expected) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

/// Reference to an unknown function, variable, or parameter.
class NameError : public ConfigError {
 public:
  explicit NameError(const std::string& message) : ConfigError(message) {}
};

/// A component RHS touched a state index outside its declared coupling band.
class BandViolation : public ConfigError {
 public:
  BandViolation(int component, int index)
      : ConfigError("component " + std::to_string(component) +
                    " read state index " + std::to_string(index) +
                    " outside its declared coupling band"),
        component_(component),
        index_(index) {}

  int component() const { return component_; }
  int index() const { return index_; }

 private:
  int component_;
  int index_;
};

/// The standing assumption <alpha_n, 1> != 1 fails for some component.
class HypothesisViolation : public Error {
 public:
  explicit HypothesisViolation(const std::string& message, int component = 0)
      : Error(Kind::hypothesis, message), component_(component) {}

  int component() const { return component_; }

 private:
  int component_;
};

/// A numeric evaluation produced a domain error or a non-finite value.
/// Carries the (t, component) location when raised from a sweep.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& message)
      : Error(Kind::evaluation, message) {}

  EvaluationError(const std::string& message, double t, int component)
      : Error(Kind::evaluation,
              message + " (at t=" + std::to_string(t) + ", component " +
                  std::to_string(component) + ")"),
        t_(t),
        component_(component) {}

  std::optional<double> t() const { return t_; }
  std::optional<int> component() const { return component_; }

 private:
  std::optional<double> t_;
  std::optional<int> component_;
};

/// An iteration hit its cap before meeting the tolerance. Keeps the
/// residual history so callers can report how the run behaved.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& message, std::vector<double> residuals)
      : Error(Kind::non_convergence, message),
        residuals_(std::move(residuals)) {}

  const std::vector<double>& residual_history() const { return residuals_; }

 private:
  std::vector<double> residuals_;
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message)
      : Error(Kind::internal, message) {}
};

}  // namespace nlivp
