#include "nlivp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "nlivp/builtin.hpp"
#include "nlivp/errors.hpp"
#include "nlivp/hypothesis.hpp"

namespace nlivp {

namespace {

using nlohmann::json;

void require_object(const json& v, const std::string& where) {
  if (!v.is_object()) throw ConfigError(where + " must be an object");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

const json& require(const json& obj, const std::string& where,
                    const char* key) {
  const json* v = find(obj, key);
  if (!v) throw ConfigError(where + "." + key + " is required");
  return *v;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number())
    throw ConfigError(where + " must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + " must be finite");
  return d;
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer())
    throw ConfigError(where + " must be an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + " must be a string");
  return v.get<std::string>();
}

/// A number is wrapped as a literal expression; a string is parsed.
dsl::Expr as_expr(const json& v, const std::string& where) {
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return dsl::Expr::parse(buf);
  }
  if (v.is_string()) {
    try {
      return dsl::Expr::parse(v.get<std::string>());
    } catch (const ConfigError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + " must be a number or an expression string");
}

const std::set<std::string> kReservedNames = {"t", "n", "p", "x", "tp", "t0"};

dsl::ParamTable parse_params(const json* params, double t0,
                             const std::string& where) {
  dsl::ParamTable table;
  table.scalars["t0"] = t0;
  if (!params) return table;
  require_object(*params, where);
  for (auto it = params->begin(); it != params->end(); ++it) {
    const std::string& name = it.key();
    if (kReservedNames.count(name))
      throw ConfigError(where + ": parameter name '" + name + "' is reserved");
    const json& v = it.value();
    if (v.is_number()) {
      double d = as_number(v, where + "." + name);
      table.scalars[name] = d;
      dsl::SequenceParam seq;
      seq.values = {};
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", d);
      seq.rule = std::make_shared<dsl::Expr>(dsl::Expr::parse(buf));
      table.sequences[name] = std::move(seq);
    } else if (v.is_array()) {
      dsl::SequenceParam seq;
      for (std::size_t i = 0; i < v.size(); ++i)
        seq.values.push_back(
            as_number(v[i], where + "." + name + "[" + std::to_string(i) + "]"));
      table.sequences[name] = std::move(seq);
    } else if (v.is_string()) {
      dsl::Expr e = as_expr(v, where + "." + name);
      if (e.references_var("n")) {
        dsl::SequenceParam seq;
        seq.rule = std::make_shared<dsl::Expr>(std::move(e));
        table.sequences[name] = std::move(seq);
      } else {
        dsl::EvalContext env;
        env.scalars = &table.scalars;
        table.scalars[name] = e.eval(env);
      }
    } else {
      throw ConfigError(where + "." + name +
                        " must be a number, list, or expression string");
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

/// Functional family declared by closed-form rules in n: literal abscissae
/// with weight expressions, and density pieces with coefficient expressions.
class GeneratorFunctionalFamily : public FunctionalFamily {
 public:
  struct MassRule {
    double t = 0.0;
    dsl::Expr weight;
  };
  struct PieceRule {
    double from = 0.0;
    double to = 0.0;
    std::vector<dsl::Expr> coeffs;
  };

  GeneratorFunctionalFamily(std::vector<MassRule> masses,
                            std::vector<PieceRule> pieces,
                            std::shared_ptr<const dsl::ParamTable> params,
                            double t0)
      : masses_(std::move(masses)),
        pieces_(std::move(pieces)),
        params_(std::move(params)),
        t0_(t0) {}

  StieltjesFunctional make(int n) const override {
    dsl::EvalContext env;
    env.n = n;
    env.scalars = &params_->scalars;
    env.sequences = &params_->sequences;
    std::vector<PointMass> masses;
    for (const MassRule& m : masses_)
      masses.push_back(PointMass{m.t, m.weight.eval(env)});
    PiecewisePoly density;
    for (const PieceRule& piece : pieces_) {
      PolyPiece out;
      out.from = piece.from;
      out.to = piece.to;
      for (const dsl::Expr& c : piece.coeffs)
        out.coeffs.push_back(c.eval(env));
      density.pieces.push_back(std::move(out));
    }
    return StieltjesFunctional(std::move(masses), std::move(density), t0_);
  }

 private:
  std::vector<MassRule> masses_;
  std::vector<PieceRule> pieces_;
  std::shared_ptr<const dsl::ParamTable> params_;
  double t0_;
};

PiecewisePoly parse_density(const json& v, const std::string& where) {
  require_object(v, where);
  check_keys(v, where, {"pieces"});
  PiecewisePoly density;
  const json& pieces = require(v, where, "pieces");
  if (!pieces.is_array()) throw ConfigError(where + ".pieces must be a list");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string pwhere = where + ".pieces[" + std::to_string(i) + "]";
    const json& pj = pieces[i];
    require_object(pj, pwhere);
    check_keys(pj, pwhere, {"from", "to", "coeffs"});
    PolyPiece piece;
    piece.from = as_number(require(pj, pwhere, "from"), pwhere + ".from");
    piece.to = as_number(require(pj, pwhere, "to"), pwhere + ".to");
    const json& coeffs = require(pj, pwhere, "coeffs");
    if (!coeffs.is_array() || coeffs.empty())
      throw ConfigError(pwhere + ".coeffs must be a non-empty list");
    for (std::size_t c = 0; c < coeffs.size(); ++c)
      piece.coeffs.push_back(as_number(
          coeffs[c], pwhere + ".coeffs[" + std::to_string(c) + "]"));
    density.pieces.push_back(std::move(piece));
  }
  return density;
}

StieltjesFunctional parse_functional(const json& v, double t0,
                                     const std::string& where) {
  require_object(v, where);
  check_keys(v, where, {"point_masses", "density"});
  std::vector<PointMass> masses;
  if (const json* pm = find(v, "point_masses")) {
    if (!pm->is_array())
      throw ConfigError(where + ".point_masses must be a list");
    for (std::size_t i = 0; i < pm->size(); ++i) {
      const std::string mwhere =
          where + ".point_masses[" + std::to_string(i) + "]";
      const json& mj = (*pm)[i];
      require_object(mj, mwhere);
      check_keys(mj, mwhere, {"t", "w"});
      masses.push_back(
          PointMass{as_number(require(mj, mwhere, "t"), mwhere + ".t"),
                    as_number(require(mj, mwhere, "w"), mwhere + ".w")});
    }
  }
  PiecewisePoly density;
  if (const json* d = find(v, "density"))
    density = parse_density(*d, where + ".density");
  return StieltjesFunctional(std::move(masses), std::move(density), t0);
}

/// Finite explicit list with a closed-form rule for every later index.
class HybridFunctionalFamily : public FunctionalFamily {
 public:
  HybridFunctionalFamily(std::vector<StieltjesFunctional> list,
                         std::shared_ptr<const FunctionalFamily> tail)
      : list_(std::move(list)), tail_(std::move(tail)) {}

  StieltjesFunctional make(int n) const override {
    if (n >= 1 && static_cast<std::size_t>(n) <= list_.size())
      return list_[static_cast<std::size_t>(n - 1)];
    return tail_->make(n);
  }

 private:
  std::vector<StieltjesFunctional> list_;
  std::shared_ptr<const FunctionalFamily> tail_;
};

std::vector<StieltjesFunctional> parse_functional_list(
    const json& v, double t0, const std::string& where) {
  if (!v.is_array() || v.empty())
    throw ConfigError(where + " must be a non-empty list");
  std::vector<StieltjesFunctional> list;
  for (std::size_t i = 0; i < v.size(); ++i)
    list.push_back(
        parse_functional(v[i], t0, where + "[" + std::to_string(i) + "]"));
  return list;
}

std::shared_ptr<const FunctionalFamily> parse_functionals(
    const json& v, double t0, std::shared_ptr<const dsl::ParamTable> params,
    const std::string& where) {
  if (v.is_array())
    return std::make_shared<ListFunctionalFamily>(
        parse_functional_list(v, t0, where));

  require_object(v, where);
  check_keys(v, where, {"generator", "list"});
  if (const json* list = find(v, "list")) {
    std::vector<StieltjesFunctional> entries =
        parse_functional_list(*list, t0, where + ".list");
    if (!find(v, "generator"))
      return std::make_shared<ListFunctionalFamily>(std::move(entries));
    json gen_only = v;
    gen_only.erase("list");
    return std::make_shared<HybridFunctionalFamily>(
        std::move(entries),
        parse_functionals(gen_only, t0, params, where));
  }
  const json& gen = require(v, where, "generator");
  require_object(gen, where + ".generator");
  check_keys(gen, where + ".generator", {"point_masses", "density"});

  std::vector<GeneratorFunctionalFamily::MassRule> masses;
  if (const json* pm = find(gen, "point_masses")) {
    if (!pm->is_array())
      throw ConfigError(where + ".generator.point_masses must be a list");
    for (std::size_t i = 0; i < pm->size(); ++i) {
      const std::string mwhere =
          where + ".generator.point_masses[" + std::to_string(i) + "]";
      const json& mj = (*pm)[i];
      require_object(mj, mwhere);
      check_keys(mj, mwhere, {"t", "w"});
      masses.push_back(GeneratorFunctionalFamily::MassRule{
          as_number(require(mj, mwhere, "t"), mwhere + ".t"),
          as_expr(require(mj, mwhere, "w"), mwhere + ".w")});
    }
  }
  std::vector<GeneratorFunctionalFamily::PieceRule> pieces;
  if (const json* d = find(gen, "density")) {
    const std::string dwhere = where + ".generator.density";
    require_object(*d, dwhere);
    check_keys(*d, dwhere, {"pieces"});
    const json& pj = require(*d, dwhere, "pieces");
    if (!pj.is_array()) throw ConfigError(dwhere + ".pieces must be a list");
    for (std::size_t i = 0; i < pj.size(); ++i) {
      const std::string pwhere = dwhere + ".pieces[" + std::to_string(i) + "]";
      const json& piece = pj[i];
      require_object(piece, pwhere);
      check_keys(piece, pwhere, {"from", "to", "coeffs"});
      GeneratorFunctionalFamily::PieceRule rule;
      rule.from = as_number(require(piece, pwhere, "from"), pwhere + ".from");
      rule.to = as_number(require(piece, pwhere, "to"), pwhere + ".to");
      const json& coeffs = require(piece, pwhere, "coeffs");
      if (!coeffs.is_array() || coeffs.empty())
        throw ConfigError(pwhere + ".coeffs must be a non-empty list");
      for (std::size_t c = 0; c < coeffs.size(); ++c)
        rule.coeffs.push_back(as_expr(
            coeffs[c], pwhere + ".coeffs[" + std::to_string(c) + "]"));
      pieces.push_back(std::move(rule));
    }
  }
  if (masses.empty() && pieces.empty())
    throw ConfigError(where + ".generator declares neither point masses nor "
                      "a density");
  return std::make_shared<GeneratorFunctionalFamily>(
      std::move(masses), std::move(pieces), std::move(params), t0);
}

// ---------------------------------------------------------------------------
// Envelopes
// ---------------------------------------------------------------------------

std::shared_ptr<const GrowthEnvelope> parse_envelopes(
    const json& v, double t0, const dsl::ParamTable& params,
    const std::string& where) {
  require_object(v, where);
  check_keys(v, where, {"A", "B", "C"});
  const json& a = require(v, where, "A");
  dsl::Expr b = as_expr(require(v, where, "B"), where + ".B");
  dsl::Expr c = as_expr(require(v, where, "C"), where + ".C");

  require_object(a, where + ".A");
  if (find(a, "pieces")) {
    check_keys(a, where + ".A", {"pieces"});
    const json& pieces = *find(a, "pieces");
    if (!pieces.is_array())
      throw ConfigError(where + ".A.pieces must be a list");
    std::vector<PiecewiseEnvelope::Piece> out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const std::string pwhere = where + ".A.pieces[" + std::to_string(i) + "]";
      const json& pj = pieces[i];
      require_object(pj, pwhere);
      check_keys(pj, pwhere, {"from", "to", "coeffs"});
      PiecewiseEnvelope::Piece piece;
      piece.from = as_number(require(pj, pwhere, "from"), pwhere + ".from");
      piece.to = as_number(require(pj, pwhere, "to"), pwhere + ".to");
      const json& coeffs = require(pj, pwhere, "coeffs");
      if (!coeffs.is_array() || coeffs.empty())
        throw ConfigError(pwhere + ".coeffs must be a non-empty list");
      for (std::size_t ci = 0; ci < coeffs.size(); ++ci)
        piece.coeffs.push_back(as_expr(
            coeffs[ci], pwhere + ".coeffs[" + std::to_string(ci) + "]"));
      out.push_back(std::move(piece));
    }
    return std::make_shared<PiecewiseEnvelope>(std::move(out), std::move(b),
                                               std::move(c), params, t0);
  }
  check_keys(a, where + ".A", {"expr", "normA"});
  dsl::Expr a_expr = as_expr(require(a, where + ".A", "expr"),
                             where + ".A.expr");
  const json* norm = find(a, "normA");
  if (!norm)
    throw ConfigError(where + ".A.normA is required when A is given as an "
                      "expression (no generic exact L1 norm exists)");
  dsl::Expr a_l1 = as_expr(*norm, where + ".A.normA");
  return std::make_shared<ExprEnvelope>(std::move(a_expr), std::move(a_l1),
                                        std::move(b), std::move(c), params);
}

// ---------------------------------------------------------------------------
// RHS
// ---------------------------------------------------------------------------

struct RhsParts {
  std::shared_ptr<const RhsFamily> rhs;
  std::shared_ptr<const FunctionalFamily> functionals;  // builtin default
  std::shared_ptr<const GrowthEnvelope> envelope;       // builtin default
};

KSequence parse_k(const json* v, const std::string& where) {
  KSequence k;
  if (!v) {
    k.constant = 0.5;
    return k;
  }
  if (v->is_number()) {
    k.constant = as_number(*v, where);
  } else if (v->is_array()) {
    for (std::size_t i = 0; i < v->size(); ++i)
      k.list.push_back(
          as_number((*v)[i], where + "[" + std::to_string(i) + "]"));
    if (k.list.empty()) throw ConfigError(where + " must not be empty");
  } else if (v->is_string()) {
    k.rule = std::make_shared<dsl::Expr>(as_expr(*v, where));
  } else {
    throw ConfigError(where + " must be a number, list, or expression");
  }
  return k;
}

RhsParts parse_rhs(const json& v, double t0,
                   std::shared_ptr<const dsl::ParamTable>& params_out,
                   const std::string& where) {
  require_object(v, where);
  std::string kind = as_string(require(v, where, "kind"), where + ".kind");
  if (kind == "dsl") {
    check_keys(v, where, {"kind", "source", "params"});
    auto params = std::make_shared<dsl::ParamTable>(
        parse_params(find(v, "params"), t0, where + ".params"));
    params_out = params;
    const json& source = require(v, where, "source");
    if (source.is_string()) {
      dsl::Expr e = as_expr(source, where + ".source");
      return RhsParts{
          std::make_shared<DslGeneratorRhs>(std::move(e), *params), nullptr,
          nullptr};
    }
    if (source.is_array()) {
      std::vector<dsl::Expr> exprs;
      for (std::size_t i = 0; i < source.size(); ++i)
        exprs.push_back(as_expr(source[i],
                                where + ".source[" + std::to_string(i) + "]"));
      if (exprs.empty()) throw ConfigError(where + ".source must not be empty");
      return RhsParts{std::make_shared<DslComponentListRhs>(std::move(exprs),
                                                            *params),
                      nullptr, nullptr};
    }
    throw ConfigError(where + ".source must be a string or list of strings");
  }
  if (kind == "builtin") {
    check_keys(v, where, {"kind", "name", "params"});
    std::string name = as_string(require(v, where, "name"), where + ".name");
    const json* params = find(v, "params");
    const std::string pwhere = where + ".params";
    if (params) require_object(*params, pwhere);
    auto param_or = [&](const char* key, double fallback) {
      const json* pv = params ? find(*params, key) : nullptr;
      return pv ? as_number(*pv, pwhere + "." + key) : fallback;
    };
    auto table = std::make_shared<dsl::ParamTable>(
        parse_params(nullptr, t0, pwhere));
    params_out = table;

    if (name == "example35") {
      if (params) check_keys(*params, pwhere, {"k"});
      KSequence k = parse_k(params ? find(*params, "k") : nullptr,
                            pwhere + ".k");
      // Expose k to user-declared envelopes and functionals.
      dsl::SequenceParam seq;
      if (k.constant) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", *k.constant);
        seq.rule = std::make_shared<dsl::Expr>(dsl::Expr::parse(buf));
        table->scalars["k"] = *k.constant;
      } else if (k.rule) {
        seq.rule = k.rule;
      } else {
        seq.values = k.list;
      }
      table->sequences["k"] = std::move(seq);
      BuiltinProblem b = make_example35(std::move(k), t0);
      return RhsParts{b.rhs, b.functionals, b.envelope};
    }
    if (name == "constant_rhs_oracle") {
      if (params) check_keys(*params, pwhere, {"value", "mass_t", "mass_w"});
      BuiltinProblem b = make_constant_rhs_oracle(
          param_or("value", 1.0), param_or("mass_t", 0.5),
          param_or("mass_w", 0.5), t0);
      return RhsParts{b.rhs, b.functionals, b.envelope};
    }
    if (name == "uncoupled_exp") {
      if (params) check_keys(*params, pwhere, {"shift", "mass_t", "mass_w"});
      BuiltinProblem b = make_uncoupled_exp(
          param_or("shift", 1.0), param_or("mass_t", 0.5 * t0),
          param_or("mass_w", 0.25), t0);
      return RhsParts{b.rhs, b.functionals, b.envelope};
    }
    if (name == "finite_affine") {
      if (!params)
        throw ConfigError(pwhere + " with A and b is required for "
                          "finite_affine");
      check_keys(*params, pwhere, {"A", "b"});
      auto entry_source = [&](const json& e, const std::string& ewhere) {
        if (e.is_number()) {
          char buf[40];
          std::snprintf(buf, sizeof(buf), "%.17g", e.get<double>());
          return std::string(buf);
        }
        return as_string(e, ewhere);
      };
      const json& aj = require(*params, pwhere, "A");
      const json& bj = require(*params, pwhere, "b");
      if (!aj.is_array() || !bj.is_array())
        throw ConfigError(pwhere + ".A and .b must be lists");
      std::vector<std::vector<std::string>> a_sources;
      for (std::size_t i = 0; i < aj.size(); ++i) {
        if (!aj[i].is_array())
          throw ConfigError(pwhere + ".A rows must be lists");
        std::vector<std::string> row;
        for (std::size_t j = 0; j < aj[i].size(); ++j)
          row.push_back(entry_source(
              aj[i][j], pwhere + ".A[" + std::to_string(i) + "][" +
                            std::to_string(j) + "]"));
        a_sources.push_back(std::move(row));
      }
      std::vector<std::string> b_sources;
      for (std::size_t i = 0; i < bj.size(); ++i)
        b_sources.push_back(
            entry_source(bj[i], pwhere + ".b[" + std::to_string(i) + "]"));
      return RhsParts{make_finite_affine(a_sources, b_sources), nullptr,
                      nullptr};
    }
    throw ConfigError(where + ".name: unknown builtin problem '" + name + "'");
  }
  throw ConfigError(where + ".kind must be \"dsl\" or \"builtin\"");
}

}  // namespace

ProblemSpec build_problem(const json& document, const LoadOptions& options) {
  require_object(document, "document");
  check_keys(document, "document", {"version", "problem"});
  int version = as_int(require(document, "document", "version"),
                       "document.version");
  if (version != 1)
    throw ConfigError("document.version must be 1, got " +
                      std::to_string(version));

  const json& problem = require(document, "document", "problem");
  require_object(problem, "problem");
  check_keys(problem, "problem",
             {"t0", "t_max", "grid", "truncation", "rhs", "functionals",
              "envelopes", "seminorms"});

  double t0 = as_number(require(problem, "problem", "t0"), "problem.t0");
  double t_max =
      as_number(require(problem, "problem", "t_max"), "problem.t_max");
  if (!(t0 > 0.0)) throw ConfigError("problem.t0 must be positive");
  if (!(t0 < t_max))
    throw ConfigError("problem.t0 must be less than problem.t_max");

  const json& grid_j = require(problem, "problem", "grid");
  require_object(grid_j, "problem.grid");
  check_keys(grid_j, "problem.grid", {"h"});
  double h = as_number(require(grid_j, "problem.grid", "h"), "problem.grid.h");
  if (!(h > 0.0)) throw ConfigError("problem.grid.h must be positive");

  // RHS and the builtin-provided defaults.
  std::shared_ptr<const dsl::ParamTable> params;
  RhsParts rhs_parts = parse_rhs(require(problem, "problem", "rhs"), t0,
                                 params, "problem.rhs");

  // Truncation level.
  int n_components = rhs_parts.rhs->is_generator()
                         ? 1
                         : rhs_parts.rhs->component_count();
  Closure closure = Closure::zero;
  if (const json* tj = find(problem, "truncation")) {
    require_object(*tj, "problem.truncation");
    check_keys(*tj, "problem.truncation", {"N", "closure"});
    if (const json* nj = find(*tj, "N")) {
      n_components = as_int(*nj, "problem.truncation.N");
      if (n_components < 1)
        throw ConfigError("problem.truncation.N must be >= 1");
      if (!rhs_parts.rhs->is_generator() &&
          n_components != rhs_parts.rhs->component_count())
        throw ConfigError(
            "problem.truncation.N must equal the component count of a "
            "finite RHS (" +
            std::to_string(rhs_parts.rhs->component_count()) + ")");
    }
    if (const json* cj = find(*tj, "closure")) {
      std::string c = as_string(*cj, "problem.truncation.closure");
      if (c == "zero")
        closure = Closure::zero;
      else if (c == "freeze")
        closure = Closure::freeze;
      else
        throw ConfigError(
            "problem.truncation.closure must be \"zero\" or \"freeze\"");
    }
  }

  // Functionals: explicit declaration wins over the builtin default.
  std::shared_ptr<const FunctionalFamily> family = rhs_parts.functionals;
  if (const json* fj = find(problem, "functionals"))
    family = parse_functionals(*fj, t0, params, "problem.functionals");
  if (!family)
    throw ConfigError(
        "problem.functionals is required (this RHS provides no default)");

  // Envelope: explicit declaration wins over the builtin default.
  std::shared_ptr<const GrowthEnvelope> envelope = rhs_parts.envelope;
  if (const json* ej = find(problem, "envelopes"))
    envelope = parse_envelopes(*ej, t0, *params, "problem.envelopes");

  // Seminorm schedule.
  std::vector<int> n_seq;
  std::vector<double> t_seq;
  std::vector<double> theta_explicit;
  if (const json* sj = find(problem, "seminorms")) {
    require_object(*sj, "problem.seminorms");
    check_keys(*sj, "problem.seminorms", {"P", "n_seq", "t_seq", "theta"});
    const json* pj = find(*sj, "P");
    const json* nj = find(*sj, "n_seq");
    const json* tj = find(*sj, "t_seq");
    if (pj && (nj || tj))
      throw ConfigError(
          "problem.seminorms: give either P or explicit n_seq/t_seq, not "
          "both");
    if (nj || tj) {
      if (!nj || !tj)
        throw ConfigError(
            "problem.seminorms: n_seq and t_seq must be given together");
      if (options.p_levels >
          static_cast<int>(nj->size()))
        throw ConfigError(
            "--p-max exceeds the explicitly configured seminorm schedule");
      for (std::size_t i = 0; i < nj->size(); ++i)
        n_seq.push_back(as_int((*nj)[i], "problem.seminorms.n_seq"));
      for (std::size_t i = 0; i < tj->size(); ++i)
        t_seq.push_back(as_number((*tj)[i], "problem.seminorms.t_seq"));
    } else {
      int P = pj ? as_int(*pj, "problem.seminorms.P") : 4;
      if (P < 1) throw ConfigError("problem.seminorms.P must be >= 1");
      P = std::max(P, options.p_levels);
      for (int p = 1; p <= P; ++p) {
        n_seq.push_back(p);
        t_seq.push_back(t0 + static_cast<double>(p) * (t_max - t0) /
                                 static_cast<double>(P));
      }
    }
    if (const json* thj = find(*sj, "theta")) {
      if (!thj->is_array())
        throw ConfigError("problem.seminorms.theta must be a list");
      for (std::size_t i = 0; i < thj->size(); ++i)
        theta_explicit.push_back(
            as_number((*thj)[i], "problem.seminorms.theta"));
      if (theta_explicit.size() != n_seq.size())
        throw ConfigError(
            "problem.seminorms.theta must match the schedule length");
    }
  } else {
    int P = std::max(4, options.p_levels);
    for (int p = 1; p <= P; ++p) {
      n_seq.push_back(p);
      t_seq.push_back(t0 + static_cast<double>(p) * (t_max - t0) /
                               static_cast<double>(P));
    }
  }

  // Materialize functionals and build the grid with every exact node the
  // problem needs.
  int materialize_count = n_components;
  for (int np : n_seq) materialize_count = std::max(materialize_count, np);
  std::vector<StieltjesFunctional> functionals =
      materialize_functionals(*family, materialize_count);

  std::vector<double> snap;
  snap.push_back(t0);
  for (double tp : t_seq) snap.push_back(tp);
  for (const StieltjesFunctional& f : functionals)
    for (double t : f.required_nodes()) snap.push_back(t);
  std::sort(snap.begin(), snap.end());
  snap.erase(std::unique(snap.begin(), snap.end()), snap.end());

  ProblemSpec spec;
  spec.t0 = t0;
  spec.grid = std::make_shared<Grid>(Grid::uniform(t_max, h, snap));
  spec.rhs = rhs_parts.rhs;
  spec.functional_family = family;
  spec.functionals = std::move(functionals);
  spec.truncation = n_components;
  spec.closure = closure;
  spec.envelope = envelope;
  spec.seminorms.n_seq = std::move(n_seq);
  spec.seminorms.t_seq = std::move(t_seq);

  // Weights: explicit, else from the envelope machinery (inequality
  // permitting), else 1.
  if (!theta_explicit.empty()) {
    spec.seminorms.theta = std::move(theta_explicit);
  } else {
    spec.seminorms.theta.assign(spec.seminorms.size(), 1.0);
    if (spec.envelope) {
      // A failing <alpha_n,1> != 1 is reported by check/solve later;
      // the schedule simply keeps the default weights.
      try {
        for (std::size_t p = 1; p <= spec.seminorms.size(); ++p) {
          auto [lhs, pass] = check_inequality(spec, static_cast<int>(p));
          if (pass)
            spec.seminorms.theta[p - 1] =
                select_theta(spec, static_cast<int>(p));
        }
      } catch (const HypothesisViolation&) {
      }
    }
  }

  spec.validate();
  return spec;
}

ProblemSpec load_problem(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json document;
  try {
    document = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " +
                      e.what());
  }
  return build_problem(document, options);
}

}  // namespace nlivp
