#include "nlivp/builtin.hpp"

#include <cmath>
#include <string>

#include "nlivp/errors.hpp"

namespace nlivp {

double KSequence::at(int n, double t0) const {
  if (n < 1) throw IndexError("k sequence index must be >= 1");
  if (constant) return *constant;
  if (rule) {
    dsl::EvalContext env;
    env.n = n;
    std::map<std::string, double, std::less<>> scalars{{"t0", t0}};
    env.scalars = &scalars;
    return rule->eval(env);
  }
  if (static_cast<std::size_t>(n) > list.size())
    throw ConfigError("k list has no entry for component " +
                      std::to_string(n));
  return list[static_cast<std::size_t>(n - 1)];
}

double KSequence::running_max(int p, double t0) const {
  if (constant) return std::abs(*constant);
  double best = 0.0;
  for (int n = 1; n <= p; ++n) best = std::max(best, std::abs(at(n, t0)));
  return best;
}

namespace {

class Example35Functionals : public FunctionalFamily {
 public:
  explicit Example35Functionals(double t0) : t0_(t0) {}

  StieltjesFunctional make(int n) const override {
    PiecewisePoly density;
    density.pieces.push_back(
        PolyPiece{0.0, t0_, {1.0 / (static_cast<double>(n) + t0_)}});
    return StieltjesFunctional({}, std::move(density), t0_);
  }

 private:
  double t0_;
};

std::shared_ptr<const FunctionalFamily> single_mass_family(double mass_t,
                                                           double mass_w,
                                                           double t0) {
  std::vector<StieltjesFunctional> entries;
  entries.emplace_back(std::vector<PointMass>{{mass_t, mass_w}},
                       PiecewisePoly{}, t0);
  return std::make_shared<ListFunctionalFamily>(std::move(entries),
                                                /*repeat_last=*/true);
}

}  // namespace

BuiltinProblem make_example35(KSequence k, double t0) {
  auto kshared = std::make_shared<KSequence>(std::move(k));
  auto rhs = std::make_shared<NativeRhs>(
      "example35",
      [kshared, t0](int n, double t, const StateView& x) {
        return kshared->at(n, t0) / (1.0 + t * t) * x(n) +
               t * std::cos(x(n + 1));
      },
      CouplingBand{0, 1});
  auto functionals = std::make_shared<Example35Functionals>(t0);
  auto envelope = std::make_shared<NativeEnvelope>(
      [kshared, t0](int p, double t) {
        return kshared->running_max(p, t0) / (1.0 + t * t);
      },
      [kshared, t0](int p) {
        return kshared->running_max(p, t0) * std::atan(t0);
      },
      [t0](int) { return t0; },
      [kshared, t0](int p, double t_p) {
        return kshared->running_max(p, t0) + t_p;
      });
  return BuiltinProblem{rhs, functionals, envelope};
}

double example35_constant_k_threshold(double t0) {
  return 1.0 / ((1.0 + t0) * std::atan(t0));
}

BuiltinProblem make_constant_rhs_oracle(double value, double mass_t,
                                        double mass_w, double t0) {
  auto rhs = std::make_shared<NativeRhs>(
      "constant_rhs_oracle",
      [value](int, double, const StateView&) { return value; },
      CouplingBand{0, 0});
  double mag = std::abs(value);
  auto envelope = std::make_shared<NativeEnvelope>(
      [](int, double) { return 0.0; }, [](int) { return 0.0; },
      [mag](int) { return mag; }, [mag](int, double) { return mag; });
  return BuiltinProblem{rhs, single_mass_family(mass_t, mass_w, t0), envelope};
}

BuiltinProblem make_uncoupled_exp(double shift, double mass_t, double mass_w,
                                  double t0) {
  auto rhs = std::make_shared<NativeRhs>(
      "uncoupled_exp",
      [shift](int n, double, const StateView& x) { return x(n) + shift; },
      CouplingBand{0, 0});
  return BuiltinProblem{rhs, single_mass_family(mass_t, mass_w, t0), nullptr};
}

std::shared_ptr<const RhsFamily> make_finite_affine(
    const std::vector<std::vector<std::string>>& a_sources,
    const std::vector<std::string>& b_sources) {
  const std::size_t n = b_sources.size();
  if (n == 0) throw ConfigError("finite_affine needs at least one component");
  if (a_sources.size() != n)
    throw ConfigError("finite_affine: A must be a square N x N matrix "
                      "matching b");
  std::vector<dsl::Expr> exprs;
  for (std::size_t i = 0; i < n; ++i) {
    if (a_sources[i].size() != n)
      throw ConfigError("finite_affine: row " + std::to_string(i + 1) +
                        " of A has " + std::to_string(a_sources[i].size()) +
                        " entries, expected " + std::to_string(n));
    std::string source;
    for (std::size_t j = 0; j < n; ++j) {
      source += "(" + a_sources[i][j] + ")*x[" + std::to_string(j + 1) + "]";
      source += " + ";
    }
    source += "(" + b_sources[i] + ")";
    exprs.push_back(dsl::Expr::parse(source));
  }
  return std::make_shared<DslComponentListRhs>(std::move(exprs),
                                               dsl::ParamTable{});
}

}  // namespace nlivp
