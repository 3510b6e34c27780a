#include "nlivp/dsl.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "nlivp/errors.hpp"

namespace nlivp::dsl {

namespace {

struct Token {
  enum class Type { number, ident, sym, end };
  Type type = Type::end;
  double num = 0.0;
  std::string text;
  char sym = 0;
  std::size_t pos = 0;  // 1-based column of the first character
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t pos = i + 1;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < src.size() &&
             std::isdigit(static_cast<unsigned char>(src[j])))
        ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[j])))
          ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() &&
                 std::isdigit(static_cast<unsigned char>(src[j])))
            ++j;
        }
      }
      std::string text(src.substr(i, j - i));
      if (text == ".") throw SyntaxError(pos, "number");
      Token t;
      t.type = Token::Type::number;
      t.num = std::strtod(text.c_str(), nullptr);
      t.pos = pos;
      out.push_back(t);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_'))
        ++j;
      Token t;
      t.type = Token::Type::ident;
      t.text = std::string(src.substr(i, j - i));
      t.pos = pos;
      out.push_back(t);
      i = j;
      continue;
    }
    if (std::string_view("+-*/^()[],").find(c) != std::string_view::npos) {
      Token t;
      t.type = Token::Type::sym;
      t.sym = c;
      t.pos = pos;
      out.push_back(t);
      ++i;
      continue;
    }
    throw SyntaxError(pos, "a valid token (got '" + std::string(1, c) + "')");
  }
  Token end;
  end.type = Token::Type::end;
  end.pos = src.size() + 1;
  out.push_back(end);
  return out;
}

std::optional<Fn1> fn1_of(std::string_view name) {
  if (name == "sin") return Fn1::sin;
  if (name == "cos") return Fn1::cos;
  if (name == "exp") return Fn1::exp;
  if (name == "log") return Fn1::log;
  if (name == "abs") return Fn1::abs;
  if (name == "atan") return Fn1::atan;
  if (name == "sqrt") return Fn1::sqrt;
  return std::nullopt;
}

std::optional<Fn2> fn2_of(std::string_view name) {
  if (name == "min") return Fn2::min;
  if (name == "max") return Fn2::max;
  return std::nullopt;
}

const char* fn1_name(Fn1 f) {
  switch (f) {
    case Fn1::sin: return "sin";
    case Fn1::cos: return "cos";
    case Fn1::exp: return "exp";
    case Fn1::log: return "log";
    case Fn1::abs: return "abs";
    case Fn1::atan: return "atan";
    case Fn1::sqrt: return "sqrt";
  }
  return "?";
}

const char* fn2_name(Fn2 f) { return f == Fn2::min ? "min" : "max"; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool integral_value(double v, int& out) {
  double r = std::round(v);
  if (std::abs(v - r) > 1e-9 || std::abs(r) > 2.0e9) return false;
  out = static_cast<int>(r);
  return true;
}

}  // namespace

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {
    expr_.source_ = std::string(src);
  }

  Expr run() {
    expr_.root_ = parse_expr();
    const Token& t = peek();
    if (t.type != Token::Type::end) fail(t, "end of input");
    return std::move(expr_);
  }

 private:
  using Node = Expr::Node;
  using Kind = Expr::Node::Kind;

  Expr expr_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  const Token& get() { return toks_[pos_++]; }
  bool eat_sym(char c) {
    if (peek().type == Token::Type::sym && peek().sym == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_sym(char c, const std::string& what) {
    if (!eat_sym(c)) fail(peek(), what);
  }
  [[noreturn]] void fail(const Token& t, const std::string& expected) const {
    throw SyntaxError(t.pos, expected);
  }

  int add_node(Node n) {
    expr_.nodes_.push_back(std::move(n));
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }
  int make_binary(Kind k, int a, int b) {
    Node n;
    n.kind = k;
    n.a = a;
    n.b = b;
    return add_node(std::move(n));
  }

  int parse_expr() {
    int lhs = parse_term();
    for (;;) {
      if (eat_sym('+'))
        lhs = make_binary(Kind::add, lhs, parse_term());
      else if (eat_sym('-'))
        lhs = make_binary(Kind::sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    for (;;) {
      if (eat_sym('*'))
        lhs = make_binary(Kind::mul, lhs, parse_unary());
      else if (eat_sym('/'))
        lhs = make_binary(Kind::div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  int parse_unary() {
    if (eat_sym('-')) {
      Node n;
      n.kind = Kind::neg;
      n.a = parse_unary();
      return add_node(std::move(n));
    }
    return parse_power();
  }

  int parse_power() {
    int base = parse_atom();
    if (eat_sym('^')) return make_binary(Kind::pow, base, parse_unary());
    return base;
  }

  int parse_atom() {
    const Token& t = peek();
    if (t.type == Token::Type::number) {
      get();
      Node n;
      n.kind = Kind::literal;
      n.literal = t.num;
      return add_node(std::move(n));
    }
    if (t.type == Token::Type::sym && t.sym == '(') {
      get();
      int inner = parse_expr();
      expect_sym(')', "')'");
      return inner;
    }
    if (t.type == Token::Type::ident) {
      Token ident = get();
      if (eat_sym('(')) {
        if (auto f1 = fn1_of(ident.text)) {
          int arg = parse_expr();
          expect_sym(')', "')'");
          Node n;
          n.kind = Kind::call1;
          n.fn1 = *f1;
          n.a = arg;
          return add_node(std::move(n));
        }
        if (auto f2 = fn2_of(ident.text)) {
          int a = parse_expr();
          expect_sym(',', "','");
          int b = parse_expr();
          expect_sym(')', "')'");
          Node n;
          n.kind = Kind::call2;
          n.fn2 = *f2;
          n.a = a;
          n.b = b;
          return add_node(std::move(n));
        }
        throw NameError("unknown function '" + ident.text + "' at position " +
                        std::to_string(ident.pos));
      }
      if (eat_sym('[')) {
        const Token& start = peek();
        IndexForm idx = parse_index();
        expect_sym(']', "']'");
        Node n;
        if (ident.text == "x") {
          if (idx.base == IndexForm::Base::p)
            fail(start, "a state index of the form n, n+k, n-k, or an "
                        "integer constant");
          n.kind = Kind::state;
        } else {
          n.kind = Kind::seq;
          n.name = ident.text;
        }
        n.index = idx;
        return add_node(std::move(n));
      }
      Node n;
      n.kind = Kind::var;
      n.name = ident.text;
      return add_node(std::move(n));
    }
    fail(t, "expression");
  }

  // n, p, n+k, n-k, p+k, p-k, k+n, k+p, or an integer constant
  // (possibly negated).
  IndexForm parse_index() {
    const Token& start = peek();
    int sub = parse_expr();
    std::optional<IndexForm> idx = classify_index(sub);
    if (!idx)
      fail(start,
           "an index of the form n, p, n+k, n-k, p+k, p-k, or an integer "
           "constant");
    return *idx;
  }

  static std::optional<IndexForm::Base> base_of(const Node& node) {
    if (node.kind != Kind::var) return std::nullopt;
    if (node.name == "n") return IndexForm::Base::n;
    if (node.name == "p") return IndexForm::Base::p;
    return std::nullopt;
  }

  std::optional<IndexForm> classify_index(int idx) const {
    const Node& n = expr_.nodes_[static_cast<std::size_t>(idx)];
    int k = 0;
    switch (n.kind) {
      case Kind::literal:
        if (integral_value(n.literal, k))
          return IndexForm{IndexForm::Base::absolute, k};
        return std::nullopt;
      case Kind::var:
        if (auto base = base_of(n)) return IndexForm{*base, 0};
        return std::nullopt;
      case Kind::neg: {
        const Node& a = expr_.nodes_[static_cast<std::size_t>(n.a)];
        if (a.kind == Kind::literal && integral_value(a.literal, k))
          return IndexForm{IndexForm::Base::absolute, -k};
        return std::nullopt;
      }
      case Kind::add:
      case Kind::sub: {
        const Node& a = expr_.nodes_[static_cast<std::size_t>(n.a)];
        const Node& b = expr_.nodes_[static_cast<std::size_t>(n.b)];
        if (n.kind == Kind::add) {
          if (auto base = base_of(a))
            if (b.kind == Kind::literal && integral_value(b.literal, k))
              return IndexForm{*base, k};
          if (auto base = base_of(b))
            if (a.kind == Kind::literal && integral_value(a.literal, k))
              return IndexForm{*base, k};
        } else if (auto base = base_of(a)) {
          if (b.kind == Kind::literal && integral_value(b.literal, k))
            return IndexForm{*base, -k};
        }
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  }
};

Expr Expr::parse(std::string_view source) { return Parser(source).run(); }

double SequenceParam::at(int n, const EvalContext& outer) const {
  if (rule) {
    EvalContext ctx = outer;
    ctx.n = n;
    ctx.state = nullptr;  // sequences are state-independent
    return rule->eval(ctx);
  }
  if (n < 1 || static_cast<std::size_t>(n) > values.size())
    throw ConfigError("parameter sequence has no entry for index " +
                      std::to_string(n) + " (list of " +
                      std::to_string(values.size()) + ")");
  return values[static_cast<std::size_t>(n - 1)];
}

namespace {

int resolve_index(const IndexForm& idx, const EvalContext& env,
                  const char* what) {
  switch (idx.base) {
    case IndexForm::Base::absolute:
      return idx.value;
    case IndexForm::Base::n:
      if (!env.n)
        throw NameError(std::string("variable n is not bound (needed by a ") +
                        what + " index)");
      return *env.n + idx.value;
    case IndexForm::Base::p:
      if (!env.p)
        throw NameError(std::string("variable p is not bound (needed by a ") +
                        what + " index)");
      return *env.p + idx.value;
  }
  throw InternalError("unhandled index base");
}

}  // namespace

double Expr::eval_node(int idx, const EvalContext& env) const {
  const Node& node = nodes_[static_cast<std::size_t>(idx)];
  switch (node.kind) {
    case Node::Kind::literal:
      return node.literal;
    case Node::Kind::var: {
      if (node.name == "t") {
        if (!env.t) throw NameError("variable t is not bound");
        return *env.t;
      }
      if (node.name == "n") {
        if (!env.n) throw NameError("variable n is not bound");
        return static_cast<double>(*env.n);
      }
      if (node.name == "p") {
        if (!env.p) throw NameError("variable p is not bound");
        return static_cast<double>(*env.p);
      }
      if (env.scalars) {
        auto it = env.scalars->find(node.name);
        if (it != env.scalars->end()) return it->second;
      }
      throw NameError("unknown identifier '" + node.name + "'");
    }
    case Node::Kind::state: {
      if (!env.state)
        throw NameError("state references x[...] are not allowed here");
      return (*env.state)(resolve_index(node.index, env, "state"));
    }
    case Node::Kind::seq: {
      if (!env.sequences)
        throw NameError("unknown parameter '" + node.name + "'");
      auto it = env.sequences->find(node.name);
      if (it == env.sequences->end())
        throw NameError("unknown parameter '" + node.name + "'");
      return it->second.at(resolve_index(node.index, env, "sequence"), env);
    }
    case Node::Kind::neg:
      return -eval_node(node.a, env);
    case Node::Kind::add:
      return eval_node(node.a, env) + eval_node(node.b, env);
    case Node::Kind::sub:
      return eval_node(node.a, env) - eval_node(node.b, env);
    case Node::Kind::mul:
      return eval_node(node.a, env) * eval_node(node.b, env);
    case Node::Kind::div: {
      double num = eval_node(node.a, env);
      double den = eval_node(node.b, env);
      if (den == 0.0) throw EvaluationError("division by zero");
      return num / den;
    }
    case Node::Kind::pow: {
      double base = eval_node(node.a, env);
      double exponent = eval_node(node.b, env);
      double r = std::pow(base, exponent);
      if (!std::isfinite(r))
        throw EvaluationError("pow(" + format_double(base) + ", " +
                              format_double(exponent) +
                              ") is undefined or overflows");
      return r;
    }
    case Node::Kind::call1: {
      double a = eval_node(node.a, env);
      switch (node.fn1) {
        case Fn1::sin: return std::sin(a);
        case Fn1::cos: return std::cos(a);
        case Fn1::exp: return std::exp(a);
        case Fn1::log:
          if (a <= 0.0)
            throw EvaluationError("log of non-positive value " +
                                  format_double(a));
          return std::log(a);
        case Fn1::abs: return std::abs(a);
        case Fn1::atan: return std::atan(a);
        case Fn1::sqrt:
          if (a < 0.0)
            throw EvaluationError("sqrt of negative value " +
                                  format_double(a));
          return std::sqrt(a);
      }
      throw InternalError("unhandled unary function");
    }
    case Node::Kind::call2: {
      double a = eval_node(node.a, env);
      double b = eval_node(node.b, env);
      return node.fn2 == Fn2::min ? std::min(a, b) : std::max(a, b);
    }
  }
  throw InternalError("unhandled expression node");
}

double Expr::eval(const EvalContext& env) const {
  double r = eval_node(root_, env);
  if (!std::isfinite(r))
    throw EvaluationError("expression evaluated to a non-finite value");
  return r;
}

namespace {

std::string index_string(const IndexForm& idx) {
  if (idx.base == IndexForm::Base::absolute) return std::to_string(idx.value);
  std::string base = idx.base == IndexForm::Base::n ? "n" : "p";
  if (idx.value == 0) return base;
  if (idx.value > 0) return base + "+" + std::to_string(idx.value);
  return base + "-" + std::to_string(-idx.value);
}

int precedence(Expr::Node::Kind k) {
  using Kind = Expr::Node::Kind;
  switch (k) {
    case Kind::add:
    case Kind::sub: return 1;
    case Kind::mul:
    case Kind::div: return 2;
    case Kind::neg: return 3;
    case Kind::pow: return 4;
    default: return 5;
  }
}

}  // namespace

void Expr::print_node(int idx, int context, std::string& out) const {
  const Node& node = nodes_[static_cast<std::size_t>(idx)];
  int prec = precedence(node.kind);
  bool parens = prec < context;
  if (parens) out += '(';
  switch (node.kind) {
    case Node::Kind::literal:
      out += format_double(node.literal);
      break;
    case Node::Kind::var:
      out += node.name;
      break;
    case Node::Kind::state:
      out += "x[" + index_string(node.index) + "]";
      break;
    case Node::Kind::seq:
      out += node.name + "[" + index_string(node.index) + "]";
      break;
    case Node::Kind::neg:
      out += '-';
      print_node(node.a, 3, out);
      break;
    case Node::Kind::add:
      print_node(node.a, 1, out);
      out += " + ";
      print_node(node.b, 2, out);
      break;
    case Node::Kind::sub:
      print_node(node.a, 1, out);
      out += " - ";
      print_node(node.b, 2, out);
      break;
    case Node::Kind::mul:
      print_node(node.a, 2, out);
      out += "*";
      print_node(node.b, 3, out);
      break;
    case Node::Kind::div:
      print_node(node.a, 2, out);
      out += "/";
      print_node(node.b, 3, out);
      break;
    case Node::Kind::pow:
      print_node(node.a, 5, out);
      out += "^";
      print_node(node.b, 3, out);
      break;
    case Node::Kind::call1:
      out += fn1_name(node.fn1);
      out += '(';
      print_node(node.a, 1, out);
      out += ')';
      break;
    case Node::Kind::call2:
      out += fn2_name(node.fn2);
      out += '(';
      print_node(node.a, 1, out);
      out += ", ";
      print_node(node.b, 1, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

std::string Expr::to_string() const {
  std::string out;
  print_node(root_, 1, out);
  return out;
}

bool Expr::equal_nodes(int idx, const Expr& other, int other_idx) const {
  const Node& a = nodes_[static_cast<std::size_t>(idx)];
  const Node& b = other.nodes_[static_cast<std::size_t>(other_idx)];
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Node::Kind::literal:
      return a.literal == b.literal;
    case Node::Kind::var:
      return a.name == b.name;
    case Node::Kind::state:
      return a.index.base == b.index.base && a.index.value == b.index.value;
    case Node::Kind::seq:
      return a.name == b.name && a.index.base == b.index.base &&
             a.index.value == b.index.value;
    case Node::Kind::neg:
      return equal_nodes(a.a, other, b.a);
    case Node::Kind::call1:
      return a.fn1 == b.fn1 && equal_nodes(a.a, other, b.a);
    case Node::Kind::call2:
      return a.fn2 == b.fn2 && equal_nodes(a.a, other, b.a) &&
             equal_nodes(a.b, other, b.b);
    default:
      return equal_nodes(a.a, other, b.a) && equal_nodes(a.b, other, b.b);
  }
}

bool Expr::structurally_equal(const Expr& other) const {
  return equal_nodes(root_, other, other.root_);
}

bool Expr::has_state_ref() const {
  for (const Node& n : nodes_)
    if (n.kind == Node::Kind::state) return true;
  return false;
}

bool Expr::has_relative_state_ref() const {
  for (const Node& n : nodes_)
    if (n.kind == Node::Kind::state && n.index.base == IndexForm::Base::n)
      return true;
  return false;
}

bool Expr::has_absolute_state_ref() const {
  for (const Node& n : nodes_)
    if (n.kind == Node::Kind::state &&
        n.index.base == IndexForm::Base::absolute)
      return true;
  return false;
}

bool Expr::references_var(std::string_view name) const {
  for (const Node& n : nodes_) {
    if (n.kind == Node::Kind::var && n.name == name) return true;
    if (n.kind == Node::Kind::state || n.kind == Node::Kind::seq) {
      if (n.index.base == IndexForm::Base::n && name == "n") return true;
      if (n.index.base == IndexForm::Base::p && name == "p") return true;
    }
  }
  return false;
}

CouplingBand Expr::band() const {
  if (has_absolute_state_ref())
    throw ConfigError(
        "expression uses an absolute state index; a relative coupling band "
        "is undefined");
  int lo = 0, hi = 0;
  for (const Node& n : nodes_) {
    if (n.kind != Node::Kind::state) continue;
    lo = std::min(lo, n.index.value);
    hi = std::max(hi, n.index.value);
  }
  return CouplingBand{-lo, hi};
}

int Expr::min_read_index(int n) const {
  int best = n;
  bool any = false;
  for (const Node& node : nodes_) {
    if (node.kind != Node::Kind::state) continue;
    int m = node.index.base == IndexForm::Base::n ? n + node.index.value
                                                  : node.index.value;
    best = any ? std::min(best, m) : m;
    any = true;
  }
  return best;
}

int Expr::max_read_index(int n) const {
  int best = n;
  bool any = false;
  for (const Node& node : nodes_) {
    if (node.kind != Node::Kind::state) continue;
    int m = node.index.base == IndexForm::Base::n ? n + node.index.value
                                                  : node.index.value;
    best = any ? std::max(best, m) : m;
    any = true;
  }
  return best;
}

}  // namespace nlivp::dsl
