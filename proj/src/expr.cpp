#include "bhc/expr.hpp"

#include <cctype>
#include <cstdlib>

namespace bhc {

struct Expr::Node {
  enum class Kind { constant, variable, r, rho, neg, add, sub, mul, div, pow, func } kind;
  double value = 0.0;
  int index = 0;           // variable slot
  int x = -1, y = -1;      // slots used by r and rho
  std::string name;        // function name
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodeP make(Kind k, std::vector<NodeP> args = {}) {
  auto n = std::make_shared<Expr::Node>();
  n->kind = k;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& vars, const ParamMap& params)
      : s_(text), vars_(vars), params_(params) {}

  NodeP parse() {
    NodeP n = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return n;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression \"" + s_ + "\" at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodeP expr() {
    NodeP n = term();
    for (;;) {
      if (eat('+')) n = make(Kind::add, {n, term()});
      else if (eat('-')) n = make(Kind::sub, {n, term()});
      else return n;
    }
  }

  NodeP term() {
    NodeP n = unary();
    for (;;) {
      if (eat('*')) n = make(Kind::mul, {n, unary()});
      else if (eat('/')) n = make(Kind::div, {n, unary()});
      else return n;
    }
  }

  NodeP unary() {
    if (eat('-')) return make(Kind::neg, {unary()});
    if (eat('+')) return unary();
    return power();
  }

  NodeP power() {
    NodeP base = primary();
    if (eat('^')) return make(Kind::pow, {base, unary()});
    return base;
  }

  int slot(const std::string& v) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == v) return static_cast<int>(i);
    return -1;
  }

  NodeP primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodeP n = expr();
      if (!eat(')')) fail("expected ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      auto n = std::make_shared<Expr::Node>();
      n->kind = Kind::constant;
      n->value = v;
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (eat('(')) return call(id, start);
      return name(id, start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  NodeP call(const std::string& id, std::size_t start) {
    static const std::vector<std::pair<std::string, std::string>> known{
        {"exp", "exp"}, {"ln", "ln"},         {"log", "ln"},   {"sin", "sin"},
        {"cos", "cos"}, {"arctan", "arctan"}, {"atan", "arctan"}, {"sqrt", "sqrt"}, {"pow", "pow"}};
    std::string canon;
    for (const auto& [k, v] : known)
      if (k == id) canon = v;
    if (canon.empty()) {
      pos_ = start;
      fail("unknown function '" + id + "'");
    }
    std::vector<NodeP> args{expr()};
    while (eat(',')) args.push_back(expr());
    if (!eat(')')) fail("expected ')'");
    const std::size_t want = canon == "pow" ? 2 : 1;
    if (args.size() != want) fail(id + " takes " + std::to_string(want) + " argument(s)");
    auto n = std::make_shared<Expr::Node>();
    n->kind = Kind::func;
    n->name = canon;
    n->args = std::move(args);
    return n;
  }

  NodeP name(const std::string& id, std::size_t start) {
    auto n = std::make_shared<Expr::Node>();
    if (const int i = slot(id); i >= 0) {
      n->kind = Kind::variable;
      n->index = i;
      return n;
    }
    if (id == "r" || id == "rho") {
      n->kind = id == "r" ? Kind::r : Kind::rho;
      n->x = slot("x");
      n->y = slot("y");
      if (n->x >= 0 && n->y >= 0) return n;
      pos_ = start;
      fail("'" + id + "' needs variables x and y");
    }
    if (const auto it = params_.find(id); it != params_.end()) {
      n->kind = Kind::constant;
      n->value = it->second;
      return n;
    }
    n->kind = Kind::constant;
    if (id == "pi") {
      n->value = M_PI;
      return n;
    }
    if (id == "e") {
      n->value = M_E;
      return n;
    }
    pos_ = start;
    fail("unknown name '" + id + "'");
  }

  const std::string& s_;
  const std::vector<std::string>& vars_;
  const ParamMap& params_;
  std::size_t pos_ = 0;
};

Jet3 eval(const Expr::Node& n, const std::array<Jet3, 3>& v) {
  auto arg = [&](std::size_t i) { return eval(*n.args[i], v); };
  switch (n.kind) {
    case Kind::constant: return Jet3(n.value);
    case Kind::variable: return v[static_cast<std::size_t>(n.index)];
    case Kind::r: {
      const auto& x = v[static_cast<std::size_t>(n.x)];
      const auto& y = v[static_cast<std::size_t>(n.y)];
      return sqrt(1.0 + x * x + y * y);
    }
    case Kind::rho: {
      const auto& x = v[static_cast<std::size_t>(n.x)];
      const auto& y = v[static_cast<std::size_t>(n.y)];
      return sqrt(1.0 - x * x - y * y);
    }
    case Kind::neg: return -arg(0);
    case Kind::add: return arg(0) + arg(1);
    case Kind::sub: return arg(0) - arg(1);
    case Kind::mul: return arg(0) * arg(1);
    case Kind::div: return arg(0) / arg(1);
    case Kind::pow: return pow(arg(0), arg(1));
    case Kind::func: {
      if (n.name == "pow") return pow(arg(0), arg(1));
      const Jet3 a = arg(0);
      if (n.name == "exp") return exp(a);
      if (n.name == "ln") return log(a);
      if (n.name == "sin") return sin(a);
      if (n.name == "cos") return cos(a);
      if (n.name == "arctan") return atan(a);
      return sqrt(a);
    }
  }
  return Jet3(kNaN);
}

}  // namespace

Expr Expr::parse(const std::string& text, std::vector<std::string> variables, const ParamMap& params) {
  if (variables.size() > 3) throw std::invalid_argument("Expr::parse: at most 3 variables");
  Expr e;
  e.text_ = text;
  e.root_ = Parser(text, variables, params).parse();
  return e;
}

Jet3 Expr::operator()(const std::array<Jet3, 3>& vars) const { return eval(*root_, vars); }

double Expr::value(const std::array<double, 3>& vars) const {
  return eval(*root_, {Jet3(vars[0]), Jet3(vars[1]), Jet3(vars[2])}).value();
}

double eval_constant(const std::string& text, const ParamMap& params) {
  return Expr::parse(text, {}, params).value({0, 0, 0});
}

}  // namespace bhc
