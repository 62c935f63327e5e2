#pragma once

// Scalar expression mini-language used by case configs (grammar "expr/1").
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?            right associative, binds tighter than unary minus
//   primary := number | name | name '(' expr (',' expr)* ')' | '(' expr ')'
//
// Functions: exp, ln (log), sin, cos, arctan (atan), sqrt, pow(a, b).
// Names: the variables of the context, r = sqrt(1 + x^2 + y^2) and
// rho = sqrt(1 - x^2 - y^2) when x and y are variables, the constants pi and e,
// and caller-supplied parameters.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bhc/jet.hpp"
#include "bhc/types.hpp"

namespace bhc {

inline constexpr const char* kExprGrammarVersion = "expr/1";

using ParamMap = std::map<std::string, double>;

class Expr {
 public:
  /// Parses `text` over the named variables (at most 3). Throws ConfigError
  /// with the offending column on syntax errors and unknown names.
  static Expr parse(const std::string& text, std::vector<std::string> variables, const ParamMap& params = {});

  const std::string& text() const { return text_; }
  Jet3 operator()(const std::array<Jet3, 3>& vars) const;
  double value(const std::array<double, 3>& vars) const;

  struct Node;

 private:
  std::string text_;
  std::shared_ptr<const Node> root_;
};

/// Evaluates a constant expression over `params` only.
double eval_constant(const std::string& text, const ParamMap& params = {});

}  // namespace bhc
