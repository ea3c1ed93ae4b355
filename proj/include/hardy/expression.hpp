// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scalar field expressions over ambient coordinates.
//
// Grammar:
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := number | ident | ident "(" args ")" | "(" expr ")" | "-" factor
// Builtins: pow(a, b), exp, log, sqrt, sinh, cosh, tanh, coth, sin, cos, abs,
// and the variadic norm(a, b, ...) = sqrt(a^2 + b^2 + ...).
//
// Identifiers that are not coordinates of the evaluation chart are free
// parameters; they must be bound to numbers before evaluation.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hardy/jet.hpp"

namespace hardy {

using ParamMap = std::map<std::string, double, std::less<>>;

enum class NodeKind { Number, Ident, Neg, Add, Sub, Mul, Div, Call };
enum class Builtin { Pow, Exp, Log, Sqrt, Sinh, Cosh, Tanh, Coth, Sin, Cos, Abs, Norm };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind = NodeKind::Number;
  double number = 0.0;
  std::string name;
  Builtin builtin = Builtin::Exp;
  std::vector<NodePtr> args;
};

std::string_view builtin_name(Builtin b);

/// Immutable expression tree for a scalar field. Subtrees may be shared.
class ScalarField {
 public:
  ScalarField();  // the constant 0
  explicit ScalarField(NodePtr root);

  static ScalarField constant(double v);
  static ScalarField identifier(std::string name);
  static ScalarField call(Builtin b, std::vector<ScalarField> args);

  const NodePtr& root() const noexcept { return root_; }

  /// Pretty-printed source with minimal parentheses; parses back to the
  /// normalized tree.
  std::string to_string() const;

  /// Replace identifiers by expressions. Replacements are shared, not copied.
  ScalarField substitute(const std::map<std::string, ScalarField, std::less<>>& repl) const;

  /// Replace parameters by numeric constants.
  ScalarField bind(const ParamMap& params) const;

  /// All identifier names occurring in the tree.
  std::set<std::string> identifiers() const;

  /// Structural equality.
  friend bool operator==(const ScalarField& a, const ScalarField& b);

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator/(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator-(const ScalarField& a);

 private:
  NodePtr root_;
};

ScalarField pow(const ScalarField& base, double exponent);
ScalarField pow(const ScalarField& base, const ScalarField& exponent);

/// Rewrite negative numeric literals as negated positive literals, the form
/// produced by the parser.
ScalarField normalize(const ScalarField& f);

/// Parse source text. Throws ParseError on syntax errors, unknown function
/// names and arity mismatches.
ScalarField parse_expression(std::string_view source);

/// A list of expressions, one per frame direction.
struct VectorFieldExpr {
  std::vector<ScalarField> components;
};

/// Expression compiled against a coordinate chart with parameters bound.
/// Shared subtrees are evaluated once. Evaluation is reentrant.
class CompiledField {
 public:
  CompiledField() = default;
  CompiledField(const ScalarField& field, std::span<const std::string> coordinates,
                const ParamMap& params = {});

  std::size_t dim() const noexcept { return dim_; }
  bool is_constant() const noexcept { return constant_; }
  const ScalarField& source() const noexcept { return source_; }

  double value(std::span<const double> x) const;
  Jet1 jet1(std::span<const double> x) const;
  Jet2 jet2(std::span<const double> x) const;

  enum class Code { Const, Coord, Neg, Add, Sub, Mul, Div, PowConst, PowGeneral, Unary, Norm };
  struct Instr {
    Code code = Code::Const;
    Builtin builtin = Builtin::Exp;
    std::size_t a = 0;
    std::size_t b = 0;
    double number = 0.0;
    std::size_t args_begin = 0;
    std::size_t args_count = 0;
    const ExprNode* node = nullptr;  // for error messages
  };

 private:
  template <class J>
  J run(std::span<const double> x) const;

  ScalarField source_;
  std::size_t dim_ = 0;
  bool constant_ = true;
  std::vector<Instr> tape_;
  std::vector<std::size_t> norm_args_;
};

/// Default coordinate names x1..xm.
std::vector<std::string> default_coordinates(std::size_t m);

/// Evaluate the 2-jet of `field` at `point` with coordinates named x1..xm.
Jet2 jet2_eval(const ScalarField& field, std::span<const double> point,
               const ParamMap& params = {});

}  // namespace hardy
