// SPDX-License-Identifier: Apache-2.0
#include "hardy/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <unordered_map>
#include <utility>

#include "hardy/error.hpp"

namespace hardy {

namespace {

struct BuiltinInfo {
  std::string_view name;
  Builtin builtin;
  int arity;  // -1: variadic, at least one argument
};

constexpr BuiltinInfo kBuiltins[] = {
    {"pow", Builtin::Pow, 2},   {"exp", Builtin::Exp, 1},   {"log", Builtin::Log, 1},
    {"sqrt", Builtin::Sqrt, 1}, {"sinh", Builtin::Sinh, 1}, {"cosh", Builtin::Cosh, 1},
    {"tanh", Builtin::Tanh, 1}, {"coth", Builtin::Coth, 1}, {"abs", Builtin::Abs, 1},
    {"sin", Builtin::Sin, 1},   {"cos", Builtin::Cos, 1},   {"norm", Builtin::Norm, -1},
};

const BuiltinInfo* find_builtin(std::string_view name) {
  for (const auto& b : kBuiltins)
    if (b.name == name) return &b;
  return nullptr;
}

NodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

NodePtr make_ident(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Ident;
  n->name = std::move(name);
  return n;
}

NodePtr make_node(NodeKind kind, std::vector<NodePtr> args) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->args = std::move(args);
  return n;
}

NodePtr make_call(Builtin b, std::vector<NodePtr> args) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Call;
  n->builtin = b;
  n->args = std::move(args);
  return n;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = make_node(NodeKind::Add, {lhs, term()});
      else if (accept('-'))
        lhs = make_node(NodeKind::Sub, {lhs, term()});
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = make_node(NodeKind::Mul, {lhs, factor()});
      else if (accept('/'))
        lhs = make_node(NodeKind::Div, {lhs, factor()});
      else
        return lhs;
    }
  }

  NodePtr factor() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '-') {
      ++pos_;
      return make_node(NodeKind::Neg, {factor()});
    }
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p]))) {
        pos_ = p;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc() || ptr != src_.data() + pos_) throw ParseError("malformed number", start);
    return make_number(v);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    if (!accept('(')) {
      if (find_builtin(name)) throw ParseError("builtin '" + name + "' used without arguments", start);
      return make_ident(std::move(name));
    }
    const BuiltinInfo* info = find_builtin(name);
    if (!info) throw ParseError("unknown identifier '" + name + "'", start);
    std::vector<NodePtr> args;
    if (!accept(')')) {
      args.push_back(expr());
      while (accept(',')) args.push_back(expr());
      expect(')');
    }
    const bool ok = info->arity < 0 ? !args.empty() : static_cast<int>(args.size()) == info->arity;
    if (!ok)
      throw ParseError("arity mismatch for '" + name + "': got " + std::to_string(args.size()) +
                           " argument(s)",
                       start);
    return make_call(info->builtin, std::move(args));
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Add:
    case NodeKind::Sub:
      return 1;
    case NodeKind::Mul:
    case NodeKind::Div:
      return 2;
    case NodeKind::Neg:
      return 3;
    case NodeKind::Number:
      return n.number < 0 ? 0 : 4;
    default:
      return 4;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const ExprNode& n, std::string& out);

void print_child(const ExprNode& child, int min_prec, std::string& out) {
  if (precedence(child) < min_prec) {
    out += '(';
    print(child, out);
    out += ')';
  } else {
    print(child, out);
  }
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case NodeKind::Number:
      out += format_number(n.number);
      return;
    case NodeKind::Ident:
      out += n.name;
      return;
    case NodeKind::Neg:
      out += '-';
      print_child(*n.args[0], 3, out);
      return;
    case NodeKind::Add:
    case NodeKind::Sub: {
      print_child(*n.args[0], 1, out);
      out += n.kind == NodeKind::Add ? " + " : " - ";
      print_child(*n.args[1], 2, out);
      return;
    }
    case NodeKind::Mul:
    case NodeKind::Div: {
      print_child(*n.args[0], 2, out);
      out += n.kind == NodeKind::Mul ? "*" : "/";
      print_child(*n.args[1], 3, out);
      return;
    }
    case NodeKind::Call: {
      out += builtin_name(n.builtin);
      out += '(';
      for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (i) out += ", ";
        print(*n.args[i], out);
      }
      out += ')';
      return;
    }
  }
}

bool equal(const ExprNode& a, const ExprNode& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case NodeKind::Number:
      if (a.number != b.number) return false;
      break;
    case NodeKind::Ident:
      if (a.name != b.name) return false;
      break;
    case NodeKind::Call:
      if (a.builtin != b.builtin) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(*a.args[i], *b.args[i])) return false;
  return true;
}

// Rebuild a tree bottom-up; `leaf` may return a replacement for any node or
// nullptr to keep recursing. Shared subtrees stay shared.
NodePtr rewrite(const NodePtr& n, const std::function<NodePtr(const ExprNode&)>& leaf,
                std::unordered_map<const ExprNode*, NodePtr>& memo) {
  if (auto it = memo.find(n.get()); it != memo.end()) return it->second;
  NodePtr out;
  if (NodePtr r = leaf(*n)) {
    out = r;
  } else if (n->args.empty()) {
    out = n;
  } else {
    std::vector<NodePtr> args;
    args.reserve(n->args.size());
    bool changed = false;
    for (const auto& a : n->args) {
      args.push_back(rewrite(a, leaf, memo));
      changed |= args.back() != a;
    }
    if (!changed) {
      out = n;
    } else {
      auto copy = std::make_shared<ExprNode>(*n);
      copy->args = std::move(args);
      out = copy;
    }
  }
  memo.emplace(n.get(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Jet-valued elementary functions with domain checks.

// Value-only stand-in for the jet types.
struct Jet0 {
  double value = 0.0;
  std::size_t dim = 0;
  static Jet0 constant(double v, std::size_t) { return {v, 0}; }
  static Jet0 variable(double v, std::size_t, std::size_t) { return {v, 0}; }
  Jet0 apply(double h0, double, double = 0.0) const { return {h0, 0}; }
  Jet0& operator+=(const Jet0& o) {
    value += o.value;
    return *this;
  }
  Jet0 operator-() const { return {-value, 0}; }
  friend Jet0 operator+(Jet0 a, const Jet0& b) { return {a.value + b.value, 0}; }
  friend Jet0 operator-(Jet0 a, const Jet0& b) { return {a.value - b.value, 0}; }
  friend Jet0 operator*(Jet0 a, const Jet0& b) { return {a.value * b.value, 0}; }
  friend Jet0 operator/(Jet0 a, const Jet0& b) { return {a.value / b.value, 0}; }
};

[[noreturn]] void domain_error(const ExprNode* node, const std::string& why) {
  std::string text;
  if (node) print(*node, text);
  throw DomainError(why + " in '" + text + "'");
}

bool is_integer(double p) { return std::floor(p) == p && std::abs(p) < 1e15; }

template <class J>
J pow_const(const J& a, double p, const ExprNode* node) {
  const double v = a.value;
  if (p == 0.0) return J::constant(1.0, a.dim);
  if (p == 1.0) return a;
  if (v == 0.0) {
    if (p < 0.0) domain_error(node, "zero raised to a negative power");
    if (p < 2.0 && !is_integer(p)) domain_error(node, "non-differentiable power at zero");
    const double h2 = p == 2.0 ? 2.0 : 0.0;
    return a.apply(0.0, 0.0, h2);
  }
  if (v < 0.0 && !is_integer(p)) domain_error(node, "negative base with non-integer exponent");
  const double h0 = std::pow(v, p);
  const double h1 = p * std::pow(v, p - 1.0);
  const double h2 = p * (p - 1.0) * std::pow(v, p - 2.0);
  return a.apply(h0, h1, h2);
}

template <class J>
J log_jet(const J& a, const ExprNode* node) {
  const double v = a.value;
  if (!(v > 0.0)) domain_error(node, "log of a non-positive number");
  return a.apply(std::log(v), 1.0 / v, -1.0 / (v * v));
}

template <class J>
J exp_jet(const J& a) {
  const double e = std::exp(a.value);
  return a.apply(e, e, e);
}

template <class J>
J sqrt_jet(const J& a, const ExprNode* node) {
  const double v = a.value;
  if (!(v > 0.0)) domain_error(node, "sqrt of a non-positive number");
  const double s = std::sqrt(v);
  return a.apply(s, 0.5 / s, -0.25 / (s * v));
}

template <class J>
J unary(Builtin b, const J& a, const ExprNode* node) {
  const double v = a.value;
  switch (b) {
    case Builtin::Exp:
      return exp_jet(a);
    case Builtin::Log:
      return log_jet(a, node);
    case Builtin::Sqrt:
      return sqrt_jet(a, node);
    case Builtin::Sinh: {
      const double s = std::sinh(v), c = std::cosh(v);
      return a.apply(s, c, s);
    }
    case Builtin::Cosh: {
      const double s = std::sinh(v), c = std::cosh(v);
      return a.apply(c, s, c);
    }
    case Builtin::Tanh: {
      const double t = std::tanh(v);
      const double d = 1.0 - t * t;
      return a.apply(t, d, -2.0 * t * d);
    }
    case Builtin::Coth: {
      if (v == 0.0) domain_error(node, "coth at zero");
      const double c = std::cosh(v) / std::sinh(v);
      const double d = 1.0 - c * c;
      return a.apply(c, d, -2.0 * c * d);
    }
    case Builtin::Sin: {
      const double s = std::sin(v), c = std::cos(v);
      return a.apply(s, c, -s);
    }
    case Builtin::Cos: {
      const double s = std::sin(v), c = std::cos(v);
      return a.apply(c, -s, -c);
    }
    case Builtin::Abs: {
      if (v == 0.0) domain_error(node, "abs at zero");
      return v > 0.0 ? a : a.apply(-v, -1.0, 0.0);
    }
    default:
      break;
  }
  domain_error(node, "internal: not a unary builtin");
}

}  // namespace

std::string_view builtin_name(Builtin b) {
  for (const auto& info : kBuiltins)
    if (info.builtin == b) return info.name;
  return "?";
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField() : root_(make_number(0.0)) {}
ScalarField::ScalarField(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw ConfigError("null expression");
}

ScalarField ScalarField::constant(double v) { return ScalarField(make_number(v)); }
ScalarField ScalarField::identifier(std::string name) { return ScalarField(make_ident(std::move(name))); }

ScalarField ScalarField::call(Builtin b, std::vector<ScalarField> args) {
  std::vector<NodePtr> nodes;
  for (auto& a : args) nodes.push_back(a.root());
  for (const auto& info : kBuiltins)
    if (info.builtin == b && info.arity >= 0 && static_cast<int>(nodes.size()) != info.arity)
      throw ConfigError("arity mismatch for '" + std::string(info.name) + "'");
  if (nodes.empty()) throw ConfigError("builtin call without arguments");
  return ScalarField(make_call(b, std::move(nodes)));
}

std::string ScalarField::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

ScalarField ScalarField::substitute(const std::map<std::string, ScalarField, std::less<>>& repl) const {
  std::unordered_map<const ExprNode*, NodePtr> memo;
  return ScalarField(rewrite(
      root_,
      [&](const ExprNode& n) -> NodePtr {
        if (n.kind != NodeKind::Ident) return nullptr;
        auto it = repl.find(n.name);
        return it == repl.end() ? nullptr : it->second.root();
      },
      memo));
}

ScalarField ScalarField::bind(const ParamMap& params) const {
  std::unordered_map<const ExprNode*, NodePtr> memo;
  return ScalarField(rewrite(
      root_,
      [&](const ExprNode& n) -> NodePtr {
        if (n.kind != NodeKind::Ident) return nullptr;
        auto it = params.find(n.name);
        return it == params.end() ? nullptr : make_number(it->second);
      },
      memo));
}

std::set<std::string> ScalarField::identifiers() const {
  std::set<std::string> out;
  std::function<void(const ExprNode&)> walk = [&](const ExprNode& n) {
    if (n.kind == NodeKind::Ident) out.insert(n.name);
    for (const auto& a : n.args) walk(*a);
  };
  walk(*root_);
  return out;
}

bool operator==(const ScalarField& a, const ScalarField& b) { return equal(*a.root_, *b.root_); }

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(NodeKind::Add, {a.root(), b.root()}));
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(NodeKind::Sub, {a.root(), b.root()}));
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(NodeKind::Mul, {a.root(), b.root()}));
}
ScalarField operator/(const ScalarField& a, const ScalarField& b) {
  return ScalarField(make_node(NodeKind::Div, {a.root(), b.root()}));
}
ScalarField operator-(const ScalarField& a) { return ScalarField(make_node(NodeKind::Neg, {a.root()})); }

ScalarField pow(const ScalarField& base, double exponent) {
  return ScalarField::call(Builtin::Pow, {base, ScalarField::constant(exponent)});
}
ScalarField pow(const ScalarField& base, const ScalarField& exponent) {
  return ScalarField::call(Builtin::Pow, {base, exponent});
}

ScalarField normalize(const ScalarField& f) {
  std::unordered_map<const ExprNode*, NodePtr> memo;
  return ScalarField(rewrite(
      f.root(),
      [](const ExprNode& n) -> NodePtr {
        if (n.kind != NodeKind::Number || !(n.number < 0)) return nullptr;
        return make_node(NodeKind::Neg, {make_number(-n.number)});
      },
      memo));
}

ScalarField parse_expression(std::string_view source) { return ScalarField(Parser(source).parse()); }

std::vector<std::string> default_coordinates(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------------------
// Compilation

namespace {

struct Compiler {
  std::span<const std::string> coords;
  std::vector<CompiledField::Instr>& tape;
  std::vector<std::size_t>& norm_args;
  std::unordered_map<const ExprNode*, std::size_t> memo;
  std::unordered_map<const ExprNode*, bool> depends;

  using Code = CompiledField::Code;

  bool depends_on_coords(const ExprNode& n) {
    if (auto it = depends.find(&n); it != depends.end()) return it->second;
    bool d = false;
    if (n.kind == NodeKind::Ident) {
      for (const auto& c : coords)
        if (c == n.name) d = true;
      if (!d) throw ConfigError("unbound identifier '" + n.name + "'");
    }
    for (const auto& a : n.args) d = depends_on_coords(*a) || d;
    depends.emplace(&n, d);
    return d;
  }

  // Constant subtrees are folded at compile time (domain errors surface here).
  double fold(const ExprNode& n) {
    CompiledField::Instr tmp;
    switch (n.kind) {
      case NodeKind::Number:
        return n.number;
      case NodeKind::Neg:
        return -fold(*n.args[0]);
      case NodeKind::Add:
        return fold(*n.args[0]) + fold(*n.args[1]);
      case NodeKind::Sub:
        return fold(*n.args[0]) - fold(*n.args[1]);
      case NodeKind::Mul:
        return fold(*n.args[0]) * fold(*n.args[1]);
      case NodeKind::Div: {
        const double d = fold(*n.args[1]);
        if (d == 0.0) domain_error(&n, "division by zero");
        return fold(*n.args[0]) / d;
      }
      case NodeKind::Call: {
        if (n.builtin == Builtin::Norm) {
          double s = 0.0;
          for (const auto& a : n.args) {
            const double v = fold(*a);
            s += v * v;
          }
          return std::sqrt(s);
        }
        const Jet1 a = Jet1::constant(fold(*n.args[0]), 0);
        if (n.builtin == Builtin::Pow) return pow_const(a, fold(*n.args[1]), &n).value;
        return unary(n.builtin, a, &n).value;
      }
      case NodeKind::Ident:
        break;
    }
    throw ConfigError("internal: cannot fold identifier");
  }

  std::size_t emit(CompiledField::Instr in) {
    tape.push_back(in);
    return tape.size() - 1;
  }

  std::size_t compile(const NodePtr& np) {
    const ExprNode& n = *np;
    if (auto it = memo.find(&n); it != memo.end()) return it->second;
    std::size_t slot = 0;
    CompiledField::Instr in;
    in.node = &n;
    if (!depends_on_coords(n)) {
      in.code = Code::Const;
      in.number = fold(n);
      if (!std::isfinite(in.number)) domain_error(&n, "non-finite constant");
      slot = emit(in);
    } else {
      switch (n.kind) {
        case NodeKind::Ident: {
          in.code = Code::Coord;
          for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == n.name) in.a = i;
          break;
        }
        case NodeKind::Neg:
          in.code = Code::Neg;
          in.a = compile(n.args[0]);
          break;
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
          in.code = n.kind == NodeKind::Add   ? Code::Add
                    : n.kind == NodeKind::Sub ? Code::Sub
                    : n.kind == NodeKind::Mul ? Code::Mul
                                              : Code::Div;
          in.a = compile(n.args[0]);
          in.b = compile(n.args[1]);
          break;
        case NodeKind::Call:
          in.builtin = n.builtin;
          if (n.builtin == Builtin::Pow) {
            in.a = compile(n.args[0]);
            if (!depends_on_coords(*n.args[1])) {
              in.code = Code::PowConst;
              in.number = fold(*n.args[1]);
            } else {
              in.code = Code::PowGeneral;
              in.b = compile(n.args[1]);
            }
          } else if (n.builtin == Builtin::Norm) {
            in.code = Code::Norm;
            std::vector<std::size_t> args;
            for (const auto& a : n.args) args.push_back(compile(a));
            in.args_begin = norm_args.size();
            in.args_count = args.size();
            norm_args.insert(norm_args.end(), args.begin(), args.end());
          } else {
            in.code = Code::Unary;
            in.a = compile(n.args[0]);
          }
          break;
        case NodeKind::Number:
          break;
      }
      slot = emit(in);
    }
    memo.emplace(&n, slot);
    return slot;
  }
};

}  // namespace

CompiledField::CompiledField(const ScalarField& field, std::span<const std::string> coordinates,
                             const ParamMap& params)
    : source_(field.bind(params)), dim_(coordinates.size()) {
  if (dim_ > kMaxDim) throw ConfigError("ambient dimension exceeds " + std::to_string(kMaxDim));
  Compiler c{coordinates, tape_, norm_args_, {}, {}};
  c.compile(source_.root());
  constant_ = !c.depends_on_coords(*source_.root());
}

template <class J>
J CompiledField::run(std::span<const double> x) const {
  if (x.size() != dim_)
    throw ConfigError("point has " + std::to_string(x.size()) + " coordinates, field expects " +
                      std::to_string(dim_));
  thread_local std::vector<J> regs;
  if (regs.size() < tape_.size()) regs.resize(tape_.size());
  for (std::size_t i = 0; i < tape_.size(); ++i) {
    const Instr& in = tape_[i];
    J& r = regs[i];
    switch (in.code) {
      case Code::Const:
        r = J::constant(in.number, dim_);
        break;
      case Code::Coord:
        r = J::variable(x[in.a], in.a, dim_);
        break;
      case Code::Neg:
        r = -regs[in.a];
        break;
      case Code::Add:
        r = regs[in.a] + regs[in.b];
        break;
      case Code::Sub:
        r = regs[in.a] - regs[in.b];
        break;
      case Code::Mul:
        r = regs[in.a] * regs[in.b];
        break;
      case Code::Div:
        if (regs[in.b].value == 0.0) domain_error(in.node, "division by zero");
        r = regs[in.a] / regs[in.b];
        break;
      case Code::PowConst:
        r = pow_const(regs[in.a], in.number, in.node);
        break;
      case Code::PowGeneral:
        if (!(regs[in.a].value > 0.0)) domain_error(in.node, "pow with variable exponent needs a positive base");
        r = exp_jet(regs[in.b] * log_jet(regs[in.a], in.node));
        break;
      case Code::Unary:
        r = unary(in.builtin, regs[in.a], in.node);
        break;
      case Code::Norm: {
        J s = J::constant(0.0, dim_);
        for (std::size_t k = 0; k < in.args_count; ++k) {
          const J& a = regs[norm_args_[in.args_begin + k]];
          s += a * a;
        }
        if (!(s.value > 0.0)) domain_error(in.node, "norm at zero");
        r = sqrt_jet(s, in.node);
        break;
      }
    }
    if (!std::isfinite(r.value)) domain_error(in.node, "non-finite value");
  }
  return regs[tape_.size() - 1];
}

double CompiledField::value(std::span<const double> x) const { return run<Jet0>(x).value; }

Jet1 CompiledField::jet1(std::span<const double> x) const { return run<Jet1>(x); }
Jet2 CompiledField::jet2(std::span<const double> x) const { return run<Jet2>(x); }

Jet2 jet2_eval(const ScalarField& field, std::span<const double> point, const ParamMap& params) {
  const auto names = default_coordinates(point.size());
  return CompiledField(field, names, params).jet2(point);
}

}  // namespace hardy
