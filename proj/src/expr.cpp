#include "fretish/expr.hpp"

#include <cstdlib>

#include "fretish/error.hpp"
#include "lexer.hpp"

namespace fretish {

const Value *State::find(const std::string &name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

Trace::Trace(std::vector<State> steps) : steps_(std::move(steps)) {
  if (steps_.empty())
    throw ArgumentError("a trace must contain at least one state");
}

const char *to_string(CompareOp op) {
  switch (op) {
  case CompareOp::Less: return "<";
  case CompareOp::LessEq: return "<=";
  case CompareOp::Equal: return "=";
  case CompareOp::NotEqual: return "!=";
  case CompareOp::GreaterEq: return ">=";
  case CompareOp::Greater: return ">";
  }
  return "?";
}

struct BoolExpr::Node {
  Kind kind;
  bool value = false;
  std::string name;
  Operand lhs_operand;
  Operand rhs_operand;
  CompareOp op = CompareOp::Equal;
  std::vector<BoolExpr> children;
};

BoolExpr BoolExpr::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return BoolExpr(std::move(n));
}

BoolExpr BoolExpr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return BoolExpr(std::move(n));
}

BoolExpr BoolExpr::compare(Operand lhs, CompareOp op, Operand rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compare;
  n->lhs_operand = std::move(lhs);
  n->op = op;
  n->rhs_operand = std::move(rhs);
  return BoolExpr(std::move(n));
}

namespace {

template <class Node, class Kind>
std::shared_ptr<Node> make_node(Kind kind, std::vector<BoolExpr> children) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = std::move(children);
  return n;
}

} // namespace

BoolExpr BoolExpr::negate(BoolExpr operand) {
  return BoolExpr(make_node<Node>(Kind::Not, {std::move(operand)}));
}
BoolExpr BoolExpr::conj(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr(make_node<Node>(Kind::And, {std::move(lhs), std::move(rhs)}));
}
BoolExpr BoolExpr::disj(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr(make_node<Node>(Kind::Or, {std::move(lhs), std::move(rhs)}));
}
BoolExpr BoolExpr::implies(BoolExpr lhs, BoolExpr rhs) {
  return BoolExpr(make_node<Node>(Kind::Implies, {std::move(lhs), std::move(rhs)}));
}

BoolExpr::Kind BoolExpr::kind() const { return node_->kind; }
bool BoolExpr::constant_value() const { return node_->value; }
const std::string &BoolExpr::name() const { return node_->name; }
const Operand &BoolExpr::compare_lhs() const { return node_->lhs_operand; }
const Operand &BoolExpr::compare_rhs() const { return node_->rhs_operand; }
CompareOp BoolExpr::compare_op() const { return node_->op; }
const BoolExpr &BoolExpr::lhs() const { return node_->children.at(0); }
const BoolExpr &BoolExpr::rhs() const { return node_->children.at(1); }

namespace {

Rational operand_value(const Operand &operand, const State &state, std::size_t index) {
  if (const auto *literal = std::get_if<Rational>(&operand))
    return *literal;
  const auto &name = std::get<std::string>(operand);
  const Value *value = state.find(name);
  if (value == nullptr)
    throw UnboundVariableError(name, index);
  if (const auto *number = std::get_if<Rational>(value))
    return *number;
  throw TypeError("variable '" + name + "' is Boolean but used in a comparison at index " +
                  std::to_string(index));
}

} // namespace

bool BoolExpr::evaluate(const State &state, std::size_t index) const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Constant:
    return n.value;
  case Kind::Variable: {
    const Value *value = state.find(n.name);
    if (value == nullptr)
      throw UnboundVariableError(n.name, index);
    if (const bool *b = std::get_if<bool>(value))
      return *b;
    throw TypeError("variable '" + n.name + "' is numeric but used as a Boolean at index " +
                    std::to_string(index));
  }
  case Kind::Compare: {
    Rational a = operand_value(n.lhs_operand, state, index);
    Rational b = operand_value(n.rhs_operand, state, index);
    switch (n.op) {
    case CompareOp::Less: return a < b;
    case CompareOp::LessEq: return a <= b;
    case CompareOp::Equal: return a == b;
    case CompareOp::NotEqual: return a != b;
    case CompareOp::GreaterEq: return a >= b;
    case CompareOp::Greater: return a > b;
    }
    return false;
  }
  case Kind::Not:
    return !n.children[0].evaluate(state, index);
  case Kind::And:
    return n.children[0].evaluate(state, index) && n.children[1].evaluate(state, index);
  case Kind::Or:
    return n.children[0].evaluate(state, index) || n.children[1].evaluate(state, index);
  case Kind::Implies:
    return !n.children[0].evaluate(state, index) || n.children[1].evaluate(state, index);
  }
  return false;
}

void BoolExpr::collect_variables(std::set<std::string> &out) const {
  const Node &n = *node_;
  switch (n.kind) {
  case Kind::Constant:
    return;
  case Kind::Variable:
    out.insert(n.name);
    return;
  case Kind::Compare:
    for (const Operand *op : {&n.lhs_operand, &n.rhs_operand})
      if (const auto *name = std::get_if<std::string>(op))
        out.insert(*name);
    return;
  default:
    for (const auto &child : n.children)
      child.collect_variables(out);
  }
}

bool operator==(const BoolExpr &a, const BoolExpr &b) {
  if (a.node_ == b.node_)
    return true;
  const auto &x = *a.node_;
  const auto &y = *b.node_;
  if (x.kind != y.kind)
    return false;
  switch (x.kind) {
  case BoolExpr::Kind::Constant:
    return x.value == y.value;
  case BoolExpr::Kind::Variable:
    return x.name == y.name;
  case BoolExpr::Kind::Compare:
    return x.op == y.op && x.lhs_operand == y.lhs_operand && x.rhs_operand == y.rhs_operand;
  default:
    return x.children == y.children;
  }
}

std::string to_string(const Rational &value) {
  const auto num = value.numerator();
  const auto den = value.denominator();
  if (den == 1)
    return std::to_string(num);
  // Terminating decimals print as such; everything else as a fraction.
  std::int64_t rest = den;
  int twos = 0, fives = 0;
  while (rest % 2 == 0) {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0) {
    rest /= 5;
    ++fives;
  }
  if (rest != 1 || std::max(twos, fives) > 18)
    return std::to_string(num) + "/" + std::to_string(den);
  int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i)
    scale *= 10;
  // |num| * (scale / den) fits whenever the decimal form exists within 18 digits.
  __int128 scaled = static_cast<__int128>(num < 0 ? -num : num) * (scale / den);
  std::int64_t whole = static_cast<std::int64_t>(scaled / scale);
  std::int64_t frac = static_cast<std::int64_t>(scaled % scale);
  std::string frac_text = std::to_string(frac);
  frac_text.insert(0, static_cast<std::size_t>(digits) - frac_text.size(), '0');
  return (num < 0 ? "-" : "") + std::to_string(whole) + "." + frac_text;
}

namespace {

enum Prec { kImplies = 1, kOr = 2, kAnd = 3, kCompare = 4, kNot = 5, kAtom = 6 };

int precedence(const BoolExpr &e) {
  switch (e.kind()) {
  case BoolExpr::Kind::Implies: return kImplies;
  case BoolExpr::Kind::Or: return kOr;
  case BoolExpr::Kind::And: return kAnd;
  case BoolExpr::Kind::Compare: return kCompare;
  case BoolExpr::Kind::Not: return kNot;
  default: return kAtom;
  }
}

std::string operand_text(const Operand &op) {
  if (const auto *name = std::get_if<std::string>(&op))
    return *name;
  return to_string(std::get<Rational>(op));
}

std::string print(const BoolExpr &e, int min_prec) {
  std::string out;
  switch (e.kind()) {
  case BoolExpr::Kind::Constant:
    out = e.constant_value() ? "true" : "false";
    break;
  case BoolExpr::Kind::Variable:
    out = e.name();
    break;
  case BoolExpr::Kind::Compare:
    out = operand_text(e.compare_lhs()) + " " + to_string(e.compare_op()) + " " +
          operand_text(e.compare_rhs());
    break;
  case BoolExpr::Kind::Not:
    out = "!" + print(e.lhs(), kNot);
    break;
  case BoolExpr::Kind::And:
    out = print(e.lhs(), kAnd) + " & " + print(e.rhs(), kAnd + 1);
    break;
  case BoolExpr::Kind::Or:
    out = print(e.lhs(), kOr) + " | " + print(e.rhs(), kOr + 1);
    break;
  case BoolExpr::Kind::Implies:
    out = print(e.lhs(), kImplies + 1) + " -> " + print(e.rhs(), kImplies);
    break;
  }
  return precedence(e) < min_prec ? "(" + out + ")" : out;
}

} // namespace

std::string to_string(const BoolExpr &expr) { return print(expr, 0); }

BoolExpr parse_bool_expr(const std::string &text) {
  detail::TokenStream ts(detail::tokenize(text));
  BoolExpr expr = detail::parse_bool(ts);
  if (!ts.at_end())
    ts.fail({"'&'", "'|'", "'->'", "end of input"});
  return expr;
}

} // namespace fretish
