#include "evocat/algebra.hpp"

#include <array>
#include <utility>

namespace evocat::algebra {

namespace {

constexpr std::array<std::pair<std::string_view, Builtin>, 17> kBuiltins{{
    {"prod", Builtin::Prod},   {"sum", Builtin::Sum},     {"pair", Builtin::Pair},
    {"if", Builtin::If},       {"min", Builtin::Min},     {"max", Builtin::Max},
    {"monus", Builtin::Monus}, {"rem", Builtin::Rem},     {"and", Builtin::And},
    {"or", Builtin::Or},       {"not", Builtin::Not},     {"implies", Builtin::Implies},
    {"eq", Builtin::Eq},       {"le", Builtin::Le},       {"lt", Builtin::Lt},
    {"select", Builtin::Select}, {"seteq", Builtin::SetEq},
}};

void require_same_kind(const Node& a, const Node& b, std::string_view op) {
  bool a_leaf = a.is_leaf();
  bool b_leaf = b.is_leaf();
  if ((!a_leaf && !a.is_set()) || (!b_leaf && !b.is_set()))
    throw Error(ErrorCode::MixedKinds, std::string(op) + " expects value operands");
  if (a_leaf != b_leaf)
    throw Error(ErrorCode::MixedKinds, std::string(op) + " of a leaf and a set");
}

const Natural& leaf_value(const Node& n, std::string_view op) {
  if (!n.is_leaf()) throw Error(ErrorCode::NotALeaf, std::string(op) + " expects leaf operands");
  return n.value();
}

}  // namespace

std::optional<Builtin> builtin_from_name(std::string_view op) {
  for (const auto& [name, b] : kBuiltins)
    if (name == op) return b;
  return std::nullopt;
}

std::string_view builtin_name(Builtin b) {
  for (const auto& [name, v] : kBuiltins)
    if (v == b) return name;
  return {};
}

Node make_bool(bool b) { return Node::leaf(b ? 1 : 0); }

bool as_bool(const Node& v) {
  if (!v.is_leaf() || v.value() > 1) throw Error(ErrorCode::NotBoolean, "expected a leaf 0 or 1");
  return v.value() == 1;
}

Node product(const Node& a, const Node& b) {
  require_same_kind(a, b, "prod");
  if (a.is_leaf()) return Node::leaf(a.value() * b.value());
  Node out;
  std::size_t k = 0;
  for (const auto& x : a.children())
    for (const auto& y : b.children())
      out.append(Label("p" + std::to_string(k++)), pair(x.node, y.node));
  return out;
}

Node coproduct(const Node& a, const Node& b) {
  require_same_kind(a, b, "sum");
  if (a.is_leaf()) return Node::leaf(a.value() + b.value());
  Node out;
  for (const auto& x : a.children()) out.append(Label::positional(), x.node);
  for (const auto& y : b.children()) out.append(Label::positional(), y.node);
  return out;
}

Node pair(const Node& f, const Node& g) {
  Node out;
  out.append(Label("fst"), f);
  out.append(Label("snd"), g);
  return out;
}

const Node& if_arrow(const Node& cond, const Node& f, const Node& g) {
  return as_bool(cond) ? f : g;
}

Node nat_lattice(NatOp op, const Node& a, const Node& b) {
  const Natural& x = leaf_value(a, "lattice operation");
  const Natural& y = leaf_value(b, "lattice operation");
  switch (op) {
    case NatOp::Min: return Node::leaf(x < y ? x : y);
    case NatOp::Max: return Node::leaf(x < y ? y : x);
    case NatOp::Monus: return Node::leaf(x >= y ? Natural(x - y) : Natural(0));
  }
  return Node::leaf(0);
}

Node remainder(const Node& a, const Node& b) {
  const Natural& x = leaf_value(a, "rem");
  const Natural& y = leaf_value(b, "rem");
  if (y == 0) throw Error(ErrorCode::DivisionByZero, "rem by zero");
  return Node::leaf(x % y);
}

Node bool_lattice(BoolOp op, std::span<const Node> args) {
  std::size_t want = op == BoolOp::Not ? 1 : 2;
  if (args.size() != want)
    throw Error(ErrorCode::ArityMismatch, "boolean operation expects " + std::to_string(want) + " operand(s)");
  bool a = as_bool(args[0]);
  if (op == BoolOp::Not) return make_bool(!a);
  bool b = as_bool(args[1]);
  switch (op) {
    case BoolOp::And: return make_bool(a && b);
    case BoolOp::Or: return make_bool(a || b);
    case BoolOp::Implies: return make_bool(!a || b);
    case BoolOp::Not: break;
  }
  return make_bool(false);
}

Node nat_compare(CmpOp op, const Node& a, const Node& b) {
  const Natural& x = leaf_value(a, "comparison");
  const Natural& y = leaf_value(b, "comparison");
  switch (op) {
    case CmpOp::Eq: return make_bool(x == y);
    case CmpOp::Le: return make_bool(x <= y);
    case CmpOp::Lt: return make_bool(x < y);
  }
  return make_bool(false);
}

Node select(const Node& m, const std::function<bool(const Node&)>& predicate) {
  if (!m.is_set() || m.has_op()) throw Error(ErrorCode::NotASet, "select expects a set");
  Node out;
  for (const auto& c : m.children())
    if (predicate(c.node)) out.children().push_back(c);
  return out;
}

Node set_eq(const Node& a, const Node& b) { return make_bool(struct_eq(a, b)); }

}  // namespace evocat::algebra
