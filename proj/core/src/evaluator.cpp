#include "interpreter.hpp"

#include "evocat/algebra.hpp"

#include <algorithm>

namespace evocat::detail {

using algebra::Builtin;

ScopeChain::ScopeChain(Node& base, const Path& path, const Scope* outer) {
  scopes_.reserve(path.size() + 1);
  scopes_.push_back(Scope{&base, outer});
  Node* cur = &base;
  for (const auto& seg : path) {
    cur = cur->child(seg);
    if (!cur) throw Error(ErrorCode::PathUnresolvable, "no node at '" + path.to_string() + "'");
    scopes_.push_back(Scope{cur, &scopes_.back()});
  }
}

DepthGuard::DepthGuard(Machine& m, const Node* in_progress) : m_(m), pushed_(in_progress != nullptr) {
  if (m_.depth_ >= kMaxDepth)
    throw Error(ErrorCode::FuelExhausted, "nesting depth limit of " + std::to_string(kMaxDepth) + " reached");
  ++m_.depth_;
  if (pushed_) m_.in_progress_.push_back(in_progress);
}

DepthGuard::~DepthGuard() {
  --m_.depth_;
  if (pushed_) m_.in_progress_.pop_back();
}

void Interpreter::spend(std::uint64_t n) {
  if (m_.fuel_ < n) {
    m_.counters_.fuel_used += m_.fuel_;
    m_.fuel_ = 0;
    throw Error(ErrorCode::FuelExhausted, "fuel exhausted");
  }
  m_.fuel_ -= n;
  m_.counters_.fuel_used += n;
}

void Interpreter::trace(const std::string& line) {
  if (m_.trace_) *m_.trace_ << line << '\n';
}

const DeviceBinding* Interpreter::device_at(const Node* n) const {
  if (!m_.devices_) return nullptr;
  for (const auto& b : m_.devices_->bindings())
    if (resolve(m_.tree_.root(), b.mount) == n) return &b;
  return nullptr;
}

Interpreter::Found Interpreter::lookup(const Path& p, const Scope& s) const {
  if (p.empty()) return {s.frame, &s};
  for (const Scope* sc = &s; sc; sc = sc->outer) {
    if (Node* first = sc->frame->child(p[0])) return {resolve(*first, p.suffix(1)), sc};
  }
  return {};
}

Node* Interpreter::find_template(const std::string& op, const Scope& s) const {
  for (const Scope* sc = &s; sc; sc = sc->outer) {
    Node* c = sc->frame->find(op);
    if (c && is_function_template(*c)) return c;
  }
  return nullptr;
}

Node Interpreter::deref(const Path& p, const Scope& s) {
  Found f = lookup(p, s);
  if (!f.node) throw Error(ErrorCode::PathUnresolvable, "cannot resolve [" + p.to_string() + "]");
  if (const DeviceBinding* dev = device_at(f.node)) return m_.devices_->read(dev->mount);
  if (std::find(m_.in_progress_.begin(), m_.in_progress_.end(), f.node) != m_.in_progress_.end())
    throw Error(ErrorCode::CyclicReference, "[" + p.to_string() + "] refers back to a node under evaluation");
  eval_in_place(*f.node, *f.scope);
  return *f.node;
}

Node Interpreter::eval_detached(const Node& n, const Scope& s) {
  Node copy = n;
  eval_in_place(copy, s);
  return copy;
}

void Interpreter::eval_in_place(Node& n, const Scope& s) {
  switch (n.kind()) {
    case NodeKind::Leaf: return;
    case NodeKind::Var: throw Error(ErrorCode::UnboundVariable, "$" + n.var_name() + " outside a rule");
    case NodeKind::Hole: throw Error(ErrorCode::UnboundVariable, "unfilled hole");
    case NodeKind::Ref: {
      DepthGuard g(m_, &n);
      Node v = deref(n.ref_path(), s);
      spend();
      n = std::move(v);
      return;
    }
    case NodeKind::Set: break;
  }

  if (std::find(m_.in_progress_.begin(), m_.in_progress_.end(), &n) != m_.in_progress_.end())
    throw Error(ErrorCode::CyclicReference, "node re-entered during its own evaluation");

  if (!n.has_op()) {
    if (n.is_ground() || is_function_template(n)) return;
    DepthGuard g(m_, &n);
    for (auto& c : n.children()) eval_in_place(c.node, s);
    return;
  }
  if (n.is_function_var()) throw Error(ErrorCode::UnboundVariable, n.op() + " outside a rule");

  DepthGuard g(m_, &n);
  auto builtin = algebra::builtin_from_name(n.op());

  if (builtin == Builtin::If) {
    if (n.size() != 3) throw Error(ErrorCode::ArityMismatch, "if expects 3 operands");
    eval_in_place(n.at(0), s);
    Node& branch = n.at(algebra::as_bool(n.at(0)) ? 1 : 2);
    eval_in_place(branch, s);
    Node v = std::move(branch);
    spend();
    ++m_.counters_.operation_firings;
    n = std::move(v);
    return;
  }

  if (builtin == Builtin::Select) {
    if (n.size() != 2) throw Error(ErrorCode::ArityMismatch, "select expects 2 operands");
    eval_in_place(n.at(0), s);
    const Node& predicate = n.at(1);
    Node v = algebra::select(n.at(0), [&](const Node& candidate) {
      Binding b;
      b.vars.emplace("x", candidate);
      Node test = substitute(predicate, b);
      Scope inner{const_cast<Node*>(&candidate), &s};
      eval_in_place(test, inner);
      return algebra::as_bool(test);
    });
    spend();
    ++m_.counters_.operation_firings;
    n = std::move(v);
    return;
  }

  for (auto& c : n.children()) eval_in_place(c.node, s);

  if (builtin) {
    Node v = apply_builtin(n);
    spend();
    ++m_.counters_.operation_firings;
    n = std::move(v);
    return;
  }

  Node* tmpl = find_template(n.op(), s);
  if (!tmpl) throw Error(ErrorCode::UnknownOperation, "no operation or function template named '" + n.op() + "'");
  Node instance = *tmpl;
  assign_operands(instance, n.children());
  Node v = invoke(instance, s, n.op());
  n = std::move(v);
}

Node Interpreter::apply_builtin(const Node& n) {
  auto b = *algebra::builtin_from_name(n.op());
  const auto& kids = n.children();
  auto operand = [&](std::size_t i) -> const Node& { return kids[i].node; };
  auto arity = [&](std::size_t want) {
    if (kids.size() != want)
      throw Error(ErrorCode::ArityMismatch, n.op() + " expects " + std::to_string(want) + " operand(s), got " +
                                                std::to_string(kids.size()));
  };
  auto at_least = [&](std::size_t want) {
    if (kids.size() < want)
      throw Error(ErrorCode::ArityMismatch, n.op() + " expects at least " + std::to_string(want) + " operands");
  };
  auto fold = [&](auto&& f) {
    at_least(2);
    Node acc = f(operand(0), operand(1));
    for (std::size_t i = 2; i < kids.size(); ++i) acc = f(acc, operand(i));
    return acc;
  };

  switch (b) {
    case Builtin::Prod:
      if (kids.size() > 2 && std::any_of(kids.begin(), kids.end(), [](const Child& c) { return c.node.is_set(); }))
        throw Error(ErrorCode::ArityMismatch, "product of sets is binary");
      return fold(algebra::product);
    case Builtin::Sum: return fold(algebra::coproduct);
    case Builtin::Pair: arity(2); return algebra::pair(operand(0), operand(1));
    case Builtin::Min:
      return fold([](const Node& a, const Node& c) { return algebra::nat_lattice(algebra::NatOp::Min, a, c); });
    case Builtin::Max:
      return fold([](const Node& a, const Node& c) { return algebra::nat_lattice(algebra::NatOp::Max, a, c); });
    case Builtin::Monus: arity(2); return algebra::nat_lattice(algebra::NatOp::Monus, operand(0), operand(1));
    case Builtin::Rem: arity(2); return algebra::remainder(operand(0), operand(1));
    case Builtin::And:
    case Builtin::Or: {
      auto op = b == Builtin::And ? algebra::BoolOp::And : algebra::BoolOp::Or;
      return fold([op](const Node& a, const Node& c) {
        const Node args[] = {a, c};
        return algebra::bool_lattice(op, args);
      });
    }
    case Builtin::Not: {
      arity(1);
      const Node args[] = {operand(0)};
      return algebra::bool_lattice(algebra::BoolOp::Not, args);
    }
    case Builtin::Implies: {
      arity(2);
      const Node args[] = {operand(0), operand(1)};
      return algebra::bool_lattice(algebra::BoolOp::Implies, args);
    }
    case Builtin::Eq: arity(2); return algebra::nat_compare(algebra::CmpOp::Eq, operand(0), operand(1));
    case Builtin::Le: arity(2); return algebra::nat_compare(algebra::CmpOp::Le, operand(0), operand(1));
    case Builtin::Lt: arity(2); return algebra::nat_compare(algebra::CmpOp::Lt, operand(0), operand(1));
    case Builtin::SetEq: arity(2); return algebra::set_eq(operand(0), operand(1));
    case Builtin::If:
    case Builtin::Select: break;
  }
  throw Error(ErrorCode::UnknownOperation, n.op());
}

}  // namespace evocat::detail
