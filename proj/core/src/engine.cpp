#include "interpreter.hpp"

#include "evocat/algebra.hpp"

#include <set>
#include <sstream>

namespace evocat {

namespace {

const Path& static_path(const Node& n, const char* field) {
  if (!n.is_ref())
    throw Error(ErrorCode::InvalidInstruction, std::string("'") + field + "' must be a reference [path]");
  return n.ref_path();
}

bool is_reserved_scan_label(const Label& l) { return l.name() == "rules" || l.name() == "mode"; }

// --- formula validation --------------------------------------------------------

struct VarUse {
  std::multiset<std::string> outside;  // first-order occurrences outside function-variable args
  std::set<std::string> functions;
};

void collect(const Node& n, VarUse& use) {
  if (n.is_var()) {
    use.outside.insert(n.var_name());
    return;
  }
  if (!n.is_set()) return;
  if (n.is_function_var()) {
    use.functions.insert(n.op().substr(1));
    for (const auto& c : n.children())
      if (!c.node.is_var()) collect(c.node, use);
    return;
  }
  for (const auto& c : n.children()) collect(c.node, use);
}

void check_applications(const Node& n, const VarUse& use) {
  if (!n.is_set()) return;
  if (n.is_function_var()) {
    std::set<std::string> seen;
    for (const auto& c : n.children()) {
      if (c.node.is_var()) {
        const auto& name = c.node.var_name();
        if (!seen.insert(name).second)
          throw Error(ErrorCode::InvalidFormula, n.op() + " applied to $" + name + " twice");
        if (!use.outside.count(name))
          throw Error(ErrorCode::InvalidFormula,
                      "argument $" + name + " of " + n.op() + " is not bound elsewhere in the left side");
      } else if (!c.node.is_ground()) {
        throw Error(ErrorCode::InvalidFormula, n.op() + " arguments must be variables or literals");
      }
    }
    return;
  }
  for (const auto& c : n.children()) check_applications(c.node, use);
}

void check_rhs(const Node& n, const VarUse& lhs) {
  if (n.is_var() && !lhs.outside.count(n.var_name()))
    throw Error(ErrorCode::InvalidFormula, "right side uses $" + n.var_name() + " which the left side does not bind");
  if (!n.is_set()) return;
  if (n.is_function_var() && !lhs.functions.count(n.op().substr(1)))
    throw Error(ErrorCode::InvalidFormula, "right side uses " + n.op() + " which the left side does not bind");
  for (const auto& c : n.children()) check_rhs(c.node, lhs);
}

// --- matching --------------------------------------------------------------------

struct Deferred {
  const Node* pattern;
  const Node* subject;
};

bool match_first_order(const Node& p, const Node& t, Binding& b, std::vector<Deferred>& deferred) {
  switch (p.kind()) {
    case NodeKind::Var: {
      auto [it, fresh] = b.vars.try_emplace(p.var_name(), t);
      return fresh || struct_eq(it->second, t);
    }
    case NodeKind::Leaf: return t.is_leaf() && t.value() == p.value();
    case NodeKind::Ref: return t.is_ref() && t.ref_path() == p.ref_path();
    case NodeKind::Hole: return t.is_hole() && t.hole_index() == p.hole_index();
    case NodeKind::Set: break;
  }
  if (p.is_function_var()) {
    deferred.push_back({&p, &t});
    return true;
  }
  if (!t.is_set() || t.has_op() != p.has_op() || (p.has_op() && p.op() != t.op())) return false;
  if (p.size() != t.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& pc = p.children()[i];
    const auto& tc = t.children()[i];
    if (pc.label != tc.label) return false;
    if (!match_first_order(pc.node, tc.node, b, deferred)) return false;
  }
  return true;
}

Node abstract(const Node& t, const std::vector<Node>& args) {
  for (std::size_t i = 0; i < args.size(); ++i)
    if (struct_eq(t, args[i])) return Node::hole(i);
  Node out = t;
  for (auto& c : out.children()) c.node = abstract(c.node, args);
  return out;
}

Node fill_holes(const Node& body, std::span<const Node> args) {
  if (body.is_hole()) return args[body.hole_index()];
  Node out = body;
  for (auto& c : out.children()) c.node = fill_holes(c.node, args);
  return out;
}

}  // namespace

Instruction instruction_from_node(const Node& entry) {
  if (!entry.is_set() || entry.has_op())
    throw Error(ErrorCode::InvalidInstruction, "an instruction must be a plain set");
  const Node* at = entry.find("at");
  if (!at) throw Error(ErrorCode::InvalidInstruction, "instruction has no 'at'");
  Instruction ins;
  ins.at = static_path(*at, "at");
  if (ins.at.empty()) throw Error(ErrorCode::InvalidInstruction, "'at' must not be the frame itself");

  int forms = 0;
  if (const Node* to = entry.find("to")) {
    ins.kind = InstructionKind::Assign;
    ins.term = *to;
    ++forms;
  }
  if (const Node* call = entry.find("call")) {
    ins.kind = InstructionKind::Call;
    ins.source = static_path(*call, "call");
    ++forms;
  }
  if (const Node* put = entry.find("put")) {
    ins.kind = InstructionKind::Put;
    ins.term = *put;
    ++forms;
  }
  if (const Node* get = entry.find("get")) {
    ins.kind = InstructionKind::Get;
    ins.source = static_path(*get, "get");
    ++forms;
  }
  if (forms != 1 || entry.size() != 2)
    throw Error(ErrorCode::InvalidInstruction, "an instruction is 'at' plus exactly one of to, call, put, get");
  return ins;
}

std::vector<Instruction> instructions_from(const Node& body) {
  if (!body.is_set() || body.has_op()) throw Error(ErrorCode::InvalidInstruction, "a body must be a plain set");
  std::vector<Instruction> out;
  out.reserve(body.size());
  for (std::size_t k = 0; k < body.size(); ++k) {
    try {
      out.push_back(instruction_from_node(body.at(k)));
    } catch (const Error& e) {
      throw Error(e.code(), "instruction " + std::to_string(k) + ": " + e.message());
    }
  }
  return out;
}

Formula formula_from_node(const Node& entry) {
  if (!entry.is_set() || entry.has_op()) throw Error(ErrorCode::InvalidFormula, "a formula must be a plain set");
  const Node* lhs = entry.find("lhs");
  const Node* rhs = entry.find("rhs");
  if (!lhs || !rhs || entry.size() != 2) throw Error(ErrorCode::InvalidFormula, "a formula is exactly lhs and rhs");
  VarUse use;
  collect(*lhs, use);
  check_applications(*lhs, use);
  check_rhs(*rhs, use);
  return Formula{*lhs, *rhs};
}

std::vector<Formula> formulas_from(const Node& rules) {
  if (!rules.is_set() || rules.has_op()) throw Error(ErrorCode::InvalidFormula, "rules must be a plain set");
  std::vector<Formula> out;
  out.reserve(rules.size());
  for (std::size_t k = 0; k < rules.size(); ++k) {
    try {
      out.push_back(formula_from_node(rules.at(k)));
    } catch (const Error& e) {
      throw Error(e.code(), "formula " + std::to_string(k + 1) + ": " + e.message());
    }
  }
  return out;
}

std::optional<Binding> match(const Node& pattern, const Node& subject) {
  Binding b;
  std::vector<Deferred> deferred;
  if (!match_first_order(pattern, subject, b, deferred)) return std::nullopt;

  for (const auto& d : deferred) {
    std::vector<Node> args;
    args.reserve(d.pattern->size());
    for (const auto& c : d.pattern->children()) {
      if (c.node.is_var()) {
        auto it = b.vars.find(c.node.var_name());
        if (it == b.vars.end()) return std::nullopt;
        args.push_back(it->second);
      } else {
        args.push_back(c.node);
      }
    }
    const std::string name = d.pattern->op().substr(1);
    if (auto it = b.functions.find(name); it != b.functions.end()) {
      if (it->second.arity != args.size()) return std::nullopt;
      if (!struct_eq(fill_holes(it->second.body, args), *d.subject)) return std::nullopt;
      continue;
    }
    b.functions.emplace(name, Abstraction{abstract(*d.subject, args), args.size()});
  }
  return b;
}

Node substitute(const Node& tmpl, const Binding& binding) {
  if (tmpl.is_var()) {
    auto it = binding.vars.find(tmpl.var_name());
    if (it == binding.vars.end()) throw Error(ErrorCode::UnboundVariable, "$" + tmpl.var_name() + " is not bound");
    return it->second;
  }
  if (!tmpl.is_set()) return tmpl;
  if (tmpl.is_function_var()) {
    auto it = binding.functions.find(tmpl.op().substr(1));
    if (it == binding.functions.end()) throw Error(ErrorCode::UnboundVariable, tmpl.op() + " is not bound");
    std::vector<Node> args;
    args.reserve(tmpl.size());
    for (const auto& c : tmpl.children()) args.push_back(substitute(c.node, binding));
    return apply_abstraction(it->second, args);
  }
  Node out = tmpl;
  for (auto& c : out.children()) c.node = substitute(c.node, binding);
  return out;
}

Node apply_abstraction(const Abstraction& f, std::span<const Node> args) {
  if (args.size() != f.arity)
    throw Error(ErrorCode::ArityMismatch, "abstraction of arity " + std::to_string(f.arity) + " applied to " +
                                              std::to_string(args.size()) + " argument(s)");
  return fill_holes(f.body, args);
}

namespace detail {

void Interpreter::write_target(Node& frame, const Path& at, Node value) {
  Node* target = resolve(frame, at);
  if (const DeviceBinding* dev = target ? device_at(target) : nullptr) {
    m_.devices_->write(dev->mount, value);
    return;
  }
  if (!at[0].is_ordinal() && at[0].name() == "dev" && !frame.find("dev") && m_.devices_) {
    m_.devices_->write(at, value);
    return;
  }
  replace_subtree(frame, at, std::move(value));
}

void Interpreter::run_sequential(std::span<const Instruction> body, Node& frame, const Scope& s) {
  if (!frame.is_set() || frame.has_op()) throw Error(ErrorCode::NotASet, "sequential frame must be a plain set");
  const Path ip_path = Path::parse("ip");
  frame.put("ip", Node::leaf(0));

  for (;;) {
    const Node* ip = frame.find("ip");
    if (!ip || !ip->is_leaf()) throw Error(ErrorCode::InvalidInstruction, "'ip' no longer holds a number");
    if (ip->value() >= body.size()) return;
    const auto k = static_cast<std::size_t>(ip->value());
    const Instruction& ins = body[k];

    std::ostringstream line;
    line << "step=" << m_.counters_.transitions << " depth=" << m_.call_depth_ << " mode=seq instr=" << k
         << " at=" << ins.at.to_string();
    trace(line.str());

    bool wrote_ip = false;
    try {
      spend();
      ++m_.counters_.instructions;
      ++m_.counters_.transitions;
      switch (ins.kind) {
        case InstructionKind::Assign: {
          Node v = eval_detached(ins.term, s);
          write_target(frame, ins.at, std::move(v));
          wrote_ip = ins.at == ip_path;
          break;
        }
        case InstructionKind::Call: {
          Node* instance = resolve(frame, ins.source);
          if (!instance)
            throw Error(ErrorCode::PathUnresolvable, "no function instance at [" + ins.source.to_string() + "]");
          Node v;
          {
            ScopeChain chain(frame, ins.source.parent(), &s);
            v = invoke(*instance, chain.innermost(), ins.source.to_string());
          }
          replace_subtree(frame, ins.source, v);
          write_target(frame, ins.at, std::move(v));
          wrote_ip = ins.at == ip_path;
          break;
        }
        case InstructionKind::Put: {
          Node v = eval_detached(ins.term, s);
          Node* heap = resolve(frame, ins.at);
          if (!heap) throw Error(ErrorCode::PathUnresolvable, "no heap at [" + ins.at.to_string() + "]");
          ScopeChain chain(frame, ins.at.parent(), &s);
          heap_put(*heap, std::move(v), chain.innermost());
          break;
        }
        case InstructionKind::Get: {
          Node* heap = resolve(frame, ins.source);
          if (!heap) throw Error(ErrorCode::PathUnresolvable, "no heap at [" + ins.source.to_string() + "]");
          Node v;
          {
            ScopeChain chain(frame, ins.source.parent(), &s);
            v = heap_get(*heap, chain.innermost());
          }
          write_target(frame, ins.at, std::move(v));
          wrote_ip = ins.at == ip_path;
          break;
        }
      }
    } catch (const Error& e) {
      throw Error(e.code(), "instruction " + std::to_string(k) + ": " + e.message());
    }
    if (!wrote_ip) frame.put("ip", Node::leaf(Natural(k) + 1));
  }
}

bool Interpreter::reduce_ready(Node& n, const Scope& s) {
  if (n.is_ref()) {
    eval_in_place(n, s);
    return true;
  }
  if (!n.is_set() || is_function_template(n)) return false;
  bool changed = false;
  for (auto& c : n.children()) changed |= reduce_ready(c.node, s);
  if (n.has_op() && algebra::builtin_from_name(n.op())) {
    bool ready = true;
    for (const auto& c : n.children()) ready = ready && c.node.is_ground();
    if (ready) {
      eval_in_place(n, s);
      changed = true;
    }
  }
  return changed;
}

namespace {

struct Site {
  Node* node;
  Path path;
  Binding binding;
};

void collect_matches(Node& n, const Path& here, const Node& lhs, std::vector<Site>& out) {
  if (auto b = match(lhs, n)) {
    out.push_back({&n, here, std::move(*b)});
    return;
  }
  if (!n.is_set() || is_function_template(n)) return;
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto& c = n.children()[i];
    Path p = here;
    p.push_back(c.label.is_positional() ? Segment::ordinal(i) : Segment::label(c.label.name()));
    collect_matches(c.node, p, lhs, out);
  }
}

}  // namespace

void Interpreter::run_rewrite(std::span<const Formula> rules, Node& frame, const Scope& s) {
  if (!frame.is_set() || frame.has_op()) throw Error(ErrorCode::NotASet, "rewrite frame must be a plain set");
  for (;;) {
    for (auto& c : frame.children())
      if (!is_reserved_scan_label(c.label)) reduce_ready(c.node, s);

    bool fired = false;
    for (std::size_t f = 0; f < rules.size() && !fired; ++f) {
      std::vector<Site> sites;
      for (std::size_t i = 0; i < frame.size(); ++i) {
        auto& c = frame.children()[i];
        if (is_reserved_scan_label(c.label)) continue;
        Path p;
        p.push_back(c.label.is_positional() ? Segment::ordinal(i) : Segment::label(c.label.name()));
        collect_matches(c.node, p, rules[f].lhs, sites);
      }
      for (auto& site : sites) {
        std::ostringstream line;
        line << "step=" << m_.counters_.transitions << " depth=" << m_.call_depth_ << " mode=rewrite formula="
             << f + 1 << " at=" << site.path.to_string();
        trace(line.str());
        spend();
        *site.node = substitute(rules[f].rhs, site.binding);
        ++m_.counters_.formula_firings;
        ++m_.counters_.transitions;
        fired = true;
      }
    }
    if (!fired) return;
  }
}

}  // namespace detail

}  // namespace evocat
