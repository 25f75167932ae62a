#include "interpreter.hpp"

#include "evocat/algebra.hpp"

namespace evocat {

bool is_function_template(const Node& node) {
  if (!node.is_set() || node.has_op()) return false;
  const Node* args = node.find("args");
  const Node* mode = node.find("mode");
  if (!args || !args->is_set() || args->has_op() || !mode || !mode->is_leaf()) return false;
  if (mode->value() == 0) return node.find("body") != nullptr;
  if (mode->value() == 1) return node.find("rules") != nullptr;
  return false;
}

namespace detail {

namespace {

bool is_placeholder(const Node& n) { return n.is_set() && !n.has_op() && n.size() == 0; }

}  // namespace

void Interpreter::assign_operands(Node& instance, const std::vector<Child>& operands) const {
  Node* args = instance.find("args");
  if (!args) throw Error(ErrorCode::NotATemplate, "instance has no args");
  for (std::size_t i = 0; i < operands.size(); ++i) {
    const auto& op = operands[i];
    Node* slot = nullptr;
    if (op.label.is_positional()) {
      if (i >= args->size())
        throw Error(ErrorCode::UnknownArgument, "operand #" + std::to_string(i) + " has no argument slot");
      slot = &args->at(i);
    } else {
      slot = args->find(op.label.name());
      if (!slot) throw Error(ErrorCode::UnknownArgument, "no argument slot '" + op.label.name() + "'");
    }
    *slot = op.node;
  }
}

Node Interpreter::invoke(Node& instance, const Scope& outer, const std::string& name) {
  if (!is_function_template(instance))
    throw Error(ErrorCode::NotATemplate, "'" + name + "' is not a function template");
  const Node& args = *instance.find("args");
  for (const auto& c : args.children())
    if (is_placeholder(c.node))
      throw Error(ErrorCode::MissingArgument,
                  "argument '" + (c.label.is_positional() ? std::string("#") : c.label.name()) + "' of '" + name +
                      "' is not set");

  DepthGuard guard(m_, nullptr);
  spend();
  ++m_.counters_.operation_firings;
  ++m_.call_depth_;
  struct CallDepth {
    std::size_t& d;
    ~CallDepth() { --d; }
  } restore{m_.call_depth_};

  Scope inner{&instance, &outer};
  const bool sequential = instance.find("mode")->value() == 0;
  if (sequential) {
    auto body = instructions_from(*instance.find("body"));
    run_sequential(body, instance, inner);
  } else {
    auto rules = formulas_from(*instance.find("rules"));
    run_rewrite(rules, instance, inner);
  }

  Node* result = instance.find("result");
  if (!result) throw Error(ErrorCode::PathUnresolvable, "'" + name + "' produced no result");
  if (sequential && !result->is_ground()) eval_in_place(*result, inner);
  return std::move(*result);
}

bool Interpreter::heap_less(Node& heap, const Node& a, const Node& b, const Scope& s) {
  Node* compare = heap.find("compare");
  try {
    if (!compare) return algebra::as_bool(algebra::nat_compare(algebra::CmpOp::Lt, a, b));
    Node instance = *compare;
    std::vector<Child> operands{{Label(), a}, {Label(), b}};
    assign_operands(instance, operands);
    Scope heap_scope{&heap, &s};
    return algebra::as_bool(invoke(instance, heap_scope, "compare"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::FuelExhausted) throw;
    throw Error(ErrorCode::CompareFailed, e.message());
  }
}

void Interpreter::heap_put(Node& heap, Node item, const Scope& s) {
  Node* data = heap.find("data");
  if (!data || !data->is_set() || data->has_op()) throw Error(ErrorCode::NotASet, "heap has no data set");
  spend();
  data->append(Label(), std::move(item));
  std::size_t i = data->size() - 1;
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    data = heap.find("data");
    if (!heap_less(heap, data->at(i), data->at(parent), s)) break;
    data = heap.find("data");
    std::swap(data->at(i), data->at(parent));
    i = parent;
  }
}

Node Interpreter::heap_get(Node& heap, const Scope& s) {
  Node* data = heap.find("data");
  if (!data || !data->is_set() || data->has_op()) throw Error(ErrorCode::NotASet, "heap has no data set");
  if (data->size() == 0) throw Error(ErrorCode::EmptyHeap, "heap is empty");
  spend();
  Node top = std::move(data->at(0));
  const std::size_t last = data->size() - 1;
  if (last > 0) data->at(0) = std::move(data->at(last));
  data->erase(last);

  std::size_t i = 0;
  for (;;) {
    data = heap.find("data");
    const std::size_t n = data->size();
    std::size_t best = i;
    const std::size_t l = 2 * i + 1, r = 2 * i + 2;
    if (l < n && heap_less(heap, heap.find("data")->at(l), heap.find("data")->at(best), s)) best = l;
    if (r < n && heap_less(heap, heap.find("data")->at(r), heap.find("data")->at(best), s)) best = r;
    if (best == i) break;
    data = heap.find("data");
    std::swap(data->at(i), data->at(best));
    i = best;
  }
  return top;
}

}  // namespace detail

}  // namespace evocat
