#include "evocat/machine.hpp"

#include "interpreter.hpp"

namespace evocat {

namespace {

Node& node_at(StateTree& tree, const Path& p) {
  Node* n = tree.resolve(p);
  if (!n) throw Error(ErrorCode::PathUnresolvable, "no node at '" + p.to_string() + "'");
  return *n;
}

}  // namespace

Machine::Machine(StateTree tree, std::uint64_t fuel) : tree_(std::move(tree)), fuel_(fuel) {}

Machine::~Machine() = default;

void Machine::attach_devices(std::shared_ptr<const DeviceTable> devices) {
  devices_ = std::move(devices);
  if (devices_) devices_->mount_into(tree_.root());
}

Node Machine::data_of(const Path& at) {
  detail::Interpreter in(*this);
  Node& n = node_at(tree_, at);
  if (const DeviceBinding* dev = in.device_at(&n)) return devices_->read(dev->mount);
  detail::ScopeChain chain(tree_.root(), at.parent(), nullptr);
  in.eval_in_place(n, chain.innermost());
  return n;
}

Node Machine::evaluate(const Node& term, const Path& frame) {
  detail::Interpreter in(*this);
  detail::ScopeChain chain(tree_.root(), frame, nullptr);
  return in.eval_detached(term, chain.innermost());
}

void Machine::run_sequential(const Node& body, const Path& frame) {
  auto instructions = instructions_from(body);
  run_sequential(std::span<const Instruction>(instructions), frame);
}

void Machine::run_sequential(std::span<const Instruction> body, const Path& frame) {
  detail::Interpreter in(*this);
  Node& f = node_at(tree_, frame);
  detail::ScopeChain chain(tree_.root(), frame, nullptr);
  in.run_sequential(body, f, chain.innermost());
}

void Machine::run_rewrite(const Node& rules, const Path& frame) {
  auto formulas = formulas_from(rules);
  run_rewrite(std::span<const Formula>(formulas), frame);
}

void Machine::run_rewrite(std::span<const Formula> rules, const Path& frame) {
  detail::Interpreter in(*this);
  Node& f = node_at(tree_, frame);
  detail::ScopeChain chain(tree_.root(), frame, nullptr);
  in.run_rewrite(rules, f, chain.innermost());
}

Node Machine::instantiate(const Path& template_path) { return node_at(tree_, template_path); }

Node Machine::call(const Path& instance) {
  detail::Interpreter in(*this);
  Node& inst = node_at(tree_, instance);
  Node v;
  {
    detail::ScopeChain chain(tree_.root(), instance.parent(), nullptr);
    v = in.invoke(inst, chain.innermost(), instance.to_string());
  }
  tree_.replace(instance, v);
  return v;
}

void Machine::heap_put(const Path& heap, Node item) {
  detail::Interpreter in(*this);
  Node& h = node_at(tree_, heap);
  detail::ScopeChain chain(tree_.root(), heap.parent(), nullptr);
  in.heap_put(h, std::move(item), chain.innermost());
}

Node Machine::heap_get(const Path& heap) {
  detail::Interpreter in(*this);
  Node& h = node_at(tree_, heap);
  detail::ScopeChain chain(tree_.root(), heap.parent(), nullptr);
  return in.heap_get(h, chain.innermost());
}

Node Machine::read_device(const Path& mount) {
  if (!devices_) throw Error(ErrorCode::UnboundDevice, "no devices attached");
  return devices_->read(mount);
}

void Machine::write_device(const Path& mount, const Node& value) {
  if (!devices_) throw Error(ErrorCode::UnboundDevice, "no devices attached");
  devices_->write(mount, value);
}

}  // namespace evocat
