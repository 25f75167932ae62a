#pragma once

#include "evocat/engine.hpp"
#include "evocat/machine.hpp"

#include <string>
#include <vector>

namespace evocat::detail {

// Evaluation and call nesting beyond this is reported as FuelExhausted
// rather than risking the native stack.
inline constexpr std::size_t kMaxDepth = 2000;

// A frame in which references and template names are looked up, with the
// scope it was entered from. Frames are set nodes whose address stays
// fixed while the scope is live: writes only go below the innermost frame.
struct Scope {
  Node* frame;
  const Scope* outer;
};

// Scopes for every node along a path, innermost last.
class ScopeChain {
 public:
  ScopeChain(Node& base, const Path& path, const Scope* outer);
  ScopeChain(const ScopeChain&) = delete;
  ScopeChain& operator=(const ScopeChain&) = delete;

  const Scope& innermost() const { return scopes_.back(); }

 private:
  std::vector<Scope> scopes_;
};

class Interpreter {
 public:
  explicit Interpreter(Machine& m) : m_(m) {}

  // evaluator.cpp
  void eval_in_place(Node& n, const Scope& s);
  Node eval_detached(const Node& n, const Scope& s);
  Node deref(const Path& p, const Scope& s);

  struct Found {
    Node* node = nullptr;
    const Scope* scope = nullptr;
  };
  // The first segment is looked up innermost-first; the rest descends
  // from wherever it was found.
  Found lookup(const Path& p, const Scope& s) const;
  Node* find_template(const std::string& op, const Scope& s) const;

  const DeviceBinding* device_at(const Node* n) const;
  void spend(std::uint64_t n = 1);

  // engine.cpp
  void run_sequential(std::span<const Instruction> body, Node& frame, const Scope& s);
  void run_rewrite(std::span<const Formula> rules, Node& frame, const Scope& s);

  // templates.cpp
  Node invoke(Node& instance, const Scope& outer, const std::string& name);
  void assign_operands(Node& instance, const std::vector<Child>& operands) const;
  void heap_put(Node& heap, Node item, const Scope& s);
  Node heap_get(Node& heap, const Scope& s);

  Machine& machine() { return m_; }

 private:
  Machine& m_;

  Node apply_builtin(const Node& n);
  bool reduce_ready(Node& n, const Scope& s);
  void write_target(Node& frame, const Path& at, Node value);
  bool heap_less(Node& heap, const Node& a, const Node& b, const Scope& s);
  void trace(const std::string& line);

  friend class DepthGuard;
};

// Tracks recursion depth and the set of nodes under evaluation.
class DepthGuard {
 public:
  DepthGuard(Machine& m, const Node* in_progress);
  ~DepthGuard();
  DepthGuard(const DepthGuard&) = delete;
  DepthGuard& operator=(const DepthGuard&) = delete;

 private:
  Machine& m_;
  bool pushed_;
};

}  // namespace evocat::detail
