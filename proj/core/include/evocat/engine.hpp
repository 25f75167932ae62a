#pragma once

// Program forms for the two execution disciplines, and the pattern
// matcher used by term rewriting.
//
// Instruction entries (sequential bodies), each `#k { ... }`:
//   at = [p]  to <body>      evaluate <body>, write it at p
//   at = [p]  call = [q]     run the function instance at q in place, copy
//                            its result to p
//   at = [h]  put <body>     insert the value into the heap appliance at h
//   at = [p]  get = [h]      remove the top of heap h, write it at p
//
// Formula entries (rewrite rules), each `#k { lhs <pattern> rhs <template> }`.

#include "evocat/tree.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace evocat {

enum class InstructionKind { Assign, Call, Put, Get };

struct Instruction {
  InstructionKind kind = InstructionKind::Assign;
  Path at;
  Node term;    // Assign, Put
  Path source;  // Call, Get
};

/// Throws InvalidInstruction.
Instruction instruction_from_node(const Node& entry);
std::vector<Instruction> instructions_from(const Node& body);

struct Formula {
  Node lhs;
  Node rhs;
};

/// Throws InvalidFormula when the rhs uses a variable the lhs does not
/// bind, or a function variable is applied to anything other than
/// distinct first-order variables bound elsewhere in the lhs (or ground
/// literals).
Formula formula_from_node(const Node& entry);
std::vector<Formula> formulas_from(const Node& rules);

/// A one-or-more-hole abstraction: `body` with Hole(i) standing for the
/// i-th argument.
struct Abstraction {
  Node body;
  std::size_t arity = 0;
};

struct Binding {
  std::map<std::string, Node> vars;
  std::map<std::string, Abstraction> functions;
};

/// Matches pattern p against subject t. First-order variables bind any
/// subtree; repeated variables must bind struct_eq subtrees; children are
/// matched positionally with equal labels and arity. A function-variable
/// application `: $F { #0 = $X ... }` binds F to t with the values of its
/// arguments abstracted into holes.
std::optional<Binding> match(const Node& pattern, const Node& subject);

/// Throws UnboundVariable; ArityMismatch when a function variable is
/// applied to the wrong number of arguments.
Node substitute(const Node& tmpl, const Binding& binding);

Node apply_abstraction(const Abstraction& f, std::span<const Node> args);

}  // namespace evocat
