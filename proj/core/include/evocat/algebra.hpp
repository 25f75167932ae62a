#pragma once

// Operations of the term algebra. Every function here is pure: it takes
// fully evaluated value trees and returns a new one.

#include "evocat/tree.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string_view>

namespace evocat::algebra {

enum class NatOp { Min, Max, Monus };
enum class BoolOp { And, Or, Not, Implies };
enum class CmpOp { Eq, Le, Lt };

/// Built-in operation identifiers, as spelled in term labels.
enum class Builtin {
  Prod, Sum, Pair, If, Min, Max, Monus, Rem, And, Or, Not, Implies, Eq, Le, Lt, Select, SetEq,
};

std::optional<Builtin> builtin_from_name(std::string_view op);
std::string_view builtin_name(Builtin b);

Node make_bool(bool b);
// Throws NotBoolean unless v is a leaf 0 or 1.
bool as_bool(const Node& v);

/// Leaves: arithmetic product. Sets: all pairs {fst snd} in lexicographic
/// order of operand positions, labeled p0, p1, ...
Node product(const Node& a, const Node& b);

/// Leaves: arithmetic sum. Sets: children of a then of b, relabeled
/// positionally; duplicates are kept.
Node coproduct(const Node& a, const Node& b);

/// {fst=f snd=g}
Node pair(const Node& f, const Node& g);

const Node& if_arrow(const Node& cond, const Node& f, const Node& g);

Node nat_lattice(NatOp op, const Node& a, const Node& b);

/// a mod b; DivisionByZero when b is 0.
Node remainder(const Node& a, const Node& b);

/// Arity 1 for Not, 2 otherwise.
Node bool_lattice(BoolOp op, std::span<const Node> args);

Node nat_compare(CmpOp op, const Node& a, const Node& b);

/// Pullback along true: the children of m (labels and order preserved)
/// for which the predicate holds.
Node select(const Node& m, const std::function<bool(const Node&)>& predicate);

Node set_eq(const Node& a, const Node& b);

}  // namespace evocat::algebra
