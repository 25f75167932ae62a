#pragma once

// The textual state language (.evo files): a parser and a canonical
// printer. Grammar, informally:
//
//   tree   := entry*
//   entry  := LABEL body
//   body   := '=' NAT | '=' STRING | '=' '[' path ']' | '=' VAR
//           | (':' opid)? '{' tree '}'
//   opid   := IDENT | VAR
//   path   := seg ('.' seg)*        seg := IDENT | '#' NAT
//   LABEL  := IDENT | '#' NAT       (positional; must equal the position)
//
// `//` starts a comment running to end of line.

#include "evocat/tree.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace evocat::textio {

enum class Dialect {
  // `$` forms only inside `rules` subtrees and select predicates.
  State,
  // `$` forms allowed anywhere (patterns and templates under test).
  Pattern,
};

/// Throws ParseError (SyntaxError, DuplicateSibling, VariablesOutsideRules).
StateTree parse(std::string_view source, Dialect dialect = Dialect::State);

/// Parses a single body (the part after a label), e.g. `12`, `"hi"`,
/// `{ a = 1 }` or `: sum { ... }`. A leading '=' is optional.
Node parse_value(std::string_view source, Dialect dialect = Dialect::State);

/// Canonical form: two-space indentation, one entry per line, positional
/// labels as #k, string sugar where it applies.
std::string print(const StateTree& tree);
std::string print(const Node& root);

/// A single body as it would follow a label: `4`, `"ok"`, `[a.b]`, or a
/// braced block.
std::string print_value(const Node& value);

/// String sugar: a set of positional leaves holding code points.
Node make_string(std::u32string_view text);
Node make_string_utf8(std::string_view utf8);
/// Returns the text when every child is a positional leaf holding a
/// printable code point and there is at least one child.
std::optional<std::u32string> string_of(const Node& node);
std::optional<std::string> utf8_string_of(const Node& node);

std::string encode_utf8(std::u32string_view text);
/// Returns nullopt on malformed input.
std::optional<std::u32string> decode_utf8(std::string_view bytes);

}  // namespace evocat::textio
