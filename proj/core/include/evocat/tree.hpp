#pragma once

// The state tree: labeled ordered children, natural-number leaves, path
// addressing and destructive subtree replacement.

#include "evocat/error.hpp"
#include "evocat/natural.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace evocat {

bool is_identifier(std::string_view text);

/// Edge label. A named label is an identifier; a positional label has no
/// name and is addressed (and printed) by the child's current position.
class Label {
 public:
  Label() = default;
  explicit Label(std::string name);

  static Label positional() { return Label(); }

  bool is_positional() const noexcept { return name_.empty(); }
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::string name_;
};

/// One step of a path: a child label or an ordinal `#k`.
class Segment {
 public:
  static Segment label(std::string name);
  static Segment ordinal(std::size_t index);

  bool is_ordinal() const noexcept { return std::holds_alternative<std::size_t>(value_); }
  const std::string& name() const { return std::get<std::string>(value_); }
  std::size_t index() const { return std::get<std::size_t>(value_); }

  std::string to_string() const;

  friend bool operator==(const Segment&, const Segment&) = default;

 private:
  explicit Segment(std::variant<std::string, std::size_t> v) : value_(std::move(v)) {}
  std::variant<std::string, std::size_t> value_;
};

/// An address arrow. The empty path is the identity.
class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Segment> segments) : segments_(std::move(segments)) {}

  // Accepts "a.b.#2"; "" and "." are the identity.
  static Path parse(std::string_view text);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  std::size_t size() const noexcept { return segments_.size(); }
  bool empty() const noexcept { return segments_.empty(); }
  const Segment& operator[](std::size_t i) const { return segments_[i]; }
  const Segment& back() const { return segments_.back(); }
  auto begin() const { return segments_.begin(); }
  auto end() const { return segments_.end(); }

  Path parent() const;
  Path prefix(std::size_t n) const;
  Path suffix(std::size_t from) const;
  Path& push_back(Segment s);
  bool has_ordinal() const;
  bool starts_with(const Path& prefix) const;

  std::string to_string() const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  std::vector<Segment> segments_;
};

/// Concatenation: resolve(n, compose(f, g)) == resolve(resolve(n, f), g).
Path compose(const Path& f, const Path& g);

/// Longest common prefix (the product in the address order). Throws
/// OrdinalInMeet when either path carries an ordinal segment.
Path meet(const Path& e, const Path& c);

enum class NodeKind : std::uint8_t {
  Set,   // ordered labeled children; an op makes it an operation term
  Leaf,  // natural number
  Ref,   // reference term [path]
  Var,   // pattern variable $X (rules and patterns only)
  Hole,  // placeholder inside a function-variable abstraction
};

struct Child;

class Node {
 public:
  Node() = default;

  static Node set();
  static Node leaf(Natural value);
  static Node term(std::string op);
  static Node reference(Path path);
  static Node variable(std::string name);
  static Node hole(std::size_t index);

  NodeKind kind() const noexcept { return kind_; }
  bool is_set() const noexcept { return kind_ == NodeKind::Set; }
  bool is_leaf() const noexcept { return kind_ == NodeKind::Leaf; }
  bool is_ref() const noexcept { return kind_ == NodeKind::Ref; }
  bool is_var() const noexcept { return kind_ == NodeKind::Var; }
  bool is_hole() const noexcept { return kind_ == NodeKind::Hole; }
  bool has_op() const noexcept { return kind_ == NodeKind::Set && !text_.empty(); }
  bool is_term() const noexcept { return has_op() || is_ref(); }
  // Operation identifier of the form $F: a function-variable application.
  bool is_function_var() const noexcept { return has_op() && text_.front() == '$'; }

  const Natural& value() const;
  const std::string& op() const;
  const Path& ref_path() const;
  const std::string& var_name() const;
  std::size_t hole_index() const;

  void set_op(std::string op);
  void clear_op();

  std::vector<Child>& children() noexcept { return children_; }
  const std::vector<Child>& children() const noexcept { return children_; }
  std::size_t size() const noexcept;

  Node* find(std::string_view label);
  const Node* find(std::string_view label) const;
  std::optional<std::size_t> index_of(std::string_view label) const;
  Node* child(const Segment& s);
  const Node* child(const Segment& s) const;
  Node& at(std::size_t k);
  const Node& at(std::size_t k) const;

  // Appends; named labels must be fresh among siblings (DuplicateSibling).
  Node& append(Label label, Node node);
  // Replaces the child with that label, or appends it.
  Node& put(const std::string& label, Node node);
  void erase(std::size_t k);

  // True when no term, variable or hole occurs anywhere below.
  bool is_ground() const;

  friend bool operator==(const Node& a, const Node& b);

 private:
  NodeKind kind_ = NodeKind::Set;
  Natural value_{};
  std::string text_;  // op for Set, name for Var
  Path path_;
  std::size_t hole_ = 0;
  std::vector<Child> children_;
};

struct Child {
  Label label;
  Node node;

  friend bool operator==(const Child&, const Child&) = default;
};

inline Node Node::set() { return Node(); }
inline std::size_t Node::size() const noexcept { return children_.size(); }

/// Structural, child-order-sensitive equality.
bool struct_eq(const Node& a, const Node& b);

const Node* resolve(const Node& context, const Path& path);
Node* resolve(Node& context, const Path& path);

/// Replaces the subtree at `at`, or appends it under an existing parent
/// when only the final segment is missing. The empty path replaces the
/// whole tree.
void replace_subtree(Node& root, const Path& at, Node replacement);

/// Removes the child at `at`. Returns false when nothing was there.
bool remove_subtree(Node& root, const Path& at);

class StateTree {
 public:
  StateTree() = default;
  explicit StateTree(Node root) : root_(std::move(root)) {}

  Node& root() noexcept { return root_; }
  const Node& root() const noexcept { return root_; }

  const Node* resolve(const Path& p) const { return evocat::resolve(root_, p); }
  Node* resolve(const Path& p) { return evocat::resolve(root_, p); }
  void replace(const Path& at, Node n) { replace_subtree(root_, at, std::move(n)); }

  friend bool operator==(const StateTree& a, const StateTree& b) { return a.root_ == b.root_; }

 private:
  Node root_;
};

/// A subtree treated as a machine of its own: paths resolve relative to
/// its root and replacements write through to the enclosing tree.
class SubtreeView {
 public:
  SubtreeView(StateTree& tree, Path base);

  Node& root() const;
  const Path& base() const noexcept { return base_; }
  StateTree& tree() const noexcept { return *tree_; }

  Node* resolve(const Path& p) const;
  void replace(const Path& at, Node n) const;
  SubtreeView view(const Path& p) const;

 private:
  StateTree* tree_;
  Path base_;
};

/// Throws PathUnresolvable, or NotASet when the target is not a set node.
SubtreeView subtree_view(StateTree& tree, const Path& at);

}  // namespace evocat
