#include "evocat/tree.hpp"

#include <algorithm>

namespace evocat {

namespace {

bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}

bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(), ident_char);
}

Label::Label(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_)) throw Error(ErrorCode::SyntaxError, "invalid label '" + name_ + "'");
}

// --- Segment / Path ---------------------------------------------------------

Segment Segment::label(std::string name) {
  if (!is_identifier(name)) throw Error(ErrorCode::SyntaxError, "invalid path segment '" + name + "'");
  return Segment(std::move(name));
}

Segment Segment::ordinal(std::size_t index) { return Segment(index); }

std::string Segment::to_string() const {
  return is_ordinal() ? "#" + std::to_string(index()) : name();
}

Path Path::parse(std::string_view text) {
  Path p;
  if (text.empty() || text == ".") return p;
  std::size_t start = 0;
  while (true) {
    auto dot = text.find('.', start);
    auto seg = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    if (!seg.empty() && seg.front() == '#') {
      auto digits = seg.substr(1);
      if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
          digits.size() > 18)
        throw Error(ErrorCode::SyntaxError, "invalid ordinal segment '" + std::string(seg) + "'");
      p.segments_.push_back(Segment::ordinal(std::stoull(std::string(digits))));
    } else {
      p.segments_.push_back(Segment::label(std::string(seg)));
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return p;
}

Path Path::parent() const {
  if (segments_.empty()) return *this;
  return prefix(segments_.size() - 1);
}

Path Path::prefix(std::size_t n) const {
  n = std::min(n, segments_.size());
  return Path(std::vector<Segment>(segments_.begin(), segments_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Path Path::suffix(std::size_t from) const {
  from = std::min(from, segments_.size());
  return Path(std::vector<Segment>(segments_.begin() + static_cast<std::ptrdiff_t>(from), segments_.end()));
}

Path& Path::push_back(Segment s) {
  segments_.push_back(std::move(s));
  return *this;
}

bool Path::has_ordinal() const {
  return std::any_of(segments_.begin(), segments_.end(), [](const Segment& s) { return s.is_ordinal(); });
}

bool Path::starts_with(const Path& prefix) const {
  return prefix.size() <= size() && std::equal(prefix.begin(), prefix.end(), begin());
}

std::string Path::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (i) out += '.';
    out += segments_[i].to_string();
  }
  return out;
}

Path compose(const Path& f, const Path& g) {
  std::vector<Segment> segs = f.segments();
  segs.insert(segs.end(), g.begin(), g.end());
  return Path(std::move(segs));
}

Path meet(const Path& e, const Path& c) {
  if (e.has_ordinal() || c.has_ordinal())
    throw Error(ErrorCode::OrdinalInMeet, "meet of '" + e.to_string() + "' and '" + c.to_string() + "'");
  auto [ei, ci] = std::mismatch(e.begin(), e.end(), c.begin(), c.end());
  return e.prefix(static_cast<std::size_t>(ei - e.begin()));
}

// --- Node -------------------------------------------------------------------

Node Node::leaf(Natural value) {
  if (value < 0) throw Error(ErrorCode::NotALeaf, "negative leaf value");
  Node n;
  n.kind_ = NodeKind::Leaf;
  n.value_ = std::move(value);
  return n;
}

Node Node::term(std::string op) {
  Node n;
  n.set_op(std::move(op));
  return n;
}

Node Node::reference(Path path) {
  Node n;
  n.kind_ = NodeKind::Ref;
  n.path_ = std::move(path);
  return n;
}

Node Node::variable(std::string name) {
  Node n;
  n.kind_ = NodeKind::Var;
  n.text_ = std::move(name);
  return n;
}

Node Node::hole(std::size_t index) {
  Node n;
  n.kind_ = NodeKind::Hole;
  n.hole_ = index;
  return n;
}

const Natural& Node::value() const {
  if (kind_ != NodeKind::Leaf) throw Error(ErrorCode::NotALeaf, "node is not a leaf");
  return value_;
}

const std::string& Node::op() const { return text_; }

const Path& Node::ref_path() const { return path_; }

const std::string& Node::var_name() const { return text_; }

std::size_t Node::hole_index() const { return hole_; }

void Node::set_op(std::string op) {
  if (kind_ != NodeKind::Set) throw Error(ErrorCode::NotASet, "only set nodes carry operations");
  text_ = std::move(op);
}

void Node::clear_op() {
  if (kind_ == NodeKind::Set) text_.clear();
}

Node* Node::find(std::string_view label) {
  for (auto& c : children_)
    if (c.label.name() == label) return &c.node;
  return nullptr;
}

const Node* Node::find(std::string_view label) const {
  return const_cast<Node*>(this)->find(label);
}

std::optional<std::size_t> Node::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < children_.size(); ++i)
    if (children_[i].label.name() == label) return i;
  return std::nullopt;
}

Node* Node::child(const Segment& s) {
  if (kind_ != NodeKind::Set) return nullptr;
  if (s.is_ordinal()) return s.index() < children_.size() ? &children_[s.index()].node : nullptr;
  return find(s.name());
}

const Node* Node::child(const Segment& s) const { return const_cast<Node*>(this)->child(s); }

Node& Node::at(std::size_t k) { return children_.at(k).node; }

const Node& Node::at(std::size_t k) const { return children_.at(k).node; }

Node& Node::append(Label label, Node node) {
  if (kind_ != NodeKind::Set) throw Error(ErrorCode::NotASet, "cannot add children to a non-set node");
  if (!label.is_positional() && find(label.name()))
    throw Error(ErrorCode::DuplicateSibling, "duplicate sibling label '" + label.name() + "'");
  children_.push_back(Child{std::move(label), std::move(node)});
  return children_.back().node;
}

Node& Node::put(const std::string& label, Node node) {
  if (Node* existing = find(label)) {
    *existing = std::move(node);
    return *existing;
  }
  return append(Label(label), std::move(node));
}

void Node::erase(std::size_t k) {
  children_.erase(children_.begin() + static_cast<std::ptrdiff_t>(k));
}

bool Node::is_ground() const {
  switch (kind_) {
    case NodeKind::Leaf: return true;
    case NodeKind::Ref:
    case NodeKind::Var:
    case NodeKind::Hole: return false;
    case NodeKind::Set:
      if (!text_.empty()) return false;
      return std::all_of(children_.begin(), children_.end(), [](const Child& c) { return c.node.is_ground(); });
  }
  return false;
}

bool operator==(const Node& a, const Node& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case NodeKind::Leaf: return a.value_ == b.value_;
    case NodeKind::Ref: return a.path_ == b.path_;
    case NodeKind::Var: return a.text_ == b.text_;
    case NodeKind::Hole: return a.hole_ == b.hole_;
    case NodeKind::Set: return a.text_ == b.text_ && a.children_ == b.children_;
  }
  return false;
}

bool struct_eq(const Node& a, const Node& b) { return a == b; }

const Node* resolve(const Node& context, const Path& path) {
  const Node* cur = &context;
  for (const auto& seg : path) {
    cur = cur->child(seg);
    if (!cur) return nullptr;
  }
  return cur;
}

Node* resolve(Node& context, const Path& path) {
  return const_cast<Node*>(resolve(static_cast<const Node&>(context), path));
}

void replace_subtree(Node& root, const Path& at, Node replacement) {
  if (at.empty()) {
    root = std::move(replacement);
    return;
  }
  Node* parent = resolve(root, at.parent());
  if (!parent) throw Error(ErrorCode::PathUnresolvable, "no parent node for '" + at.to_string() + "'");
  if (!parent->is_set())
    throw Error(ErrorCode::NotASet, "parent of '" + at.to_string() + "' is not a set node");
  const Segment& last = at.back();
  if (Node* target = parent->child(last)) {
    *target = std::move(replacement);
    return;
  }
  if (last.is_ordinal()) {
    if (last.index() != parent->size())
      throw Error(ErrorCode::PathUnresolvable, "ordinal out of range in '" + at.to_string() + "'");
    parent->append(Label::positional(), std::move(replacement));
  } else {
    parent->append(Label(last.name()), std::move(replacement));
  }
}

bool remove_subtree(Node& root, const Path& at) {
  if (at.empty()) return false;
  Node* parent = resolve(root, at.parent());
  if (!parent || !parent->is_set()) return false;
  const Segment& last = at.back();
  if (last.is_ordinal()) {
    if (last.index() >= parent->size()) return false;
    parent->erase(last.index());
    return true;
  }
  auto idx = parent->index_of(last.name());
  if (!idx) return false;
  parent->erase(*idx);
  return true;
}

// --- SubtreeView ------------------------------------------------------------

SubtreeView::SubtreeView(StateTree& tree, Path base) : tree_(&tree), base_(std::move(base)) {}

Node& SubtreeView::root() const {
  Node* n = tree_->resolve(base_);
  if (!n) throw Error(ErrorCode::PathUnresolvable, "view root '" + base_.to_string() + "' no longer exists");
  return *n;
}

Node* SubtreeView::resolve(const Path& p) const { return evocat::resolve(root(), p); }

void SubtreeView::replace(const Path& at, Node n) const { replace_subtree(root(), at, std::move(n)); }

SubtreeView SubtreeView::view(const Path& p) const { return subtree_view(*tree_, compose(base_, p)); }

SubtreeView subtree_view(StateTree& tree, const Path& at) {
  Node* n = tree.resolve(at);
  if (!n) throw Error(ErrorCode::PathUnresolvable, "no node at '" + at.to_string() + "'");
  if (!n->is_set()) throw Error(ErrorCode::NotASet, "'" + at.to_string() + "' is not a set node");
  return SubtreeView(tree, at);
}

}  // namespace evocat
