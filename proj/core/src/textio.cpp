#include "evocat/textio.hpp"

#include <cstdint>

namespace evocat::textio {

namespace {

constexpr std::size_t kMaxDepth = 512;

bool is_printable(char32_t cp) {
  if (cp == U'\n' || cp == U'\t') return true;
  if (cp < 0x20 || (cp >= 0x7F && cp < 0xA0)) return false;
  if (cp >= 0xD800 && cp <= 0xDFFF) return false;
  return cp <= 0x10FFFF;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || is_digit(c); }

class Parser {
 public:
  Parser(std::string_view src, Dialect dialect) : src_(src), dialect_(dialect) {}

  Node parse_tree() {
    Node root;
    parse_entries(root, dialect_ == Dialect::Pattern, 0, /*closing=*/false);
    return root;
  }

  Node parse_single() {
    skip_space();
    const bool vars = dialect_ == Dialect::Pattern;
    if (peek() == '=') advance();
    skip_space();
    Node n = (peek() == ':' || peek() == '{') ? parse_body(vars, 0) : parse_scalar(vars);
    skip_space();
    if (!at_end()) fail("unexpected trailing input");
    return n;
  }

 private:
  std::string_view src_;
  Dialect dialect_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::SyntaxError) const {
    throw ParseError(code, line_, col_, msg);
  }

  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (!at_end()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  std::string identifier() {
    if (!ident_start(peek())) fail("expected identifier");
    std::size_t start = pos_;
    while (!at_end() && ident_char(peek())) advance();
    return std::string(src_.substr(start, pos_ - start));
  }

  std::string digits() {
    if (!is_digit(peek())) fail("expected natural number");
    std::size_t start = pos_;
    while (!at_end() && is_digit(peek())) advance();
    // Leading zeros would make the Natural constructor read octal.
    std::string_view d = src_.substr(start, pos_ - start);
    while (d.size() > 1 && d.front() == '0') d.remove_prefix(1);
    return std::string(d);
  }

  std::size_t small_nat() {
    std::string d = digits();
    if (d.size() > 18) fail("ordinal too large");
    return static_cast<std::size_t>(std::stoull(d));
  }

  void parse_entries(Node& parent, bool vars_allowed, std::size_t depth, bool closing) {
    bool select_operands = parent.has_op() && parent.op() == "select";
    while (true) {
      skip_space();
      if (at_end()) {
        if (closing) fail("unterminated '{'");
        return;
      }
      if (peek() == '}') {
        if (!closing) fail("unexpected '}'");
        return;
      }
      std::size_t line = line_;
      std::size_t col = col_;
      Label label;
      if (peek() == '#') {
        advance();
        std::size_t k = small_nat();
        if (k != parent.size())
          throw ParseError(ErrorCode::SyntaxError, line, col,
                           "positional label #" + std::to_string(k) + " at position " +
                               std::to_string(parent.size()));
      } else {
        label = Label(identifier());
        if (parent.find(label.name()))
          throw ParseError(ErrorCode::DuplicateSibling, line, col,
                           "duplicate sibling label '" + label.name() + "'");
      }
      bool child_vars = vars_allowed || label.name() == "rules" ||
                        (select_operands && parent.size() == 1);
      Node child = parse_body(child_vars, depth + 1);
      parent.children().push_back(Child{std::move(label), std::move(child)});
    }
  }

  void check_var(bool vars_allowed) const {
    if (!vars_allowed)
      fail("pattern variables are only allowed inside rules", ErrorCode::VariablesOutsideRules);
  }

  // Natural, string, reference or variable: what may follow '='.
  Node parse_scalar(bool vars_allowed) {
    skip_space();
    char c = peek();
    if (is_digit(c)) return Node::leaf(Natural(digits()));
    if (c == '"') return parse_string();
    if (c == '[') {
      advance();
      Path p = parse_path();
      expect(']');
      return Node::reference(std::move(p));
    }
    if (c == '$') {
      check_var(vars_allowed);
      advance();
      return Node::variable(identifier());
    }
    fail("expected a natural, string, reference or variable after '='");
  }

  Node parse_body(bool vars_allowed, std::size_t depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    skip_space();
    char c = peek();
    if (c == '=') {
      advance();
      return parse_scalar(vars_allowed);
    }
    Node n;
    if (c == ':') {
      advance();
      skip_space();
      if (peek() == '$') {
        check_var(vars_allowed);
        advance();
        n.set_op("$" + identifier());
      } else {
        n.set_op(identifier());
      }
      skip_space();
    }
    if (peek() != '{') fail("expected '{' or '='");
    advance();
    parse_entries(n, vars_allowed, depth, /*closing=*/true);
    advance();  // '}'
    return n;
  }

  Path parse_path() {
    Path p;
    while (true) {
      skip_space();
      if (peek() == '#') {
        advance();
        p.push_back(Segment::ordinal(small_nat()));
      } else {
        p.push_back(Segment::label(identifier()));
      }
      skip_space();
      if (peek() != '.') break;
      advance();
    }
    return p;
  }

  Node parse_string() {
    advance();  // opening quote
    std::string bytes;
    while (true) {
      if (at_end()) fail("unterminated string");
      char c = advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) fail("unterminated string");
        char e = advance();
        switch (e) {
          case '"': bytes += '"'; break;
          case '\\': bytes += '\\'; break;
          case 'n': bytes += '\n'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
        continue;
      }
      bytes += c;
    }
    auto text = decode_utf8(bytes);
    if (!text) fail("string is not valid UTF-8");
    return make_string(*text);
  }
};

void indent(std::string& out, std::size_t depth) { out.append(depth * 2, ' '); }

std::string quote(std::u32string_view text) {
  std::string out = "\"";
  for (char32_t cp : text) {
    if (cp == U'"') {
      out += "\\\"";
    } else if (cp == U'\\') {
      out += "\\\\";
    } else if (cp == U'\n') {
      out += "\\n";
    } else {
      out += encode_utf8(std::u32string_view(&cp, 1));
    }
  }
  out += '"';
  return out;
}

void print_body(std::string& out, const Node& n, std::size_t depth);

void print_entries(std::string& out, const Node& n, std::size_t depth) {
  const auto& kids = n.children();
  for (std::size_t i = 0; i < kids.size(); ++i) {
    indent(out, depth);
    if (kids[i].label.is_positional()) {
      out += '#';
      out += std::to_string(i);
    } else {
      out += kids[i].label.name();
    }
    print_body(out, kids[i].node, depth);
    out += '\n';
  }
}

void print_body(std::string& out, const Node& n, std::size_t depth) {
  switch (n.kind()) {
    case NodeKind::Leaf: out += " = " + n.value().str(); return;
    case NodeKind::Ref: out += " = [" + n.ref_path().to_string() + "]"; return;
    case NodeKind::Var: out += " = $" + n.var_name(); return;
    case NodeKind::Hole: out += " = ?" + std::to_string(n.hole_index()); return;
    case NodeKind::Set: break;
  }
  if (!n.has_op()) {
    if (auto s = string_of(n)) {
      out += " = " + quote(*s);
      return;
    }
  } else {
    out += " : " + n.op();
  }
  if (n.size() == 0) {
    out += " {}";
    return;
  }
  out += " {\n";
  print_entries(out, n, depth + 1);
  indent(out, depth);
  out += '}';
}

}  // namespace

StateTree parse(std::string_view source, Dialect dialect) {
  Parser p(source, dialect);
  return StateTree(p.parse_tree());
}

Node parse_value(std::string_view source, Dialect dialect) {
  Parser p(source, dialect);
  return p.parse_single();
}

std::string print(const Node& root) {
  if (!root.is_set() || root.has_op()) return print_value(root) + "\n";
  std::string out;
  print_entries(out, root, 0);
  return out;
}

std::string print(const StateTree& tree) { return print(tree.root()); }

std::string print_value(const Node& value) {
  std::string out;
  print_body(out, value, 0);
  // print_body emits the separator that follows a label.
  if (out.starts_with(" = ")) return out.substr(3);
  if (out.starts_with(" ")) return out.substr(1);
  return out;
}

Node make_string(std::u32string_view text) {
  Node n;
  for (char32_t cp : text) n.children().push_back(Child{Label::positional(), Node::leaf(static_cast<std::uint32_t>(cp))});
  return n;
}

Node make_string_utf8(std::string_view utf8) {
  auto text = decode_utf8(utf8);
  if (!text) throw Error(ErrorCode::NotEncodable, "invalid UTF-8");
  return make_string(*text);
}

std::optional<std::u32string> string_of(const Node& node) {
  if (!node.is_set() || node.has_op() || node.size() == 0) return std::nullopt;
  std::u32string out;
  out.reserve(node.size());
  for (const auto& c : node.children()) {
    if (!c.label.is_positional() || !c.node.is_leaf()) return std::nullopt;
    const Natural& v = c.node.value();
    if (v > 0x10FFFF) return std::nullopt;
    auto cp = static_cast<char32_t>(v.convert_to<std::uint32_t>());
    if (!is_printable(cp)) return std::nullopt;
    out.push_back(cp);
  }
  return out;
}

std::optional<std::string> utf8_string_of(const Node& node) {
  auto s = string_of(node);
  if (!s) return std::nullopt;
  return encode_utf8(*s);
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  for (char32_t cp : text) {
    auto c = static_cast<std::uint32_t>(cp);
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

std::optional<std::u32string> decode_utf8(std::string_view bytes) {
  std::u32string out;
  std::size_t i = 0;
  while (i < bytes.size()) {
    auto b0 = static_cast<unsigned char>(bytes[i]);
    std::size_t len;
    std::uint32_t cp;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      return std::nullopt;
    }
    if (i + len > bytes.size()) return std::nullopt;
    for (std::size_t k = 1; k < len; ++k) {
      auto b = static_cast<unsigned char>(bytes[i + k]);
      if ((b & 0xC0) != 0x80) return std::nullopt;
      cp = (cp << 6) | (b & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range values are rejected.
    static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return std::nullopt;
    out.push_back(static_cast<char32_t>(cp));
    i += len;
  }
  return out;
}

}  // namespace evocat::textio
