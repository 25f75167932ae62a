// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <path-to-evocat-binary>

#include "evocat/algebra.hpp"
#include "evocat/machine.hpp"
#include "evocat/textio.hpp"

#include "oracles.hpp"
#include "programs.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace evocat;
namespace fs = std::filesystem;

namespace {

struct Failed {
  std::string reason;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failed{what};
}

template <class T>
std::string str(const T& v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

Path at(const char* p) { return Path::parse(p); }

Node L(std::uint64_t v) { return Node::leaf(v); }

Node set_of(const std::vector<std::uint64_t>& xs) {
  Node s;
  for (auto x : xs) s.append(Label(), L(x));
  return s;
}

std::string binary_path;

// 1 -----------------------------------------------------------------------------

void gcd_matches_euclid() {
  auto run = [](std::uint64_t a, std::uint64_t b, std::uint64_t& firings) {
    Machine m(evotest::load_stdlib());
    Node f = m.instantiate(at("gcd"));
    *f.find("args")->find("arg1") = L(a);
    *f.find("args")->find("arg2") = L(b);
    m.tree().root().put("call", std::move(f));
    Node r = m.call(at("call"));
    firings = m.counters().formula_firings;
    return r.value();
  };
  std::uint64_t firings = 0;
  expect(run(12, 8, firings) == 4, "gcd(12,8) != 4");
  expect(firings == 3, "gcd(12,8) fired " + str(firings) + " formulas");
  evotest::Rng rng(1001);
  for (int i = 0; i < 200; ++i) {
    std::uint64_t a = evotest::uniform(rng, 0, 999999);
    std::uint64_t b = evotest::uniform(rng, 0, a);
    auto oracle = evotest::euclid(a, b);
    Natural got = run(a, b, firings);
    expect(got == oracle.gcd, "gcd(" + str(a) + "," + str(b) + ") = " + str(got));
    expect(firings == oracle.iterations + 1, "gcd(" + str(a) + "," + str(b) + ") firing count " + str(firings));
  }
}

// 2 -----------------------------------------------------------------------------

void expressions_match_arithmetic() {
  evotest::Rng rng(2002);
  for (int i = 0; i < 500; ++i) {
    Node t = evotest::random_expression(rng, 6);
    auto expected = evotest::arithmetic(t);
    Machine m;
    if (expected) {
      expect(m.evaluate(t).value() == *expected, "mismatch on " + textio::print_value(t));
    } else {
      try {
        m.evaluate(t);
        expect(false, "no DivisionByZero on " + textio::print_value(t));
      } catch (const Error& e) {
        expect(e.code() == ErrorCode::DivisionByZero, e.what());
      }
    }
  }
  Machine m;
  Node lazy = textio::parse_value(": if { #0 = 1 #1 = 5 #2 : rem { #0 = 1 #1 = 0 } }");
  expect(m.evaluate(lazy).value() == 5, "if evaluated the poisoned branch");
  Node other = textio::parse_value(": if { #0 = 0 #1 : rem { #0 = 1 #1 = 0 } #2 = 7 }");
  expect(m.evaluate(other).value() == 7, "if evaluated the poisoned branch");
}

// 3 -----------------------------------------------------------------------------

void categorical_laws() {
  using namespace evocat::algebra;
  evotest::Rng rng(3003);
  for (int i = 0; i < 100; ++i) {
    std::vector<std::uint64_t> a(evotest::uniform(rng, 0, 8)), b(evotest::uniform(rng, 0, 8));
    for (auto& x : a) x = evotest::uniform(rng, 0, 3);
    for (auto& x : b) x = evotest::uniform(rng, 0, 3);
    Node p = product(set_of(a), set_of(b));
    Node s = coproduct(set_of(a), set_of(b));
    expect(p.size() == a.size() * b.size(), "|A x B| != |A||B|");
    expect(s.size() == a.size() + b.size(), "|A + B| != |A|+|B|");
    std::size_t k = 0;
    for (auto x : a)
      for (auto y : b) expect(struct_eq(p.at(k++), pair(L(x), L(y))), "product pair out of order");
    std::vector<std::uint64_t> joined = a;
    joined.insert(joined.end(), b.begin(), b.end());
    for (std::size_t j = 0; j < joined.size(); ++j) expect(s.at(j).value() == joined[j], "coproduct element");
  }
  Node f = L(10), g = L(20);
  expect(&if_arrow(L(1), f, g) == &f, "if_arrow(true)");
  expect(&if_arrow(L(0), f, g) == &g, "if_arrow(false)");
  try {
    if_arrow(L(2), f, g);
    expect(false, "if_arrow accepted 2");
  } catch (const Error& e) {
    expect(e.code() == ErrorCode::NotBoolean, e.what());
  }
  for (int x = 0; x <= 1; ++x) {
    const Node one[] = {L(x)};
    expect(bool_lattice(BoolOp::Not, one).value() == !x, "not");
    for (int y = 0; y <= 1; ++y) {
      const Node two[] = {L(x), L(y)};
      expect(bool_lattice(BoolOp::And, two).value() == (x && y), "and");
      expect(bool_lattice(BoolOp::Or, two).value() == (x || y), "or");
      expect(bool_lattice(BoolOp::Implies, two).value() == (!x || y), "implies");
    }
  }
}

// 4 -----------------------------------------------------------------------------

void select_matches_scan() {
  evotest::Rng rng(4004);
  Node persons;
  std::vector<std::pair<std::string, std::uint64_t>> rows;
  for (int i = 0; i < 50; ++i) {
    std::string name = "p" + std::to_string(i) + "_" + evotest::label_alphabet()[evotest::uniform(rng, 0, 19)];
    std::uint64_t age = evotest::uniform(rng, 0, 90);
    Node rec;
    rec.append(Label("age"), L(age));
    rec.append(Label("city"), L(evotest::uniform(rng, 0, 4)));
    persons.append(Label(name), std::move(rec));
    rows.emplace_back(name, age);
  }
  Node root;
  root.append(Label("persons"), persons);
  root.append(Label("adults"),
              textio::parse_value(": select { #0 = [persons] #1 : le { #0 = 18 #1 = [age] } }"));
  root.append(Label("again"),
              textio::parse_value(": select { #0 = [adults] #1 : le { #0 = 18 #1 = [age] } }"));
  Machine m{StateTree(std::move(root))};
  Node got = m.data_of(at("adults"));
  std::vector<std::string> expected;
  for (const auto& [name, age] : rows)
    if (age >= 18) expected.push_back(name);
  expect(got.size() == expected.size(), "select size " + str(got.size()) + " vs " + str(expected.size()));
  for (std::size_t i = 0; i < expected.size(); ++i) {
    expect(got.children()[i].label.name() == expected[i], "select order or label at " + str(i));
    expect(struct_eq(got.at(i), *persons.find(expected[i])), "select changed a record");
  }
  expect(struct_eq(m.data_of(at("again")), got), "select is not idempotent");
}

// 5 -----------------------------------------------------------------------------

void addressing_laws() {
  evotest::Rng rng(5005);
  const auto& alphabet = evotest::label_alphabet();
  auto random_path = [&] {
    std::vector<Segment> s;
    for (std::size_t k = evotest::uniform(rng, 0, 5); k > 0; --k)
      s.push_back(Segment::label(alphabet[evotest::uniform(rng, 0, 3)]));
    return Path(s);
  };
  for (int i = 0; i < 1000; ++i) {
    Path f = random_path(), g = random_path(), h = random_path();
    expect(compose(f, Path()) == f && compose(Path(), f) == f, "identity law");
    expect(compose(compose(f, g), h) == compose(f, compose(g, h)), "associativity");
    Path fg = compose(f, g);
    expect(fg.size() == f.size() + g.size() && fg.starts_with(f) && fg.suffix(f.size()) == g, "composition");
    Path m = meet(f, g);
    expect(m == evotest::longest_common_prefix(f, g), "meet vs prefix oracle: " + f.to_string() + " " + g.to_string());
    expect(meet(f, g) == meet(g, f) && meet(f, f) == f, "meet symmetry");
  }
  for (int round = 0; round < 50; ++round) {
    Node t = evotest::random_tree(rng, 5, false);
    std::vector<Path> paths;
    evotest::all_paths(t, Path(), paths);
    for (int i = 0; i < 20; ++i) {
      const Path& f = paths[evotest::uniform(rng, 0, paths.size() - 1)];
      const Node* at_f = resolve(t, f);
      std::vector<Path> below;
      evotest::all_paths(*at_f, Path(), below);
      const Path& g = below[evotest::uniform(rng, 0, below.size() - 1)];
      expect(resolve(t, compose(f, g)) == resolve(*at_f, g), "resolve(compose) law at " + f.to_string());
    }
  }
}

// 6 -----------------------------------------------------------------------------

void round_trip() {
  evotest::Rng rng(6006);
  for (int i = 0; i < 1000; ++i) {
    StateTree t(evotest::random_tree(rng, 6));
    std::string text = textio::print(t);
    StateTree back = textio::parse(text);
    expect(struct_eq(back.root(), t.root()), "round trip differs:\n" + text);
    expect(textio::print(back) == text, "print is not deterministic");
  }
  const std::string seed = textio::print(StateTree(evotest::random_tree(rng, 4)));
  const std::string alphabet = "{}[]=:#.$\"\\/ \n\tabz019_\xC3\xA9\xFF";
  for (int i = 0; i < 100000; ++i) {
    std::string s;
    if (evotest::coin(rng)) {
      s = seed;
      for (int k = 0; k < 4 && !s.empty(); ++k)
        s[evotest::uniform(rng, 0, s.size() - 1)] = alphabet[evotest::uniform(rng, 0, alphabet.size() - 1)];
    } else {
      s.resize(evotest::uniform(rng, 0, 40));
      for (auto& c : s) c = static_cast<char>(evotest::uniform(rng, 0, 255));
    }
    try {
      textio::parse(s);
    } catch (const ParseError&) {
    }
  }
}

// 7 -----------------------------------------------------------------------------

int weekday(Machine& m, int y, int mo, int d) {
  m.tree().root().put("x", m.instantiate(at("Date")));
  m.tree().replace(at("x.day"), L(d));
  m.tree().replace(at("x.month"), L(mo));
  m.tree().replace(at("x.year"), L(y));
  return static_cast<int>(m.call(at("x.weekday")).value());
}

void templates() {
  Machine m(evotest::load_stdlib());
  for (const char* name : {"gcd", "fact", "Date"}) {
    const std::string before = textio::print(*m.tree().resolve(at(name)));
    Node copy = m.instantiate(at(name));
    copy.put("scribble", L(1));
    expect(textio::print(*m.tree().resolve(at(name))) == before, std::string(name) + " changed by its instance");
  }
  const std::string date_before = textio::print(*m.tree().resolve(at("Date")));
  expect(weekday(m, 2004, 2, 5) == 3, "2004-02-05 is not Thursday");
  expect(textio::print(*m.tree().resolve(at("Date"))) == date_before, "Date changed by weekday call");
  evotest::Rng rng(7007);
  for (int i = 0; i < 100; ++i) {
    int y = static_cast<int>(evotest::uniform(rng, 1900, 2100));
    int mo = static_cast<int>(evotest::uniform(rng, 1, 12));
    int d = static_cast<int>(evotest::uniform(rng, 1, evotest::days_in_month(y, mo)));
    expect(weekday(m, y, mo, d) == evotest::zeller_weekday(y, mo, d),
           "weekday " + str(y) + "-" + str(mo) + "-" + str(d));
  }
  for (unsigned n = 0; n <= 20; ++n) {
    Machine f(evotest::load_stdlib());
    Node inst = f.instantiate(at("fact"));
    *inst.find("args")->find("n") = L(n);
    f.tree().root().put("call", std::move(inst));
    expect(f.call(at("call")).value() == evotest::factorial(n), "fact(" + str(n) + ")");
  }
}

// 8 -----------------------------------------------------------------------------

void heap_matches_sorted_list() {
  Machine m(evotest::load_stdlib());
  m.tree().root().put("h", m.instantiate(at("heap")));
  std::vector<std::uint64_t> oracle;  // kept sorted
  evotest::Rng rng(8008);
  for (int i = 0; i < 500; ++i) {
    if (evotest::coin(rng, 0.6)) {
      std::uint64_t v = evotest::uniform(rng, 0, 1000);
      m.heap_put(at("h"), L(v));
      oracle.insert(std::upper_bound(oracle.begin(), oracle.end(), v), v);
    } else if (oracle.empty()) {
      try {
        m.heap_get(at("h"));
        expect(false, "get on empty heap succeeded");
      } catch (const Error& e) {
        expect(e.code() == ErrorCode::EmptyHeap, e.what());
      }
    } else {
      Natural got = m.heap_get(at("h")).value();
      expect(got == oracle.front(), "heap get " + str(got) + " vs " + str(oracle.front()));
      oracle.erase(oracle.begin());
    }
  }
  for (int i = 0; i < 200; ++i) m.heap_put(at("h"), L(evotest::uniform(rng, 0, 1000)));
  Natural last = 0;
  while (!m.tree().resolve(at("h.data"))->children().empty()) {
    Natural v = m.heap_get(at("h")).value();
    expect(v >= last, "drain decreased");
    last = v;
  }
}

// 9 -----------------------------------------------------------------------------

void derivative_rule() {
  const Node rules = textio::parse_value(evotest::kDerivativeRules, textio::Dialect::Pattern);
  evotest::Rng rng(9009);
  int checked = 0;
  while (checked < 200) {
    Node term = evotest::random_polynomial_term(rng, 4);
    auto p = evotest::polynomial_of(term);
    if (!p || p->size() > 5) continue;
    Node goal = Node::term("d");
    goal.append(Label(), term);
    goal.append(Label(), evotest::variable_x());
    Node frame;
    frame.append(Label("goal"), std::move(goal));
    Node root;
    root.append(Label("frame"), std::move(frame));
    Machine m{StateTree(std::move(root))};
    m.run_rewrite(rules, at("frame"));
    auto got = evotest::polynomial_of(*m.tree().resolve(at("frame.goal")));
    expect(got.has_value(), "derivative is not a polynomial: " + textio::print_value(term));
    expect(*got == evotest::poly_derivative(*p), "derivative mismatch on " + textio::print_value(term));
    ++checked;
  }
}

// 10 ----------------------------------------------------------------------------

const char* kDeviceProgram = R"(
log {}
main {
  args {}
  mode = 0
  body {
    #0 { at = [t0] to = [dev.clock] }
    #1 { at = [line] to = [dev.stdin] }
    #2 { at = [dev.stdout] to = [line] }
    #3 { at = [h] to = [heap] }
    #4 { at = [h] put = 9 }
    #5 { at = [h] put = 4 }
    #6 { at = [low] get = [h] }
    #7 { at = [g] to = [gcd] }
    #8 { at = [g.args.arg1] to = [t0] }
    #9 { at = [g.args.arg2] to = 12 }
    #10 { at = [div] call = [g] }
    #11 { at = [dev.stdout] to = [dev.clock] }
    #12 { at = [result] to : sum { #0 = [low] #1 = [div] } }
  }
  result {}
}
)";

void cli_is_deterministic() {
  expect(!binary_path.empty(), "no evocat binary given");
  fs::path dir = fs::temp_directory_path() / "evocat_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "prog.evo") << kDeviceProgram;
  std::ofstream(dir / "input.txt") << "first line\nsecond\n";
  auto run = [&](int k) {
    std::string out = (dir / ("out" + str(k) + ".txt")).string();
    std::string dump = (dir / ("dump" + str(k) + ".evo")).string();
    std::string cmd = "\"" + binary_path + "\" trace \"" + EVOCAT_STDLIB_PATH + "\" \"" + (dir / "prog.evo").string() +
                      "\" --entry main --clock-start 1700000000000 --clock-step 7 --input \"" +
                      (dir / "input.txt").string() + "\" --dump \"" + dump + "\" > \"" + out + "\" 2>&1";
    int status = std::system(cmd.c_str());
    expect(status == 0, "run " + str(k) + " exited with " + str(status) + ": " + evotest::read_text(out));
    return std::pair{evotest::read_text(out), evotest::read_text(dump)};
  };
  auto [out1, dump1] = run(1);
  auto [out2, dump2] = run(2);
  expect(!out1.empty() && !dump1.empty(), "empty output");
  expect(out1.find("first line\n") != std::string::npos, "stdin line not echoed");
  expect(out1 == out2, "stdout differs between runs");
  expect(dump1 == dump2, "dumps differ between runs");
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) binary_path = argv[1];
  const std::vector<std::pair<const char*, std::function<void()>>> criteria = {
      {"gcd by rewriting matches Euclid", gcd_matches_euclid},
      {"expression evaluation matches arithmetic oracle", expressions_match_arithmetic},
      {"product, coproduct, if_arrow and Boolean laws", categorical_laws},
      {"select matches linear scan", select_matches_scan},
      {"path composition, identity and meet", addressing_laws},
      {"parse and print round trip", round_trip},
      {"templates: isolation, weekday, factorial", templates},
      {"heap matches sorted-list priority queue", heap_matches_sorted_list},
      {"derivative rule matches symbolic oracle", derivative_rule},
      {"CLI runs are byte-identical", cli_is_deterministic},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    std::string reason;
    try {
      criteria[i].second();
    } catch (const Failed& f) {
      reason = f.reason;
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    if (reason.empty()) {
      std::cout << "PASS " << i + 1 << " " << criteria[i].first << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << i + 1 << " " << criteria[i].first << ": " << reason << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
