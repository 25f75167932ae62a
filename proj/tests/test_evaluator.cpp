#include "evocat/machine.hpp"
#include "evocat/textio.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace evocat;

namespace {

Node V(std::string_view text) { return textio::parse_value(text); }

Machine machine_of(std::string_view state, std::uint64_t fuel = kDefaultFuel) {
  return Machine(textio::parse(state), fuel);
}

ErrorCode eval_error(Machine& m, std::string_view term) {
  try {
    m.evaluate(V(term));
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << term;
  return ErrorCode::SyntaxError;
}

}  // namespace

TEST(Evaluate, Arithmetic) {
  Machine m;
  EXPECT_EQ(m.evaluate(V(": sum { #0 = 2 #1 : prod { #0 = 3 #1 = 4 } }")).value(), 14);
  EXPECT_EQ(m.evaluate(V(": sum { #0 = 1 #1 = 2 #2 = 3 }")).value(), 6);
  EXPECT_EQ(m.evaluate(V(": monus { #0 = 3 #1 = 5 }")).value(), 0);
  EXPECT_EQ(m.evaluate(V(": rem { #0 = 12 #1 = 8 }")).value(), 4);
  EXPECT_EQ(m.evaluate(V(": max { #0 = 3 #1 = 9 #2 = 4 }")).value(), 9);
}

TEST(Evaluate, LeafIsItsOwnValue) {
  Machine m;
  EXPECT_EQ(m.evaluate(Node::leaf(7)).value(), 7);
}

TEST(Evaluate, RandomExpressionsMatchArithmeticOracle) {
  evotest::Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    Node t = evotest::random_expression(rng, 6);
    auto expected = evotest::arithmetic(t);
    Machine m;
    if (expected) {
      EXPECT_EQ(m.evaluate(t).value(), *expected) << textio::print_value(t);
    } else {
      try {
        m.evaluate(t);
        ADD_FAILURE() << "expected DivisionByZero for " << textio::print_value(t);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
      }
    }
  }
}

TEST(Evaluate, IfOnlyEvaluatesTakenBranch) {
  Machine m;
  EXPECT_EQ(m.evaluate(V(": if { #0 = 1 #1 = 5 #2 : rem { #0 = 1 #1 = 0 } }")).value(), 5);
  EXPECT_EQ(m.evaluate(V(": if { #0 = 0 #1 : rem { #0 = 1 #1 = 0 } #2 = 7 }")).value(), 7);
  EXPECT_EQ(eval_error(m, ": sum { #0 = 5 #1 : rem { #0 = 1 #1 = 0 } }"), ErrorCode::DivisionByZero);
  EXPECT_EQ(eval_error(m, ": if { #0 = 2 #1 = 1 #2 = 2 }"), ErrorCode::NotBoolean);
}

TEST(Evaluate, ArityAndKindErrors) {
  Machine m;
  EXPECT_EQ(eval_error(m, ": rem { #0 = 1 }"), ErrorCode::ArityMismatch);
  EXPECT_EQ(eval_error(m, ": sum { #0 = 1 }"), ErrorCode::ArityMismatch);
  EXPECT_EQ(eval_error(m, ": sum { #0 = 1 #1 { } }"), ErrorCode::MixedKinds);
  EXPECT_EQ(eval_error(m, ": frobnicate { }"), ErrorCode::UnknownOperation);
  EXPECT_EQ(eval_error(m, ": prod { #0 { } #1 { } #2 { } }"), ErrorCode::ArityMismatch);
}

TEST(Evaluate, SetOperationsThroughTerms) {
  Machine m;
  Node p = m.evaluate(V(": prod { #0 = \"ab\" #1 { #0 = 1 } }"));
  EXPECT_EQ(p.size(), 2u);
  Node s = m.evaluate(V(": sum { #0 = \"ab\" #1 = \"c\" }"));
  EXPECT_EQ(textio::print_value(s), "\"abc\"");
  EXPECT_EQ(m.evaluate(V(": seteq { #0 = \"ab\" #1 = \"ab\" }")).value(), 1);
  Node pr = m.evaluate(V(": pair { #0 = 1 #1 = 2 }"));
  EXPECT_EQ(pr.find("snd")->value(), 2);
}

TEST(Evaluate, BooleanOperations) {
  Machine m;
  EXPECT_EQ(m.evaluate(V(": and { #0 = 1 #1 = 1 #2 = 0 }")).value(), 0);
  EXPECT_EQ(m.evaluate(V(": or { #0 = 0 #1 = 1 }")).value(), 1);
  EXPECT_EQ(m.evaluate(V(": not { #0 = 0 }")).value(), 1);
  EXPECT_EQ(m.evaluate(V(": implies { #0 = 1 #1 = 0 }")).value(), 0);
  EXPECT_EQ(m.evaluate(V(": le { #0 = 3 #1 = 3 }")).value(), 1);
}

TEST(DataOf, ReferencesAreMemoized) {
  Machine m = machine_of("a = 5 b : sum { #0 = [a] #1 = 1 } c = [b]");
  EXPECT_EQ(m.data_of(Path::parse("c")).value(), 6);
  EXPECT_TRUE(m.tree().resolve(Path::parse("b"))->is_leaf());
  EXPECT_EQ(m.tree().resolve(Path::parse("b"))->value(), 6);
  EXPECT_TRUE(m.tree().resolve(Path::parse("c"))->is_leaf());
}

TEST(DataOf, ReferencesResolveOutward) {
  Machine m = machine_of("k = 10 outer { inner { v : sum { #0 = [k] #1 = [w] } } w = 2 }");
  EXPECT_EQ(m.data_of(Path::parse("outer.inner.v")).value(), 12);
}

TEST(DataOf, InnerNamesShadowOuter) {
  Machine m = machine_of("k = 10 box { k = 1 v = [k] }");
  EXPECT_EQ(m.data_of(Path::parse("box.v")).value(), 1);
}

TEST(DataOf, CycleDetected) {
  Machine m = machine_of("a = [b] b = [a]");
  try {
    m.data_of(Path::parse("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CyclicReference);
  }
  Machine self = machine_of("a : sum { #0 = [a] #1 = 1 }");
  EXPECT_THROW(self.data_of(Path::parse("a")), Error);
}

TEST(DataOf, UnresolvableReference) {
  Machine m = machine_of("a = [nowhere.x]");
  try {
    m.data_of(Path::parse("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PathUnresolvable);
  }
}

TEST(DataOf, FuelExhaustion) {
  Machine m = machine_of("a : sum { #0 = 1 #1 : sum { #0 = 2 #1 = 3 } }", 1);
  try {
    m.data_of(Path::parse("a"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FuelExhausted);
  }
}

TEST(DataOf, CountersTrackFirings) {
  Machine m = machine_of("a : sum { #0 = 1 #1 : sum { #0 = 2 #1 = 3 } }");
  m.data_of(Path::parse("a"));
  EXPECT_EQ(m.counters().operation_firings, 2u);
  EXPECT_EQ(m.counters().fuel_used, 2u);
  EXPECT_EQ(m.fuel_left(), kDefaultFuel - 2);
}

TEST(Select, PredicateSeesEachCandidate) {
  Machine m = machine_of(R"(
    persons {
      ann { age = 30 city = 1 }
      bob { age = 17 city = 2 }
      cid { age = 45 city = 2 }
    }
    adults : select {
      #0 = [persons]
      #1 : le {
        #0 = 18
        #1 = [age]
      }
    }
  )");
  Node r = m.data_of(Path::parse("adults"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.children()[0].label.name(), "ann");
  EXPECT_EQ(r.children()[1].label.name(), "cid");
}

TEST(Select, VariableNamesTheCandidate) {
  Machine m = machine_of(R"(
    xs { #0 = 4 #1 = 9 #2 = 2 #3 = 7 }
    small : select {
      #0 = [xs]
      #1 : lt {
        #0 = $x
        #1 = 5
      }
    }
  )");
  Node r = m.data_of(Path::parse("small"));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r.at(0).value(), 4);
  EXPECT_EQ(r.at(1).value(), 2);
}

TEST(Evaluate, DepthLimitReportsFuel) {
  Node t = Node::leaf(1);
  for (int i = 0; i < 5000; ++i) {
    Node s = Node::term("sum");
    s.append(Label(), std::move(t));
    s.append(Label(), Node::leaf(1));
    t = std::move(s);
  }
  Machine m;
  try {
    m.evaluate(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FuelExhausted);
  }
}
