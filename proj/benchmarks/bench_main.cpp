#include "evocat/machine.hpp"
#include "evocat/textio.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace evocat;

namespace {

std::string stdlib_text() {
  std::ifstream f(EVOCAT_STDLIB_PATH, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// Balanced sum/prod tree with 2^depth leaves.
Node expression(std::mt19937_64& rng, int depth) {
  if (depth == 0) return Node::leaf(rng() % 100);
  Node t = Node::term(rng() % 2 ? "sum" : "prod");
  t.append(Label(), expression(rng, depth - 1));
  t.append(Label(), expression(rng, depth - 1));
  return t;
}

void BM_ParseStdlib(benchmark::State& state) {
  const std::string text = stdlib_text();
  for (auto _ : state) benchmark::DoNotOptimize(textio::parse(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseStdlib);

void BM_PrintStdlib(benchmark::State& state) {
  const StateTree tree = textio::parse(stdlib_text());
  for (auto _ : state) benchmark::DoNotOptimize(textio::print(tree));
}
BENCHMARK(BM_PrintStdlib);

void BM_GcdRewrite(benchmark::State& state) {
  const StateTree lib = textio::parse(stdlib_text());
  for (auto _ : state) {
    Machine m{StateTree(lib.root())};
    Node f = m.instantiate(Path::parse("gcd"));
    *f.find("args")->find("arg1") = Node::leaf(832040);  // consecutive Fibonacci numbers
    *f.find("args")->find("arg2") = Node::leaf(514229);
    m.tree().root().put("call", std::move(f));
    benchmark::DoNotOptimize(m.call(Path::parse("call")));
  }
}
BENCHMARK(BM_GcdRewrite);

void BM_FactorialCall(benchmark::State& state) {
  const StateTree lib = textio::parse(stdlib_text());
  for (auto _ : state) {
    Machine m{StateTree(lib.root())};
    Node f = m.instantiate(Path::parse("fact"));
    *f.find("args")->find("n") = Node::leaf(20);
    m.tree().root().put("call", std::move(f));
    benchmark::DoNotOptimize(m.call(Path::parse("call")));
  }
}
BENCHMARK(BM_FactorialCall);

void BM_EvaluateExpression(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Node t = expression(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Machine m;
    benchmark::DoNotOptimize(m.evaluate(t));
  }
}
BENCHMARK(BM_EvaluateExpression)->Arg(4)->Arg(8)->Arg(12);

void BM_HeapPutGet(benchmark::State& state) {
  const StateTree lib = textio::parse(stdlib_text());
  const auto n = state.range(0);
  for (auto _ : state) {
    Machine m{StateTree(lib.root())};
    m.tree().root().put("h", m.instantiate(Path::parse("heap")));
    for (std::int64_t i = 0; i < n; ++i) m.heap_put(Path::parse("h"), Node::leaf((i * 7919) % n));
    for (std::int64_t i = 0; i < n; ++i) benchmark::DoNotOptimize(m.heap_get(Path::parse("h")));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_HeapPutGet)->Arg(16)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
