#include <benchmark/benchmark.h>

#include "logigram/ccg.hpp"
#include "logigram/corpus.hpp"
#include "logigram/inverse.hpp"
#include "logigram/lambda.hpp"
#include "logigram/solver.hpp"

using namespace logigram;

namespace {

const char* kConstraint =
    ":- tuple(I,earl), tuple(J,rooster), tuple(I,X), tuple(J,Y), "
    "etype(A,rank), element(A,X), element(A,Y), X != Y-1.";

void BM_ParseTerm(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_term(kConstraint));
}
BENCHMARK(BM_ParseTerm);

void BM_Normalize(benchmark::State& state) {
  TermPtr f = parse_term("\\x. \\y. :- y@I, x@J, I != J.");
  TermPtr a = parse_term("\\x. tuple(x,earl)");
  TermPtr b = parse_term("\\x. tuple(x,rooster)");
  TermPtr redex = app(app(f, a), b);
  for (auto _ : state) benchmark::DoNotOptimize(normalize(redex));
}
BENCHMARK(BM_Normalize);

void BM_AlphaEq(benchmark::State& state) {
  TermPtr a = parse_term(kConstraint);
  TermPtr b = parse_term(
      ":- tuple(J,rooster), tuple(I,earl), tuple(J,Y), tuple(I,X), "
      "etype(A,rank), element(A,Y), element(A,X), X != Y-1.");
  for (auto _ : state) benchmark::DoNotOptimize(alpha_eq(a, b));
}
BENCHMARK(BM_AlphaEq);

void BM_InverseL(benchmark::State& state) {
  TermPtr h = parse_term(kConstraint);
  TermPtr g = parse_term("\\x. tuple(x,earl)");
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_inverse_l(h, g));
}
BENCHMARK(BM_InverseL);

void BM_ChartParse(benchmark::State& state) {
  ModelFile m = load_model(std::string(LOGIGRAM_DATA_DIR) + "/arrival.model");
  std::vector<std::string> toks = preprocess(
      "Earl arrived immediately before the man with the rooster.", {});
  for (auto _ : state) benchmark::DoNotOptimize(parse_all(toks, m.lexicon));
}
BENCHMARK(BM_ChartParse);

void BM_Solve(benchmark::State& state) {
  PuzzleFile pz = load_puzzle(std::string(LOGIGRAM_DATA_DIR) + "/fortunes.puz");
  std::vector<AspRule> clues;
  for (auto& c : pz.clues) clues.push_back(parse_rule(c.gold));
  for (auto _ : state) benchmark::DoNotOptimize(solve(pz.domain, clues));
}
BENCHMARK(BM_Solve);

} // namespace

BENCHMARK_MAIN();
