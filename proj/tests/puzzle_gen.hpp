#ifndef LOGIGRAM_TESTS_PUZZLE_GEN_HPP
#define LOGIGRAM_TESTS_PUZZLE_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "logigram/asp.hpp"

namespace logigram::testgen {

// Seeded source of small random puzzle instances: a domain with rank first
// plus a handful of constraints drawn from the clue shapes the translator
// produces.  Instances may be over- or under-constrained on purpose.
struct PuzzleGen {
  std::mt19937_64 rng;

  explicit PuzzleGen(unsigned long seed) : rng(seed) {}

  int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned long>(n)); }

  PuzzleDomain domain(int m, int n) {
    PuzzleDomain d;
    d.rank_index = 0;
    PuzzleDomain::TypeRow rank{"rank", {}};
    for (int i = 1; i <= n; ++i) rank.elements.push_back(std::to_string(i));
    d.types.push_back(rank);
    static const char* stems[] = {"a", "b", "c"};
    for (int t = 1; t < m; ++t) {
      PuzzleDomain::TypeRow row{"kind" + std::to_string(t), {}};
      for (int i = 1; i <= n; ++i)
        row.elements.push_back(std::string(stems[(t - 1) % 3]) + std::to_string(i));
      d.types.push_back(row);
    }
    return d;
  }

  // Any element of any type, as it appears in a clue atom.
  std::string element(const PuzzleDomain& d) {
    const auto& row = d.types[pick(static_cast<int>(d.types.size()))];
    return row.elements[pick(static_cast<int>(row.elements.size()))];
  }

  AspRule clue(const PuzzleDomain& d) {
    AspRule r;
    r.kind = AspRule::Constraint;
    std::string x = element(d);
    std::string y = element(d);
    auto operand = [](const std::string& e) {
      bool digits = !e.empty();
      for (char c : e)
        if (!isdigit(static_cast<unsigned char>(c))) digits = false;
      return digits ? asp_num(std::stol(e)) : asp_sym(e);
    };
    switch (pick(5)) {
      case 0:  // different tuples
        r.body = {lit_atom("tuple", {asp_var("I"), operand(x)}),
                  lit_atom("tuple", {asp_var("J"), operand(y)}),
                  lit_cmp(asp_var("I"), "!=", asp_var("J"))};
        break;
      case 1:  // same tuple forbidden
        r.body = {lit_atom("tuple", {asp_var("I"), operand(x)}),
                  lit_atom("tuple", {asp_var("I"), operand(y)})};
        break;
      case 2: {  // rank order between the two carriers
        const char* op = pick(2) ? ">" : "<";
        r.body = {lit_atom("tuple", {asp_var("I"), operand(x)}),
                  lit_atom("tuple", {asp_var("J"), operand(y)}),
                  lit_atom("tuple", {asp_var("I"), asp_var("X")}),
                  lit_atom("tuple", {asp_var("J"), asp_var("Y")}),
                  lit_atom("etype", {asp_var("A"), asp_sym("rank")}),
                  lit_atom("element", {asp_var("A"), asp_var("X")}),
                  lit_atom("element", {asp_var("A"), asp_var("Y")}),
                  lit_cmp(asp_var("X"), op, asp_var("Y"))};
        break;
      }
      case 3: {  // rank offset
        int delta = pick(2) ? 1 : -1;
        r.body = {lit_atom("tuple", {asp_var("I"), operand(x)}),
                  lit_atom("tuple", {asp_var("J"), operand(y)}),
                  lit_atom("tuple", {asp_var("I"), asp_var("X")}),
                  lit_atom("tuple", {asp_var("J"), asp_var("Y")}),
                  lit_atom("etype", {asp_var("A"), asp_sym("rank")}),
                  lit_atom("element", {asp_var("A"), asp_var("X")}),
                  lit_atom("element", {asp_var("A"), asp_var("Y")}),
                  lit_cmp(asp_var("X"), "!=", asp_var("Y", delta))};
        break;
      }
      default:  // extremum of the rank
        r.body = {lit_atom("tuple", {asp_var("I"), operand(x)}),
                  lit_atom("tuple", {asp_var("I"), asp_var("X")}),
                  lit_atom(pick(2) ? "highest" : "lowest", {asp_var("X")})};
        break;
    }
    return r;
  }

  std::vector<AspRule> clues(const PuzzleDomain& d, int count) {
    std::vector<AspRule> out;
    for (int i = 0; i < count; ++i) out.push_back(clue(d));
    return out;
  }
};

} // namespace logigram::testgen

#endif
