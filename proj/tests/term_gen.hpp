#ifndef LOGIGRAM_TESTS_TERM_GEN_HPP
#define LOGIGRAM_TESTS_TERM_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "logigram/lambda.hpp"

namespace logigram::testgen {

// Random well-typed term pairs for inverse soundness fuzzing.  Arguments are
// drawn from a small closed pool; functions are random abstractions over
// pool-shaped bodies, so most pairs type-check on the first try.
struct TermGen {
  std::mt19937_64 rng;

  explicit TermGen(unsigned long seed) : rng(seed) {}

  int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned long>(n)); }

  TermPtr constant() {
    static const char* names[] = {"earl",  "rooster", "ivana", "cow",
                                  "metal", "1",       "2",     "3"};
    return cst(names[pick(8)]);
  }

  TermPtr logic_var() {
    static const char* names[] = {"I", "J", "X", "Y"};
    return cst(names[pick(4)]);
  }

  // Closed normal terms usable as G (or as F's argument).
  TermPtr argument(int depth = 0) {
    switch (pick(depth > 1 ? 6 : 8)) {
      case 0: return constant();
      case 1: return logic_var();
      case 2: return abs("x", var("x"));
      case 3: return abs("x", atm("tuple", {var("x"), constant()}));
      case 4: return atm("tuple", {logic_var(), constant()});
      case 5: return cmp(logic_var(), pick(2) ? "!=" : "<", off(logic_var(), 1 + pick(2)));
      case 6: return abs("x", abs("y", cmp(var("x"), "!=", off(var("y"), 1))));
      default:
        return abs("z", constr({app(var("z"), logic_var()),
                                atm("tuple", {logic_var(), constant()})}));
    }
  }

  // Bodies that may mention the enclosing binders.
  TermPtr body(const std::vector<std::string>& binders, int depth) {
    int n = static_cast<int>(binders.size());
    int c = pick(depth > 2 ? 4 : 7);
    switch (c) {
      case 0: return constant();
      case 1: return n ? var(binders[pick(n)]) : constant();
      case 2: return atm("tuple", {n ? var(binders[pick(n)]) : logic_var(), constant()});
      case 3: {
        std::vector<TermPtr> items;
        int len = 2 + pick(2);
        for (int i = 0; i < len; ++i)
          items.push_back(atm("tuple", {logic_var(),
                                        n && pick(2) ? var(binders[pick(n)]) : constant()}));
        return constr(items);
      }
      case 4: {
        TermPtr f = body(binders, depth + 1);
        TermPtr a = body(binders, depth + 1);
        return app(f, a);
      }
      case 5:
        return cmp(n ? var(binders[pick(n)]) : logic_var(), "!=",
                   off(logic_var(), 1 + pick(2)));
      default: {
        std::vector<TermPtr> items;
        items.push_back(n ? app(var(binders[pick(n)]), logic_var()) : constant());
        items.push_back(atm("tuple", {logic_var(), constant()}));
        return constr(items);
      }
    }
  }

  TermPtr function() {
    std::vector<std::string> binders;
    int arity = 1 + pick(2);
    for (int i = 0; i < arity; ++i) binders.push_back("v" + std::to_string(i + 1));
    TermPtr t = body(binders, 0);
    for (int i = arity - 1; i >= 0; --i) t = abs(binders[i], t);
    return t;
  }

  // Draws until app(f, g) is well-typed; counts attempts.
  bool next_pair(TermPtr& f, TermPtr& g, int max_attempts = 64) {
    for (int a = 0; a < max_attempts; ++a) {
      f = function();
      g = argument();
      if (try_infer(app(f, g))) return true;
    }
    return false;
  }
};

} // namespace logigram::testgen

#endif
