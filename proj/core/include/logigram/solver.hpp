#ifndef LOGIGRAM_SOLVER_HPP
#define LOGIGRAM_SOLVER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logigram/asp.hpp"

namespace logigram {

// A model assigns every type a row: rows[t][i] is the element of type t held
// by tuple i+1.  The rank row is always the element list as given.
struct Model {
  std::vector<std::vector<std::string>> rows;
};

std::string model_key(const Model& m);
bool model_eq(const Model& a, const Model& b);

struct SolveResult {
  enum S { None, Unique, Multiple } status = None;
  long count = 0;
  std::optional<Model> model;  // first model in enumeration order
};

// Backtracking enumerator: rank row fixed, remaining types assigned row by
// row in lexicographic permutation order.  Constraints without negation
// prune partial assignments (facts only grow down a branch, so a satisfiable
// violation body can never be retracted); every constraint is re-checked on
// complete assignments.
SolveResult solve(const PuzzleDomain& d, const std::vector<AspRule>& clues);
std::vector<Model> all_models(const PuzzleDomain& d, const std::vector<AspRule>& clues);

// Reference implementation: full permutation sweep, complete-assignment
// checks only, no pruning.  Used to cross-validate the solver.
std::vector<Model> brute_force_models(const PuzzleDomain& d,
                                      const std::vector<AspRule>& clues);

// True when the constraint has no satisfiable body grounding in the model.
bool constraint_holds(const AspRule& r, const PuzzleDomain& d, const Model& m);

// External grounder pass-through (clingo-compatible output expected).
struct ExternalResult {
  bool ran = false;          // solver binary executed
  bool unsat = false;
  std::vector<std::vector<std::pair<long, std::string>>> answers;  // tuple/2 atoms
  std::string raw;
};

// Parses "Answer:" blocks from clingo-style output; exposed for testing.
std::vector<std::vector<std::pair<long, std::string>>> parse_external_answers(
    const std::string& output, bool* unsat = nullptr);

ExternalResult solve_external(const std::string& program,
                              const std::string& command = "clingo --models 0");

} // namespace logigram

#endif
