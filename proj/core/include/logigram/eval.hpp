#ifndef LOGIGRAM_EVAL_HPP
#define LOGIGRAM_EVAL_HPP

#include <string>
#include <vector>

#include "logigram/corpus.hpp"
#include "logigram/learner.hpp"
#include "logigram/solver.hpp"

namespace logigram {

struct ClueMetrics {
  int total = 0;
  int translated = 0;  // parses whose best derivation is a constraint
  int equivalent = 0;  // translated and rule_equivalent to gold
  int exact = 0;       // translated and rule_exact to gold
  double precision = 0;  // equivalent / translated
  double recall = 0;     // exact / total
  double f1 = 0;
  bool zero_translations = false;
};

ClueMetrics evaluate_clues(const Lexicon& lex,
                           const std::vector<std::vector<std::string>>& tokens,
                           const std::vector<AspRule>& golds);

// Probability that n independent clues are all translated correctly.
double compound_accuracy(double per_clue, int n);

struct PuzzleOutcome {
  int clue_count = 0;
  int clues_translated = 0;
  bool reference_unique = false;  // gold rules give exactly one model
  bool solved_unique = false;     // translated rules give exactly one model
  bool matches_reference = false;
};

PuzzleOutcome evaluate_puzzle(const Lexicon& lex, const PuzzleFile& puzzle);

// Deterministic JSON evaluation report: trains on the pairs (k-fold splits
// when kfold >= 2, otherwise resubstitution) and reports clue metrics.
// Identical inputs produce byte-identical output: no timestamps, fixed key
// order, shortest-round-trip numbers.
std::string eval_pairs_report(const PairsFile& pairs, const InitialDict& dict,
                              const TrainConfig& cfg, int kfold);

} // namespace logigram

#endif
