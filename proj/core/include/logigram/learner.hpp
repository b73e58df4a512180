#ifndef LOGIGRAM_LEARNER_HPP
#define LOGIGRAM_LEARNER_HPP

#include <optional>
#include <string>
#include <vector>

#include "logigram/asp.hpp"
#include "logigram/ccg.hpp"
#include "logigram/corpus.hpp"

namespace logigram {

struct TrainConfig {
  int iterations = 10;
  double rate = 0.1;
  double init_weight = 0.1;
  int max_unknown = 3;
  unsigned long seed = 0;  // recorded in the model; consumed by fold splitting
};

struct TrainStats {
  std::vector<int> entries_added;        // per iteration
  std::vector<int> pairs_without_gold;   // per SGD pass: skipped pairs
};

// The category pool hypothesized for unknown tokens.
std::vector<CatPtr> default_hypothesis_cats();

// True when some full-span S derivation is alpha-equal to the gold rule.
bool gold_derivable(const Lexicon& lex, const std::vector<std::string>& tokens,
                    const AspRule& gold);

// Inverse-driven lexical generation for one training pair.  Returns the
// number of lexicon entries added.  Candidate meanings are found by
// (1) identity meanings for all unknown tokens at every pool category,
// (2) top-down inverse solving along syntax trees when one side of every
//     split is known,
// (2') per-unknown solving with identity placeholders for the remaining
//      unknowns, and
// (3) a left-to-right sweep that re-opens one known token at a time when
//     the pair stays underivable.
// Every candidate set is verified by reparsing: entries are kept only when
// a derivation using all of them reproduces the gold rule exactly.
// Candidates embedding a sibling token's property constant are rejected:
// the sibling's meaning is already known at its own span.
int lexical_generation(Lexicon& lex, const std::vector<std::string>& tokens,
                       const AspRule& gold, const std::vector<CatPtr>& pool,
                       const TrainConfig& cfg);

// One stochastic gradient pass over the pairs (marginal log-likelihood of
// gold-equivalent derivations against all derivations).
void update_parameters(Lexicon& lex,
                       const std::vector<std::vector<std::string>>& tokens,
                       const std::vector<AspRule>& golds, const TrainConfig& cfg,
                       int* skipped = nullptr);

// Instantiates property-template entries for vocabulary nouns that lack an
// entry at the template's category.
void generalize(Lexicon& lex, const std::vector<std::string>& noun_vocab);

Lexicon train(const Lexicon& initial,
              const std::vector<std::vector<std::string>>& tokens,
              const std::vector<AspRule>& golds, const std::vector<CatPtr>& pool,
              const std::vector<std::string>& noun_vocab, const TrainConfig& cfg,
              TrainStats* stats = nullptr);

struct Translation {
  bool parsed = false;
  TermPtr sem;                  // best-parse semantics when parsed
  std::optional<AspRule> rule;  // set when the semantics is a constraint
};

Translation translate(const Lexicon& lex, const std::vector<std::string>& tokens);

} // namespace logigram

#endif
