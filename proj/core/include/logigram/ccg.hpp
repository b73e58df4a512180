#ifndef LOGIGRAM_CCG_HPP
#define LOGIGRAM_CCG_HPP

#include <optional>
#include <string>
#include <vector>

#include "logigram/category.hpp"
#include "logigram/lambda.hpp"

namespace logigram {

struct LexEntry {
  std::string phrase;
  CatPtr cat;
  TermPtr sem;
  double weight = 0.1;
  // Principal-type memo; depends only on sem, so copies may share it.
  mutable TypePtr ty_cache;
  mutable bool ty_ready = false;
};

struct Lexicon {
  std::vector<LexEntry> entries;

  // Adds an entry unless an alpha-equal one for the same phrase and category
  // exists; returns the entry's index either way.
  int add(const std::string& phrase, const CatPtr& cat, const TermPtr& sem,
          double weight = 0.1);
  std::vector<int> find(const std::string& phrase) const;
  bool has_phrase(const std::string& phrase) const;
};

// Chart items are equivalence classes keyed by category, semantics (alpha),
// and the multiset of lexical entries used; backpointers keep one tree.
struct ChartItem {
  CatPtr cat;
  TermPtr sem;
  TypePtr type;               // principal type of sem; null when sem is ill-typed
  std::vector<int> features;  // sorted lexical entry ids, with multiplicity
  int start = 0, end = 0;
  int left = -1, right = -1;  // pool ids; -1 for lexical items
  int entry = -1;             // lexical entry id for leaf items
};

struct Chart {
  int n = 0;
  std::vector<ChartItem> pool;
  std::vector<std::vector<std::vector<int>>> cells;  // [start][end] -> pool ids

  const std::vector<int>& cell(int i, int j) const { return cells[i][j]; }
};

struct Derivation {
  CatPtr cat;
  TermPtr sem;
  std::vector<int> features;
  int item = -1;  // pool id in the chart it came from
};

// Application-only CKY over the token sequence.  Composition failures
// (ill-typed applications) are pruned; everything else is kept.
Chart build_chart(const std::vector<std::string>& tokens, const Lexicon& lex);

// All S-rooted full-span derivation classes, in chart enumeration order.
std::vector<Derivation> parse_all(const std::vector<std::string>& tokens,
                                  const Lexicon& lex);
std::vector<Derivation> root_derivations(const Chart& chart);

double derivation_score(const Derivation& d, const Lexicon& lex);

// Highest-scoring S-rooted derivation; ties resolve to enumeration order.
std::optional<Derivation> best_parse(const std::vector<std::string>& tokens,
                                     const Lexicon& lex);

std::string entry_to_tsv(const LexEntry& e);
LexEntry entry_from_tsv(const std::string& line);

} // namespace logigram

#endif
