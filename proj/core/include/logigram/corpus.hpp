#ifndef LOGIGRAM_CORPUS_HPP
#define LOGIGRAM_CORPUS_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "logigram/asp.hpp"
#include "logigram/ccg.hpp"

namespace logigram {

struct ClueGold {
  std::string text;  // raw clue sentence
  std::string gold;  // serialized integrity constraint
};

using MergeList = std::vector<std::pair<std::string, std::string>>;

struct PairsFile {
  MergeList merges;
  std::vector<ClueGold> pairs;
};

struct PuzzleFile {
  PuzzleDomain domain;
  MergeList merges;
  std::vector<ClueGold> clues;
};

struct InitialDict {
  int max_unknown = 3;
  std::vector<CatPtr> verb_cats, noun_cats, hyp_cats;
  std::vector<std::string> verbs, nouns;
  // token, predicate, category: token means \x. pred(x) at the category
  std::vector<std::array<std::string, 3>> gk;
};

struct ModelFile {
  int iterations = 10;
  unsigned long seed = 0;
  Lexicon lexicon;
};

// Lowercases, deletes apostrophes, splits hyphens, strips punctuation,
// tokenizes on whitespace, then applies longest-match merges. Idempotent.
std::vector<std::string> preprocess(const std::string& text, const MergeList& merges);

// Merges for domain constants containing underscores ("open_house" matches
// the token sequence "open house").
MergeList domain_merges(const PuzzleDomain& d);

PairsFile load_pairs(const std::string& path);
PuzzleFile load_puzzle(const std::string& path);
InitialDict load_dict(const std::string& path);

ModelFile load_model(const std::string& path);
void save_model(const ModelFile& m, const std::string& path);
std::string model_to_string(const ModelFile& m);
ModelFile model_from_string(const std::string& text);

// Initial lexicon: verbs get argument-swapping/constraint/identity meanings
// across the verb categories, nouns get property and identity meanings
// across the noun categories, general-knowledge tokens get their predicate.
Lexicon expand_dict(const InitialDict& d);

// Deterministic shuffle-based fold assignment: result[i] in [0, k).
std::vector<int> kfold_assignment(size_t n, int k, unsigned long seed);

} // namespace logigram

#endif
