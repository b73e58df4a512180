#include "doctest.h"

#include "logigram/corpus.hpp"

#include <set>
#include <string>
#include <vector>

using namespace logigram;

namespace {

std::string data(const char* name) {
  return std::string(LOGIGRAM_DATA_DIR) + "/" + name;
}

std::string join(const std::vector<std::string>& toks) {
  std::string out;
  for (auto& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

} // namespace

TEST_SUITE("corpus") {

TEST_CASE("preprocessing lowercases strips punctuation and merges phrases") {
  PairsFile pf = load_pairs(data("training.pairs"));
  CHECK(preprocess("Dr. Miros altered the earrings.", pf.merges) ==
        std::vector<std::string>{"dr_miros", "altered", "the", "earrings"});
  CHECK(preprocess("Barbie Wyre is dining on hard-boiled eggs.", pf.merges) ==
        std::vector<std::string>{"barbie_wyre", "is", "dining", "on", "eggs"});
  CHECK(preprocess("Flo Wingbrook's fleece is not red.", pf.merges) ==
        std::vector<std::string>{"flo_wingbrook", "fleece", "is", "not", "red"});
  CHECK(preprocess("Earl arrived immediately before the man with the rooster.", {}) ==
        std::vector<std::string>{"earl", "arrived", "immediately", "before", "the",
                                 "man", "with", "the", "rooster"});
}

TEST_CASE("merges collapse the longest matching phrase") {
  PairsFile pf = load_pairs(data("training.pairs"));
  CHECK(preprocess(
            "Miss Hanson is withdrawing more than the customer whose number is 3989.",
            pf.merges) ==
        std::vector<std::string>{"hanson", "is", "withdrawing", "more", "3989"});
  // "is" inside the merged phrase is not tokenized separately
  MergeList overlap = {{"a b", "ab"}, {"a b c", "abc"}};
  CHECK(preprocess("a b c", overlap) == std::vector<std::string>{"abc"});
  CHECK(preprocess("a b d", overlap) == std::vector<std::string>{"ab", "d"});
}

TEST_CASE("preprocessing is idempotent") {
  PairsFile pf = load_pairs(data("training.pairs"));
  for (auto& p : pf.pairs) {
    auto once = preprocess(p.text, pf.merges);
    CHECK(preprocess(join(once), pf.merges) == once);
  }
}

TEST_CASE("domain constants with underscores become merges") {
  PuzzleDomain d;
  d.types = {{"rank", {"1", "2"}}, {"event", {"open_house", "auction"}}};
  d.rank_index = 0;
  MergeList m = domain_merges(d);
  REQUIRE(m.size() == 1);
  CHECK(m[0].first == "open house");
  CHECK(m[0].second == "open_house");
  CHECK(preprocess("the first open house was listed", m) ==
        std::vector<std::string>{"the", "first", "open_house", "was", "listed"});
}

TEST_CASE("the pairs fixture loads fifteen clue gold pairs") {
  PairsFile pf = load_pairs(data("training.pairs"));
  CHECK(pf.pairs.size() == 15);
  CHECK(pf.merges.size() == 10);
  for (auto& p : pf.pairs) {
    CHECK(!p.text.empty());
    CHECK_NOTHROW(parse_rule(p.gold));
  }
}

TEST_CASE("the puzzle fixture loads domain merges and clues") {
  PuzzleFile pz = load_puzzle(data("fortunes.puz"));
  REQUIRE(pz.domain.types.size() == 4);
  CHECK(pz.domain.types[0].name == "rank");
  CHECK(pz.domain.rank_index == 0);
  CHECK_FALSE(pz.domain.rank_defaulted);
  for (auto& t : pz.domain.types) CHECK(t.elements.size() == 5);
  CHECK(pz.clues.size() == 10);
  for (auto& c : pz.clues) CHECK_NOTHROW(parse_rule(c.gold));
}

TEST_CASE("the dictionary expands verbs nouns and general knowledge") {
  InitialDict dict = load_dict(data("initial.dict"));
  CHECK(dict.max_unknown == 3);
  CHECK(dict.hyp_cats.size() == 11);
  CHECK(!dict.verbs.empty());
  CHECK(!dict.nouns.empty());
  Lexicon lex = expand_dict(dict);
  CHECK(lex.entries.size() == 564);
  CHECK(lex.has_phrase("is"));
  CHECK(lex.has_phrase("fleece"));
  // every verb appears under every verb category
  for (auto& cat : dict.verb_cats) {
    bool found = false;
    for (int id : lex.find("is"))
      if (cat_eq(lex.entries[id].cat, cat)) found = true;
    CHECK(found);
  }
}

TEST_CASE("model files round-trip byte for byte") {
  ModelFile mf = load_model(data("arrival.model"));
  CHECK(mf.lexicon.entries.size() == 8);
  std::string text = model_to_string(mf);
  ModelFile back = model_from_string(text);
  CHECK(model_to_string(back) == text);
  CHECK(back.iterations == mf.iterations);
  CHECK(back.seed == mf.seed);
  REQUIRE(back.lexicon.entries.size() == mf.lexicon.entries.size());
  for (size_t i = 0; i < back.lexicon.entries.size(); ++i) {
    CHECK(back.lexicon.entries[i].phrase == mf.lexicon.entries[i].phrase);
    CHECK(alpha_eq(back.lexicon.entries[i].sem, mf.lexicon.entries[i].sem));
  }
}

TEST_CASE("fold assignment is balanced and deterministic") {
  std::vector<int> folds = kfold_assignment(15, 4, 9);
  CHECK(folds == kfold_assignment(15, 4, 9));
  CHECK(folds != kfold_assignment(15, 4, 10));
  std::vector<int> sizes(4, 0);
  for (int f : folds) {
    REQUIRE(f >= 0);
    REQUIRE(f < 4);
    ++sizes[f];
  }
  int lo = *std::min_element(sizes.begin(), sizes.end());
  int hi = *std::max_element(sizes.begin(), sizes.end());
  CHECK(hi - lo <= 1);
  CHECK_THROWS_AS(kfold_assignment(15, 1, 9), DomainError);
  CHECK_THROWS_AS(kfold_assignment(3, 4, 9), DomainError);
}

} // TEST_SUITE
