#include "doctest.h"

#include "logigram/asp.hpp"
#include "logigram/corpus.hpp"

#include <string>
#include <vector>

using namespace logigram;

namespace {

// Four-type domain with rank last, matching the sample puzzle's encoding order.
PuzzleDomain sample_domain() {
  PuzzleDomain d;
  d.types = {{"name", {"earl", "ivana", "lucy", "philip", "tony"}},
             {"element", {"earth", "fire", "metal", "water", "wood"}},
             {"animal", {"cow", "dragon", "horse", "ox", "rooster"}},
             {"rank", {"1", "2", "3", "4", "5"}}};
  d.rank_index = 3;
  return d;
}

const char* kClue1 = ":- tuple(I,tony), tuple(J,3), I!=J.";

} // namespace

TEST_SUITE("asp") {

TEST_CASE("terms and literals serialize in canonical form") {
  CHECK(serialize_term(asp_sym("tony")) == "tony");
  CHECK(serialize_term(asp_num(3)) == "3");
  CHECK(serialize_term(asp_var("X")) == "X");
  CHECK(serialize_term(asp_var("Y", -1)) == "Y-1");
  CHECK(serialize_term(asp_var("Y", 2)) == "Y+2");
  CHECK(serialize_term(asp_range(1, 5)) == "1..5");
  CHECK(serialize_literal(lit_atom("tuple", {asp_var("I"), asp_sym("tony")})) ==
        "tuple(I,tony)");
  CHECK(serialize_literal(lit_atom("notmax", {asp_var("A"), asp_var("X")}, true)) ==
        "not notmax(A,X)");
  CHECK(serialize_literal(lit_cmp(asp_var("X"), "!=", asp_var("Y", -1))) == "X!=Y-1");
}

TEST_CASE("rule serialization covers all four shapes") {
  AspRule fact;
  fact.head = lit_atom("etype", {asp_num(2), asp_sym("element")});
  CHECK(serialize_rule(fact) == "etype(2,element).");

  AspRule clue;
  clue.kind = AspRule::Constraint;
  clue.body = {lit_atom("tuple", {asp_var("I"), asp_sym("tony")}),
               lit_atom("tuple", {asp_var("J"), asp_num(3)}),
               lit_cmp(asp_var("I"), "!=", asp_var("J"))};
  CHECK(serialize_rule(clue) == kClue1);

  AspProgram bg = background_module();
  REQUIRE(bg.rules.size() == 4);
  CHECK(serialize_rule(bg.rules[0]) ==
        "notmax(A,X) :- element(A,X), element(A,Y), X!=Y, Y>X.");
  CHECK(serialize_rule(bg.rules[1]) ==
        "maximum(A,X) :- not notmax(A,X), element(A,X).");

  AspProgram gen = generation_module();
  REQUIRE(gen.rules.size() == 2);
  CHECK(serialize_rule(gen.rules[0]) ==
        "1{tuple(I,X):element(A,X)}1 :- eindex(I), index(A).");
  CHECK(serialize_rule(gen.rules[1]) ==
        ":- tuple(I,X), tuple(J,X), element(K,X), I!=J.");
}

TEST_CASE("parse_rule inverts serialize_rule on every fixture gold") {
  PuzzleFile pz = load_puzzle(std::string(LOGIGRAM_DATA_DIR) + "/fortunes.puz");
  REQUIRE(pz.clues.size() == 10);
  for (auto& c : pz.clues) {
    AspRule r = parse_rule(c.gold);
    AspRule again = parse_rule(serialize_rule(r));
    CHECK(rule_exact(r, again));
    CHECK(serialize_rule(r) == serialize_rule(again));
  }
  PairsFile pf = load_pairs(std::string(LOGIGRAM_DATA_DIR) + "/training.pairs");
  REQUIRE(pf.pairs.size() == 15);
  for (auto& p : pf.pairs) {
    AspRule r = parse_rule(p.gold);
    CHECK(serialize_rule(parse_rule(serialize_rule(r))) == serialize_rule(r));
  }
}

TEST_CASE("parse_rule accepts spaced and unicode spellings") {
  AspRule a = parse_rule(":- tuple(I, tony), tuple(J, 3), I != J.");
  CHECK(serialize_rule(a) == kClue1);
  AspRule b = parse_rule(":- tuple(I,earl), X \xe2\x89\xa0 Y-1.");
  CHECK(serialize_rule(b) == ":- tuple(I,earl), X!=Y-1.");
  AspRule c = parse_rule(":- tuple(I,earth), X!=Y+2.");
  REQUIRE(c.body.size() == 2);
  CHECK(c.body[1].rhs.delta == 2);
  CHECK_THROWS_AS(parse_rule(":- tuple(I,earl)"), ParseError);  // missing dot
  CHECK_THROWS_AS(parse_rule(":- tuple(I,earl). junk"), ParseError);
}

TEST_CASE("domain encoding lays out ranges etypes elements and rank tuples") {
  AspProgram p = encode_domain(sample_domain());
  std::string text = serialize_program(p);
  CHECK(text.find("index(1..4).\n") != std::string::npos);
  CHECK(text.find("eindex(1..5).\n") != std::string::npos);
  CHECK(text.find("etype(4,rank).\n") != std::string::npos);
  CHECK(text.find("element(1,earl).\n") != std::string::npos);
  CHECK(text.find("tuple(3,3).\n") != std::string::npos);
  // 2 ranges + 4 etype + 20 element + 5 rank tuples
  CHECK(p.rules.size() == 31);

  PuzzleDomain tiny;
  tiny.types = {{"t", {"e1"}}};
  tiny.rank_index = 0;
  std::string small = serialize_program(encode_domain(tiny));
  CHECK(small.find("etype(1,t).\n") != std::string::npos);
  CHECK(small.find("element(1,e1).\n") != std::string::npos);
  CHECK(small.find("tuple(1,e1).\n") != std::string::npos);

  PuzzleDomain two;
  two.types = {{"rank", {"1", "2"}}, {"color", {"red", "blue"}}};
  two.rank_index = 0;
  AspProgram q = encode_domain(two);
  int etypes = 0, elements = 0;
  for (auto& r : q.rules) {
    if (r.head.pred == "etype") ++etypes;
    if (r.head.pred == "element") ++elements;
  }
  CHECK(etypes == 2);
  CHECK(elements == 4);

  PuzzleDomain ragged;
  ragged.types = {{"rank", {"1", "2"}}, {"color", {"red"}}};
  ragged.rank_index = 0;
  CHECK_THROWS_AS(encode_domain(ragged), DomainError);
}

TEST_CASE("generation and background modules round-trip through text") {
  for (auto* mod : {new AspProgram(generation_module()), new AspProgram(background_module())}) {
    AspProgram back = parse_program(serialize_program(*mod));
    REQUIRE(back.rules.size() == mod->rules.size());
    for (size_t i = 0; i < back.rules.size(); ++i)
      CHECK(rule_exact(back.rules[i], mod->rules[i]));
    delete mod;
  }
}

TEST_CASE("bridge module emits only the aliases a clue set uses") {
  CHECK(bridge_module({}, "rank").rules.empty());
  AspProgram hi = bridge_module({"highest"}, "rank");
  REQUIRE(hi.rules.size() == 1);
  CHECK(serialize_rule(hi.rules[0]) == "highest(X) :- etype(A,rank), maximum(A,X).");
  AspProgram lo = bridge_module({"first", "lowest"}, "rank");
  REQUIRE(lo.rules.size() == 2);
  CHECK(serialize_rule(lo.rules[0]) == "lowest(X) :- etype(A,rank), minimum(A,X).");
  CHECK(serialize_rule(lo.rules[1]) == "first(X) :- etype(A,rank), minimum(A,X).");
  CHECK(bridge_module({"tuple", "element"}, "rank").rules.empty());
}

TEST_CASE("encode_program stitches domain generation background bridge and clues") {
  PuzzleDomain d = sample_domain();
  std::string text = encode_program(d, {parse_rule(kClue1)});
  CHECK(text.find("1{tuple(I,X):element(A,X)}1") != std::string::npos);
  CHECK(text.find(":- tuple(I,X), tuple(J,X), element(K,X), I!=J.") != std::string::npos);
  CHECK(text.find("maximum(A,X)") != std::string::npos);
  CHECK(text.find(kClue1) != std::string::npos);
  CHECK(text.find("highest(X)") == std::string::npos);

  AspRule uses_highest = parse_rule(":- tuple(I,tony), tuple(I,X), highest(X).");
  std::string with_bridge = encode_program(d, {uses_highest});
  CHECK(with_bridge.find("highest(X) :- etype(A,rank), maximum(A,X).") != std::string::npos);
}

TEST_CASE("rules convert to lambda terms and back") {
  PuzzleFile pz = load_puzzle(std::string(LOGIGRAM_DATA_DIR) + "/fortunes.puz");
  for (auto& c : pz.clues) {
    AspRule r = parse_rule(c.gold);
    CHECK(rule_exact(rule_from_term(term_from_rule(r)), r));
  }
  TermPtr t = term_from_rule(parse_rule(":- tuple(I,earl), X!=Y-1."));
  CHECK(print_term(t) == ":- tuple(I,earl), X != Y-1.");
  CHECK_THROWS_AS(rule_from_term(parse_term("tuple(I,earl)")), DomainError);
}

TEST_CASE("rule equivalence tolerates permutation renaming and symmetric flips") {
  AspRule clue1 = parse_rule(kClue1);
  CHECK(rule_equivalent(clue1, parse_rule(":- tuple(J,3), I!=J, tuple(I,tony).")));
  CHECK(rule_equivalent(clue1, parse_rule(":- tuple(J,tony), tuple(I,3), J!=I.")));
  CHECK(rule_equivalent(clue1, parse_rule(":- tuple(I,tony), tuple(J,3), J!=I.")));
  CHECK_FALSE(rule_equivalent(clue1, parse_rule(":- tuple(I,wood), tuple(J,5), I!=J.")));
  // order comparisons are not symmetric: X>Y matches only itself under renaming
  AspRule gt = parse_rule(":- tuple(I,ox), tuple(J,metal), X>Y, tuple(I,X), tuple(J,Y).");
  AspRule lt = parse_rule(":- tuple(I,ox), tuple(J,metal), Y<X, tuple(I,X), tuple(J,Y).");
  CHECK_FALSE(rule_equivalent(gt, lt));
  CHECK(rule_equivalent(gt, gt));
  // variable mapping must be a bijection
  CHECK_FALSE(rule_equivalent(parse_rule(":- tuple(I,tony), tuple(J,3), I!=J."),
                              parse_rule(":- tuple(I,tony), tuple(I,3), I!=I.")));
}

TEST_CASE("rule_exact canonicalizes variable names but not body order") {
  AspRule clue1 = parse_rule(kClue1);
  CHECK(rule_exact(clue1, parse_rule(":- tuple(P,tony), tuple(Q,3), P!=Q.")));
  CHECK_FALSE(rule_exact(clue1, parse_rule(":- tuple(J,3), tuple(I,tony), I!=J.")));
}

TEST_CASE("validation flags foreign symbols bad arities and unsafe comparisons") {
  PuzzleDomain d = sample_domain();
  CHECK(validate_rule(parse_rule(kClue1), d).empty());
  for (auto& r : generation_module().rules) CHECK(validate_rule(r, d).empty());
  for (auto& r : background_module().rules) CHECK(validate_rule(r, d).empty());

  CHECK_FALSE(validate_rule(parse_rule(":- tuple(I,zebra), tuple(J,3), I!=J."), d).empty());
  CHECK_FALSE(validate_rule(parse_rule(":- grabs(I,tony)."), d).empty());
  CHECK_FALSE(validate_rule(parse_rule(":- tuple(I,tony,3)."), d).empty());
  CHECK_FALSE(validate_rule(parse_rule(":- tuple(I,tony), X!=Y."), d).empty());
}

} // TEST_SUITE
