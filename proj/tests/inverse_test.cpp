#include "doctest.h"

#include "logigram/inverse.hpp"

#include "term_gen.hpp"

using namespace logigram;

namespace {

const char* kArrivalRoot =
    ":- tuple(I,earl), tuple(J,rooster), tuple(I,X), tuple(J,Y), "
    "etype(A,rank), element(A,X), element(A,Y), X != Y-1.";

const char* kArrivalVp =
    "λz. :- z@I, tuple(J,rooster), tuple(I,X), tuple(J,Y), "
    "etype(A,rank), element(A,X), element(A,Y), X != Y-1.";

bool sound_l(const TermPtr& f, const TermPtr& g, const TermPtr& h) {
  try {
    return alpha_eq(normalize(app(f, g)), h);
  } catch (const DomainError&) {
    return false;
  }
}

bool sound_r(const TermPtr& f, const TermPtr& g, const TermPtr& h) {
  return sound_l(g, f, h);
}

} // namespace

TEST_SUITE("inverse") {

TEST_CASE("replace substitutes subterms simultaneously") {
  CHECK(alpha_eq(replace1(parse_term("tuple(I,earl)"), parse_term("earl"), parse_term("v")),
                 parse_term("tuple(I,v)")));
  CHECK(alpha_eq(replace(parse_term("X != Y-1"),
                         {parse_term("X"), parse_term("Y")},
                         {parse_term("v1"), parse_term("v2")}),
                 parse_term("v1 != v2-1")));
  CHECK(alpha_eq(replace(parse_term("tuple(I,earl)"),
                         {parse_term("earl"), parse_term("I")},
                         {parse_term("I"), parse_term("earl")}),
                 parse_term("tuple(earl,I)")));
  CHECK_THROWS_AS(replace(parse_term("tuple(I,earl)"), {parse_term("I")}, {}),
                  DomainError);
  // absent pattern: no-op, not an error
  CHECK(alpha_eq(replace1(parse_term("tuple(I,earl)"), parse_term("zebra"), parse_term("v")),
                 parse_term("tuple(I,earl)")));
}

TEST_CASE("inverse_r recovers the argument of an application") {
  auto f = inverse_r(parse_term("tuple(I,earl)"), parse_term("λv. tuple(I,v)"));
  REQUIRE(f.has_value());
  CHECK(alpha_eq(*f, parse_term("earl")));
}

TEST_CASE("inverse_r with G = λv.v@J delegates to inverse_l on J") {
  TermPtr h = parse_term("tuple(J,cow)");
  auto via_r = inverse_r(h, parse_term("λv. v@J"));
  auto via_l = inverse_l(h, parse_term("J"));
  REQUIRE(via_r.has_value());
  REQUIRE(via_l.has_value());
  CHECK(alpha_eq(*via_r, *via_l));
  CHECK(sound_r(*via_r, parse_term("λv. v@J"), h));
}

TEST_CASE("inverse_r returns empty when no case applies") {
  CHECK_FALSE(inverse_r(parse_term("λx. x"), parse_term("λy. tuple(y,cow)")).has_value());
}

TEST_CASE("inverse_l strips a known argument into an abstraction") {
  TermPtr h = parse_term("tuple(J,rooster)");
  TermPtr g = parse_term("λx. tuple(x,rooster)");
  auto f = inverse_l(h, g);
  REQUIRE(f.has_value());
  CHECK(sound_l(*f, g, h));
}

TEST_CASE("inverse_l of a term against itself recovers identity") {
  TermPtr t = parse_term("tuple(I,earl)");
  auto f = inverse_l(t, t);
  REQUIRE(f.has_value());
  CHECK(alpha_eq(*f, parse_term("λv. v")));
  CHECK(sound_l(*f, t, t));
}

TEST_CASE("worked arrival example: verb-phrase meaning from the subject") {
  TermPtr root = parse_term(kArrivalRoot);
  TermPtr earl = parse_term("λx. tuple(x,earl)");
  auto vp = inverse_l(root, earl);
  REQUIRE(vp.has_value());
  CHECK(alpha_eq(*vp, parse_term(kArrivalVp)));
  CHECK(sound_l(*vp, earl, root));
}

TEST_CASE("worked arrival example: full recursive recovery") {
  TermPtr root = parse_term(kArrivalRoot);
  auto vp = inverse_l(root, parse_term("λx. tuple(x,earl)"));
  REQUIRE(vp.has_value());

  // [before the man with the rooster] applies backward to [arrived immediately]
  TermPtr before = parse_term(
      "λx. λy. λz. :- z@I, x@J, tuple(I,X), tuple(J,Y), "
      "etype(A,rank), element(A,X), element(A,Y), y@X@Y.");
  TermPtr before_np = normalize(app(before, parse_term("λx. tuple(x,rooster)")));
  auto arrived_immediately = inverse_r(*vp, before_np);
  REQUIRE(arrived_immediately.has_value());
  CHECK(alpha_eq(*arrived_immediately, parse_term("λx. λy. x != y-1")));

  // [immediately] applies backward to [arrived] = λx.x
  auto immediately = inverse_l(*arrived_immediately, parse_term("λx. x"));
  REQUIRE(immediately.has_value());
  CHECK(alpha_eq(*immediately, parse_term("λx. λy. λz. x@(y != z-1)")));
}

TEST_CASE("every enumerated candidate re-applies to the target") {
  testgen::TermGen gen(31);
  int pairs = 0, l_hits = 0, r_hits = 0;
  for (int i = 0; i < 1500; ++i) {
    TermPtr f, g;
    if (!gen.next_pair(f, g)) continue;
    TermPtr h;
    try {
      h = normalize(app(f, g));
    } catch (const DomainError&) {
      continue;
    }
    ++pairs;
    for (auto& cand : enumerate_inverse_l(h, g)) {
      CHECK(sound_l(cand, g, h));
      ++l_hits;
    }
    for (auto& cand : enumerate_inverse_r(h, f)) {
      CHECK(sound_r(cand, f, h));
      ++r_hits;
    }
    auto one_l = inverse_l(h, g);
    if (one_l) CHECK(sound_l(*one_l, g, h));
    auto one_r = inverse_r(h, f);
    if (one_r) CHECK(sound_r(*one_r, f, h));
  }
  CHECK(pairs > 1000);
  CHECK(l_hits > 0);
  CHECK(r_hits > 0);
}

TEST_CASE("inverse operators are deterministic") {
  TermPtr root = parse_term(kArrivalRoot);
  TermPtr g = parse_term("λx. tuple(x,earl)");
  auto a = inverse_l(root, g);
  auto b = inverse_l(root, g);
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(canon_key(*a) == canon_key(*b));
  auto ea = enumerate_inverse_l(root, g);
  auto eb = enumerate_inverse_l(root, g);
  REQUIRE(ea.size() == eb.size());
  for (size_t i = 0; i < ea.size(); ++i) CHECK(canon_key(ea[i]) == canon_key(eb[i]));
}

} // TEST_SUITE
