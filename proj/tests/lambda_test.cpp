#include "doctest.h"

#include <set>

#include "logigram/lambda.hpp"

#include "term_gen.hpp"

using namespace logigram;

namespace {
const char* kArrivalRoot =
    ":- tuple(I,earl), tuple(J,rooster), tuple(I,X), tuple(J,Y), "
    "etype(A,rank), element(A,X), element(A,Y), X != Y-1.";
}

TEST_SUITE("lambda") {

TEST_CASE("apply beta-reduces and substitutes") {
  CHECK(alpha_eq(logigram::apply(parse_term("λx. tuple(x,earl)"), parse_term("I")),
                 parse_term("tuple(I,earl)")));
  CHECK(alpha_eq(logigram::apply(parse_term("λx. x"), parse_term("tuple(J,rooster)")),
                 parse_term("tuple(J,rooster)")));
  TermPtr cmp2 = parse_term("λx. λy. x != y-1");
  CHECK(alpha_eq(logigram::apply(logigram::apply(cmp2, parse_term("X")), parse_term("Y")),
                 parse_term("X != Y-1")));
}

TEST_CASE("apply rejects ill-typed combinations") {
  CHECK_THROWS_AS(logigram::apply(parse_term("earl"), parse_term("rooster")), TypeError);
  // an individual where a rule fragment is required
  CHECK_THROWS_AS(logigram::apply(parse_term("λx. (x@I, tuple(J,cow))"), parse_term("earl")),
                  TypeError);
}

TEST_CASE("normalize reaches beta-normal form and is idempotent") {
  CHECK(alpha_eq(normalize(app(parse_term("λx. x"), parse_term("λy. y"))),
                 parse_term("λy. y")));
  TermPtr already = parse_term("λx. tuple(x,earl)");
  CHECK(normalize(already).get() == already.get());  // normal forms are shared back
  TermPtr t = app(parse_term("λz. :- z@I, tuple(J,rooster)."), parse_term("λx. tuple(x,earl)"));
  TermPtr n1 = normalize(t);
  CHECK(alpha_eq(n1, parse_term(":- tuple(I,earl), tuple(J,rooster).")));
  CHECK(normalize(n1).get() == n1.get());
}

TEST_CASE("normalize splices nested conjunctions into bodies") {
  TermPtr nested = constr({conj({parse_term("tuple(I,earl)"), parse_term("tuple(J,cow)")}),
                           parse_term("I != J")});
  TermPtr flat = normalize(nested);
  REQUIRE(flat->kind == Kind::Constr);
  CHECK(flat->items.size() == 3);
  CHECK(alpha_eq(flat, parse_term(":- tuple(I,earl), tuple(J,cow), I != J.")));
  // singleton conjunction collapses to its item
  CHECK(normalize(conj({parse_term("tuple(I,earl)")}))->kind == Kind::Atm);
}

TEST_CASE("offsets fold and vanish at zero") {
  TermPtr t = off(off(parse_term("Y"), 1), 2);
  TermPtr n = normalize(t);
  REQUIRE(n->kind == Kind::Off);
  CHECK(n->delta == 3);
  CHECK(normalize(off(parse_term("Y"), 0))->kind == Kind::Cst);
}

TEST_CASE("normalization is step-capped on divergent untyped terms") {
  TermPtr omega = app(abs("x", app(var("x"), var("x"))),
                      abs("x", app(var("x"), var("x"))));
  CHECK_THROWS_AS(normalize(omega), DomainError);
}

TEST_CASE("substitution avoids capture") {
  // (λy. x@y)[x := y]  must not capture the free y
  TermPtr body = abs("y", app(var("x"), var("y")));
  TermPtr out = substitute(body, "x", var("y"));
  CHECK(alpha_eq(out, abs("z", app(var("y"), var("z")))));
  CHECK(free_vars(out).count("y") == 1);
  // no-op substitutions return the original node
  CHECK(substitute(body, "q", var("w")).get() == body.get());
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse_term("λx. x"), parse_term("λy. y")));
  CHECK(alpha_eq(parse_term("λx. tuple(x,earl)"), parse_term("λz. tuple(z,earl)")));
  CHECK_FALSE(alpha_eq(parse_term("λx. tuple(x,earl)"), parse_term("λx. tuple(x,ivana)")));
  // constraint bodies compare as multisets
  CHECK(alpha_eq(parse_term(":- tuple(I,earl), tuple(J,cow)."),
                 parse_term(":- tuple(J,cow), tuple(I,earl).")));
  CHECK_FALSE(alpha_eq(parse_term(":- tuple(I,earl)."), parse_term(":- tuple(J,earl).")));
}

TEST_CASE("canonical keys agree exactly with alpha classes") {
  CHECK(canon_key(parse_term("λx. x")) == canon_key(parse_term("λy. y")));
  CHECK(canon_key(parse_term(":- tuple(I,earl), tuple(J,cow).")) ==
        canon_key(parse_term(":- tuple(J,cow), tuple(I,earl).")));
  CHECK(canon_key(parse_term("λx. tuple(x,earl)")) !=
        canon_key(parse_term("λx. tuple(x,ivana)")));
}

TEST_CASE("subterms enumerate pre-order") {
  auto subs = subterms(parse_term("tuple(I,earl)"));
  auto has = [&subs](const char* s) {
    TermPtr t = parse_term(s);
    for (auto& u : subs)
      if (alpha_eq(u, t)) return true;
    return false;
  };
  CHECK(has("earl"));
  CHECK(has("I"));
  CHECK(subterms(parse_term("λx. x")).size() == 2);
  auto root_subs = subterms(parse_term(kArrivalRoot));
  bool found = false;
  for (auto& u : root_subs)
    if (alpha_eq(u, parse_term("X != Y-1"))) found = true;
  CHECK(found);
}

TEST_CASE("types: identity is polymorphic, self-application is untypable") {
  TypePtr idt = infer_type(parse_term("λx. x"));
  REQUIRE(idt->k == Type::Arrow);
  CHECK(print_type(idt->a) == print_type(idt->b));
  TermPtr selfapp = abs("x", app(var("x"), var("x")));
  CHECK_FALSE(well_typed(selfapp));
  CHECK_FALSE(try_infer(selfapp).has_value());
  CHECK_THROWS_AS(infer_type(selfapp), TypeError);
}

TEST_CASE("apply_type composes independently inferred types") {
  TypePtr fn = type_arrow(type_ind(), type_rule());
  CHECK(apply_type(fn, type_ind()).has_value());
  CHECK(print_type(*apply_type(fn, type_ind())) == print_type(type_rule()));
  CHECK_FALSE(apply_type(fn, type_rule()).has_value());
  CHECK_FALSE(apply_type(type_ind(), type_ind()).has_value());
  // hole ids from separate inferences must not clash
  TypePtr id1 = infer_type(parse_term("λx. x"));
  TypePtr id2 = infer_type(parse_term("λx. x"));
  auto r = apply_type(id1, id2);
  REQUIRE(r.has_value());
  CHECK((*r)->k == Type::Arrow);
}

TEST_CASE("apply_type agrees with whole-term inference on closed terms") {
  testgen::TermGen gen(11);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    TermPtr f, g;
    if (!gen.next_pair(f, g)) continue;
    auto tf = try_infer(f);
    auto tg = try_infer(g);
    REQUIRE(tf.has_value());
    REQUIRE(tg.has_value());
    CHECK(apply_type(*tf, *tg).has_value());
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("free variables never grow under normalization") {
  testgen::TermGen gen(5);
  for (int i = 0; i < 300; ++i) {
    TermPtr f, g;
    if (!gen.next_pair(f, g)) continue;
    TermPtr t = app(f, g);
    std::set<std::string> before = free_vars(t);
    TermPtr n;
    try {
      n = normalize(t);
    } catch (const DomainError&) {
      continue;
    }
    for (auto& v : free_vars(n)) CHECK(before.count(v) == 1);
  }
}

TEST_CASE("printer and parser round-trip canonical syntax") {
  const char* samples[] = {
      "λx. tuple(x,earl)",
      "λx. λy. λz. x@(y != z-1)",
      kArrivalRoot,
      ":- tuple(I,hanson), tuple(J,3989), tuple(I,X), tuple(J,Y), "
      "etype(A,rank), element(A,X), element(A,Y), X > Y, I != J.",
      "λz. z@(λx. λy. :- x@I, y@I.)",
      "(tuple(I,X), highest(X))",
      "λx. not tuple(x,earl)",
  };
  for (auto* s : samples) {
    TermPtr t = parse_term(s);
    CHECK(print_term(t) == s);
    CHECK(alpha_eq(parse_term(print_term(t)), t));
  }
  // alternative spellings normalize
  CHECK(print_term(parse_term("\\x. x")) == "λx. x");
  CHECK(alpha_eq(parse_term("X \xe2\x89\xa0 Y-1"), parse_term("X != Y-1")));
  CHECK(print_term(parse_term("X == Y")) == "X = Y");
}

TEST_CASE("lowercase identifiers bind only under an enclosing lambda") {
  TermPtr t = parse_term("λx. x@y");
  REQUIRE(t->kind == Kind::Abs);
  const Term& body = *t->fun;
  CHECK(body.fun->kind == Kind::Var);
  CHECK(body.arg->kind == Kind::Cst);
  CHECK(is_logic_var("X"));
  CHECK_FALSE(is_logic_var("x"));
  CHECK(is_integer("3989"));
  CHECK_FALSE(is_integer("x1"));
}

TEST_CASE("table-1 root normalizes to itself and round-trips") {
  TermPtr root = parse_term(kArrivalRoot);
  CHECK(normalize(root).get() == root.get());
  CHECK(print_term(root) == kArrivalRoot);
}

} // TEST_SUITE
