#ifndef LOGIGRAM_ASP_HPP
#define LOGIGRAM_ASP_HPP

#include <optional>
#include <string>
#include <vector>

#include "logigram/lambda.hpp"

namespace logigram {

// Ground-program fragment for grid puzzles: facts, choice generation,
// integrity constraints, and a small set of defined/background predicates.

struct AspTerm {
  enum K { Sym, Num, Var, Range } k = Sym;
  std::string name;  // Sym/Var
  long num = 0;      // Num
  long lo = 0, hi = 0;  // Range
  int delta = 0;     // printed as +d / -d (comparisons only in practice)
};

AspTerm asp_sym(std::string name);
AspTerm asp_num(long v);
AspTerm asp_var(std::string name, int delta = 0);
AspTerm asp_range(long lo, long hi);
bool asp_term_eq(const AspTerm& a, const AspTerm& b);

struct Literal {
  bool is_compare = false;
  // atom form
  std::string pred;
  std::vector<AspTerm> args;
  bool naf = false;
  // comparison form: lhs op rhs, op in {=, !=, <, >, <=, >=}
  AspTerm lhs, rhs;
  std::string op;
};

Literal lit_atom(std::string pred, std::vector<AspTerm> args, bool naf = false);
Literal lit_cmp(AspTerm lhs, std::string op, AspTerm rhs);

struct AspRule {
  enum K { Fact, Constraint, Choice, Def } kind = Fact;
  Literal head;                    // Fact, Def
  std::vector<Literal> body;       // Constraint, Def, Choice guard
  // choice form: lo { elem : cond, ... } hi :- body.
  long lo = 0, hi = 0;
  Literal choice_elem;
  std::vector<Literal> choice_cond;
};

struct AspProgram {
  std::vector<AspRule> rules;
};

// Puzzle domain: element types with equally sized element lists; one type is
// the rank (ordering) type whose values pin tuples to fixed positions.
struct PuzzleDomain {
  struct TypeRow {
    std::string name;
    std::vector<std::string> elements;
  };
  std::vector<TypeRow> types;
  int rank_index = -1;        // -1: no row was marked; encode falls back to row 0
  bool rank_defaulted = false;
};

int domain_rank(const PuzzleDomain& d);

std::string serialize_term(const AspTerm& t);
std::string serialize_literal(const Literal& l);
std::string serialize_rule(const AspRule& r);
std::string serialize_program(const AspProgram& p);

AspRule parse_rule(const std::string& text);       // throws ParseError
AspProgram parse_program(const std::string& text);

// index/eindex/etype/element facts plus the rank-fixing tuple facts.
AspProgram encode_domain(const PuzzleDomain& d);
// Choice rule generating candidate tuples plus the exclusivity constraint.
AspProgram generation_module();
// notmax/maximum and notmin/minimum definitions.
AspProgram background_module();
// highest/lowest/first defined via the rank type; emitted when clues use them.
AspProgram bridge_module(const std::vector<std::string>& used_preds,
                         const std::string& rank_type_name);
// Full program text for external grounding.
std::string encode_program(const PuzzleDomain& d, const std::vector<AspRule>& clues);

// Bridge between normalized constraint terms and rules.  Terms use
// capitalized constants as ASP variables.
AspRule rule_from_term(const TermPtr& t);          // throws DomainError
TermPtr term_from_rule(const AspRule& r);

// Body-as-multiset comparison under a consistent variable bijection;
// = and != additionally match with flipped operands.
bool rule_equivalent(const AspRule& a, const AspRule& b);
// Canonical first-occurrence variable renaming, then literal string equality.
bool rule_exact(const AspRule& a, const AspRule& b);

// Diagnostics for translated rules: unknown predicates, foreign symbols.
std::vector<std::string> validate_rule(const AspRule& r, const PuzzleDomain& d);

} // namespace logigram

#endif
