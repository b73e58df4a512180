#ifndef LOGIGRAM_LAMBDA_HPP
#define LOGIGRAM_LAMBDA_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace logigram {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TypeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Term language: lambda calculus over logic-program fragments.
// Cst covers domain constants, integers and logic variables (capitalized);
// only Var is touched by substitution.  Terms are immutable shared DAGs.
enum class Kind { Var, Cst, App, Abs, Off, Atm, Cmp, Conj, Constr };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Kind kind;
  std::string name;             // Var/Cst name, Atm predicate, Cmp operator
  TermPtr fun;                  // App fun, Abs body, Off base, Cmp lhs
  TermPtr arg;                  // App arg, Cmp rhs
  int delta = 0;                // Off displacement
  bool naf = false;             // Atm negation-as-failure
  std::vector<TermPtr> items;   // Atm args, Conj items, Constr body
};

TermPtr var(std::string name);
TermPtr cst(std::string name);
TermPtr app(TermPtr f, TermPtr a);
TermPtr abs(std::string v, TermPtr body);
TermPtr off(TermPtr base, int delta);
TermPtr atm(std::string pred, std::vector<TermPtr> args, bool naf = false);
TermPtr cmp(TermPtr lhs, std::string op, TermPtr rhs);
TermPtr conj(std::vector<TermPtr> items);
TermPtr constr(std::vector<TermPtr> body);

bool is_logic_var(const std::string& name);   // capitalized identifier
bool is_integer(const std::string& name);

// ---- types ----------------------------------------------------------------
// Two base types: individuals and rule fragments.  Unification-based
// inference; λx.x stays polymorphic via fresh type variables.
struct Type;
using TypePtr = std::shared_ptr<const Type>;
struct Type {
  enum K { Ind, Rule, Arrow, Hole } k;
  TypePtr a, b;  // Arrow
  int id = 0;    // Hole
};
TypePtr type_ind();
TypePtr type_rule();
TypePtr type_arrow(TypePtr a, TypePtr b);
std::string print_type(const TypePtr& t);

// Infers the principal type; throws TypeError when no typing exists.
TypePtr infer_type(const TermPtr& t);
// Non-throwing variant: nullopt when no typing exists.
std::optional<TypePtr> try_infer(const TermPtr& t);
bool well_typed(const TermPtr& t);

// Result type of applying a function of type `fn` to an argument of type
// `arg`, or nullopt when the application cannot type.  Hole ids on the two
// sides are treated as independent (each infer_type numbers from zero).
std::optional<TypePtr> apply_type(const TypePtr& fn, const TypePtr& arg);

// ---- operations ------------------------------------------------------------
std::set<std::string> free_vars(const TermPtr& t);

// Pre-order subterm enumeration, the term itself first.
std::vector<TermPtr> subterms(const TermPtr& t);

// Capture-avoiding substitution of `value` for free Var `name`.
TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& value);

// Normal-order beta-normalization.  Conjunctions appearing as body items are
// spliced into the enclosing body; offsets fold.  Guarded by a step cap.
TermPtr normalize(const TermPtr& t);

// Type-checked application: infers types, rejects ill-typed combinations with
// TypeError, then returns normalize(app(f, a)).
TermPtr apply(const TermPtr& f, const TermPtr& a);

// Alpha-equivalence.  Constr and Conj bodies compare as multisets, so body
// order never separates two terms (logic conjunction is unordered).
bool alpha_eq(const TermPtr& a, const TermPtr& b);

// Canonical key: binder-index printing, bodies sorted; equal keys for
// alpha_eq terms, usable as a dedup hash.
std::string canon_key(const TermPtr& t);

// ---- syntax ----------------------------------------------------------------
// Canonical printer: `λx. body`, tight applications `z@I`, spaced comparisons
// `X != Y-1`, constraints `:- a, b.`, parenthesized conjunctions `(a, b)`.
std::string print_term(const TermPtr& t);

// Accepts the canonical syntax plus `\` for λ, `≠`/`==` comparison spellings
// and arbitrary spacing.  Identifier occurrences bound by an enclosing λ
// become Var, everything else Cst.
TermPtr parse_term(const std::string& text);

} // namespace logigram

#endif
