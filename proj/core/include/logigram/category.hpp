#ifndef LOGIGRAM_CATEGORY_HPP
#define LOGIGRAM_CATEGORY_HPP

#include <memory>
#include <string>

#include "logigram/lambda.hpp"

namespace logigram {

// Combinatory categories: atoms (S, NP, N, ...) and slashed functors.
// X/Y consumes Y to its right, X\Y consumes Y to its left.
struct Category;
using CatPtr = std::shared_ptr<const Category>;

struct Category {
  enum K { Atom, Fwd, Bwd } k;
  std::string name;  // Atom only
  CatPtr res, arg;   // Fwd/Bwd only
};

CatPtr cat_atom(std::string name);
CatPtr cat_fwd(CatPtr res, CatPtr arg);
CatPtr cat_bwd(CatPtr res, CatPtr arg);

bool cat_eq(const CatPtr& a, const CatPtr& b);

// Slashes are left-associative on input: S\NP/NP reads as (S\NP)/NP.
// Printing parenthesizes every compound sub-category.
CatPtr parse_cat(const std::string& text);
std::string print_cat(const CatPtr& c);

} // namespace logigram

#endif
