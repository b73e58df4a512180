#include "logigram/category.hpp"

#include <cctype>

namespace logigram {

CatPtr cat_atom(std::string name) {
  auto c = std::make_shared<Category>();
  c->k = Category::Atom;
  c->name = std::move(name);
  return c;
}

CatPtr cat_fwd(CatPtr res, CatPtr arg) {
  auto c = std::make_shared<Category>();
  c->k = Category::Fwd;
  c->res = std::move(res);
  c->arg = std::move(arg);
  return c;
}

CatPtr cat_bwd(CatPtr res, CatPtr arg) {
  auto c = std::make_shared<Category>();
  c->k = Category::Bwd;
  c->res = std::move(res);
  c->arg = std::move(arg);
  return c;
}

bool cat_eq(const CatPtr& a, const CatPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->k != b->k) return false;
  if (a->k == Category::Atom) return a->name == b->name;
  return cat_eq(a->res, b->res) && cat_eq(a->arg, b->arg);
}

namespace {

struct CatParser {
  const std::string& s;
  size_t i = 0;

  explicit CatParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  }

  CatPtr parse_primary() {
    skip_ws();
    if (i >= s.size()) throw ParseError("category: unexpected end of input");
    if (s[i] == '(') {
      ++i;
      CatPtr c = parse_cat_expr();
      skip_ws();
      if (i >= s.size() || s[i] != ')') throw ParseError("category: missing ')'");
      ++i;
      return c;
    }
    size_t start = i;
    while (i < s.size() &&
           (isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      ++i;
    if (i == start) throw ParseError(std::string("category: unexpected '") + s[i] + "'");
    return cat_atom(s.substr(start, i - start));
  }

  CatPtr parse_cat_expr() {
    CatPtr left = parse_primary();
    for (;;) {
      skip_ws();
      if (i < s.size() && s[i] == '/') {
        ++i;
        left = cat_fwd(left, parse_primary());
      } else if (i < s.size() && s[i] == '\\') {
        ++i;
        left = cat_bwd(left, parse_primary());
      } else {
        return left;
      }
    }
  }

  CatPtr parse() {
    CatPtr c = parse_cat_expr();
    skip_ws();
    if (i != s.size()) throw ParseError("category: trailing input: " + s.substr(i));
    return c;
  }
};

void print_rec(const CatPtr& c, std::string& out) {
  if (c->k == Category::Atom) {
    out += c->name;
    return;
  }
  auto wrapped = [&out](const CatPtr& p) {
    if (p->k == Category::Atom) {
      out += p->name;
    } else {
      out += '(';
      print_rec(p, out);
      out += ')';
    }
  };
  wrapped(c->res);
  out += c->k == Category::Fwd ? '/' : '\\';
  wrapped(c->arg);
}

} // namespace

CatPtr parse_cat(const std::string& text) { return CatParser(text).parse(); }

std::string print_cat(const CatPtr& c) {
  std::string out;
  print_rec(c, out);
  return out;
}

} // namespace logigram
