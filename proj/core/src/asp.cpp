#include "logigram/asp.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <set>

namespace logigram {

AspTerm asp_sym(std::string name) {
  AspTerm t;
  t.k = AspTerm::Sym;
  t.name = std::move(name);
  return t;
}

AspTerm asp_num(long v) {
  AspTerm t;
  t.k = AspTerm::Num;
  t.num = v;
  return t;
}

AspTerm asp_var(std::string name, int delta) {
  AspTerm t;
  t.k = AspTerm::Var;
  t.name = std::move(name);
  t.delta = delta;
  return t;
}

AspTerm asp_range(long lo, long hi) {
  AspTerm t;
  t.k = AspTerm::Range;
  t.lo = lo;
  t.hi = hi;
  return t;
}

bool asp_term_eq(const AspTerm& a, const AspTerm& b) {
  if (a.k != b.k) return false;
  switch (a.k) {
    case AspTerm::Sym: return a.name == b.name && a.delta == b.delta;
    case AspTerm::Num: return a.num == b.num && a.delta == b.delta;
    case AspTerm::Var: return a.name == b.name && a.delta == b.delta;
    case AspTerm::Range: return a.lo == b.lo && a.hi == b.hi;
  }
  return false;
}

Literal lit_atom(std::string pred, std::vector<AspTerm> args, bool naf) {
  Literal l;
  l.pred = std::move(pred);
  l.args = std::move(args);
  l.naf = naf;
  return l;
}

Literal lit_cmp(AspTerm lhs, std::string op, AspTerm rhs) {
  Literal l;
  l.is_compare = true;
  l.lhs = std::move(lhs);
  l.op = std::move(op);
  l.rhs = std::move(rhs);
  return l;
}

int domain_rank(const PuzzleDomain& d) {
  if (d.rank_index >= 0 && d.rank_index < static_cast<int>(d.types.size())) return d.rank_index;
  return 0;
}

// ---- serialization ------------------------------------------------------------

std::string serialize_term(const AspTerm& t) {
  std::string out;
  switch (t.k) {
    case AspTerm::Sym: out = t.name; break;
    case AspTerm::Num: out = std::to_string(t.num); break;
    case AspTerm::Var: out = t.name; break;
    case AspTerm::Range: return std::to_string(t.lo) + ".." + std::to_string(t.hi);
  }
  if (t.delta > 0) out += "+" + std::to_string(t.delta);
  if (t.delta < 0) out += std::to_string(t.delta);
  return out;
}

std::string serialize_literal(const Literal& l) {
  if (l.is_compare) return serialize_term(l.lhs) + l.op + serialize_term(l.rhs);
  std::string out;
  if (l.naf) out += "not ";
  out += l.pred;
  if (!l.args.empty()) {
    out += '(';
    for (size_t i = 0; i < l.args.size(); ++i) {
      if (i) out += ',';
      out += serialize_term(l.args[i]);
    }
    out += ')';
  }
  return out;
}

static std::string serialize_body(const std::vector<Literal>& body) {
  std::string out;
  for (size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += serialize_literal(body[i]);
  }
  return out;
}

std::string serialize_rule(const AspRule& r) {
  switch (r.kind) {
    case AspRule::Fact: return serialize_literal(r.head) + ".";
    case AspRule::Constraint: return ":- " + serialize_body(r.body) + ".";
    case AspRule::Def:
      return serialize_literal(r.head) + " :- " + serialize_body(r.body) + ".";
    case AspRule::Choice: {
      std::string out = std::to_string(r.lo) + "{" + serialize_literal(r.choice_elem);
      for (auto& c : r.choice_cond) out += ":" + serialize_literal(c);
      out += "}" + std::to_string(r.hi);
      if (!r.body.empty()) out += " :- " + serialize_body(r.body);
      out += ".";
      return out;
    }
  }
  throw DomainError("serialize_rule: bad kind");
}

std::string serialize_program(const AspProgram& p) {
  std::string out;
  for (auto& r : p.rules) {
    out += serialize_rule(r);
    out += '\n';
  }
  return out;
}

// ---- parsing ------------------------------------------------------------------

namespace {

struct RuleLexer {
  enum T { Ident, Num, ConstrHead, Dot, Comma, LPar, RPar, LBrace, RBrace, Colon,
           DotDot, Cmp, Plus, Minus, Naf, End };
  struct Tok {
    T t;
    std::string text;
    long num = 0;
  };
  std::vector<Tok> toks;
  size_t pos = 0;

  explicit RuleLexer(const std::string& s) {
    size_t i = 0;
    auto starts = [&](const char* p) {
      return s.compare(i, strlen(p), p) == 0;
    };
    while (i < s.size()) {
      unsigned char c = s[i];
      if (isspace(c)) {
        ++i;
        continue;
      }
      if (c == '%') {  // comment to end of line
        while (i < s.size() && s[i] != '\n') ++i;
        continue;
      }
      if (starts(":-")) {
        toks.push_back({ConstrHead, ":-"});
        i += 2;
        continue;
      }
      if (starts("..")) {
        toks.push_back({DotDot, ".."});
        i += 2;
        continue;
      }
      if (starts("\xe2\x89\xa0")) {  // ≠
        toks.push_back({Cmp, "!="});
        i += 3;
        continue;
      }
      if (starts("!=") || starts("<=") || starts(">=") || starts("==")) {
        toks.push_back({Cmp, starts("==") ? "=" : s.substr(i, 2)});
        i += 2;
        continue;
      }
      if (c == '=' || c == '<' || c == '>') {
        toks.push_back({Cmp, std::string(1, s[i])});
        ++i;
        continue;
      }
      switch (c) {
        case '.': toks.push_back({Dot, "."}); ++i; continue;
        case ',': toks.push_back({Comma, ","}); ++i; continue;
        case '(': toks.push_back({LPar, "("}); ++i; continue;
        case ')': toks.push_back({RPar, ")"}); ++i; continue;
        case '{': toks.push_back({LBrace, "{"}); ++i; continue;
        case '}': toks.push_back({RBrace, "}"}); ++i; continue;
        case ':': toks.push_back({Colon, ":"}); ++i; continue;
        case '+': toks.push_back({Plus, "+"}); ++i; continue;
        case '-': toks.push_back({Minus, "-"}); ++i; continue;
        default: break;
      }
      if (isdigit(c)) {
        size_t j = i;
        while (j < s.size() && isdigit(static_cast<unsigned char>(s[j]))) ++j;
        Tok t{Num, s.substr(i, j - i)};
        t.num = std::stol(t.text);
        toks.push_back(t);
        i = j;
        continue;
      }
      if (isalpha(c) || c == '_') {
        size_t j = i;
        while (j < s.size() &&
               (isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          ++j;
        std::string w = s.substr(i, j - i);
        toks.push_back({w == "not" ? Naf : Ident, w});
        i = j;
        continue;
      }
      throw ParseError(std::string("rule: unexpected character '") + s[i] + "'");
    }
    toks.push_back({End, ""});
  }

  const Tok& peek(size_t k = 0) const { return toks[std::min(pos + k, toks.size() - 1)]; }
  Tok next() { return toks[pos == toks.size() - 1 ? pos : pos++]; }
  void expect(T t, const char* what) {
    if (peek().t != t) throw ParseError(std::string("rule: expected ") + what);
    next();
  }
};

int parse_delta(RuleLexer& lx) {
  if (lx.peek().t == RuleLexer::Plus && lx.peek(1).t == RuleLexer::Num) {
    lx.next();
    return static_cast<int>(lx.next().num);
  }
  if (lx.peek().t == RuleLexer::Minus && lx.peek(1).t == RuleLexer::Num) {
    lx.next();
    return -static_cast<int>(lx.next().num);
  }
  return 0;
}

AspTerm parse_asp_term(RuleLexer& lx) {
  auto& t = lx.peek();
  if (t.t == RuleLexer::Minus && lx.peek(1).t == RuleLexer::Num) {
    lx.next();
    long v = lx.next().num;
    return asp_num(-v + parse_delta(lx));
  }
  if (t.t == RuleLexer::Num) {
    long v = lx.next().num;
    if (lx.peek().t == RuleLexer::DotDot) {
      lx.next();
      if (lx.peek().t != RuleLexer::Num) throw ParseError("rule: range needs upper bound");
      long hi = lx.next().num;
      return asp_range(v, hi);
    }
    return asp_num(v + parse_delta(lx));
  }
  if (t.t == RuleLexer::Ident) {
    std::string w = lx.next().text;
    int d = parse_delta(lx);
    if (is_logic_var(w)) return asp_var(w, d);
    AspTerm out = asp_sym(w);
    out.delta = d;
    return out;
  }
  throw ParseError("rule: expected term");
}

Literal parse_literal(RuleLexer& lx) {
  bool naf = false;
  if (lx.peek().t == RuleLexer::Naf) {
    lx.next();
    naf = true;
  }
  if (lx.peek().t == RuleLexer::Ident && lx.peek(1).t == RuleLexer::LPar) {
    std::string pred = lx.next().text;
    lx.next();  // (
    std::vector<AspTerm> args;
    if (lx.peek().t != RuleLexer::RPar) {
      args.push_back(parse_asp_term(lx));
      while (lx.peek().t == RuleLexer::Comma) {
        lx.next();
        args.push_back(parse_asp_term(lx));
      }
    }
    lx.expect(RuleLexer::RPar, "')'");
    return lit_atom(pred, std::move(args), naf);
  }
  if (naf) throw ParseError("rule: 'not' must precede an atom");
  AspTerm lhs = parse_asp_term(lx);
  if (lx.peek().t != RuleLexer::Cmp) throw ParseError("rule: expected comparison operator");
  std::string op = lx.next().text;
  AspTerm rhs = parse_asp_term(lx);
  return lit_cmp(std::move(lhs), std::move(op), std::move(rhs));
}

std::vector<Literal> parse_body(RuleLexer& lx) {
  std::vector<Literal> body;
  body.push_back(parse_literal(lx));
  while (lx.peek().t == RuleLexer::Comma) {
    lx.next();
    body.push_back(parse_literal(lx));
  }
  return body;
}

AspRule parse_one_rule(RuleLexer& lx) {
  AspRule r;
  if (lx.peek().t == RuleLexer::ConstrHead) {
    lx.next();
    r.kind = AspRule::Constraint;
    r.body = parse_body(lx);
    lx.expect(RuleLexer::Dot, "'.'");
    return r;
  }
  if (lx.peek().t == RuleLexer::Num && lx.peek(1).t == RuleLexer::LBrace) {
    r.kind = AspRule::Choice;
    r.lo = lx.next().num;
    lx.next();  // {
    r.choice_elem = parse_literal(lx);
    while (lx.peek().t == RuleLexer::Colon) {
      lx.next();
      r.choice_cond.push_back(parse_literal(lx));
    }
    lx.expect(RuleLexer::RBrace, "'}'");
    if (lx.peek().t != RuleLexer::Num) throw ParseError("rule: choice needs upper bound");
    r.hi = lx.next().num;
    if (lx.peek().t == RuleLexer::ConstrHead) {
      lx.next();
      r.body = parse_body(lx);
    }
    lx.expect(RuleLexer::Dot, "'.'");
    return r;
  }
  Literal head = parse_literal(lx);
  if (head.is_compare || head.naf) throw ParseError("rule: head must be a plain atom");
  r.head = std::move(head);
  if (lx.peek().t == RuleLexer::ConstrHead) {
    lx.next();
    r.kind = AspRule::Def;
    r.body = parse_body(lx);
  } else {
    r.kind = AspRule::Fact;
  }
  lx.expect(RuleLexer::Dot, "'.'");
  return r;
}

} // namespace

AspRule parse_rule(const std::string& text) {
  RuleLexer lx(text);
  AspRule r = parse_one_rule(lx);
  if (lx.peek().t != RuleLexer::End) throw ParseError("rule: trailing input");
  return r;
}

AspProgram parse_program(const std::string& text) {
  RuleLexer lx(text);
  AspProgram p;
  while (lx.peek().t != RuleLexer::End) p.rules.push_back(parse_one_rule(lx));
  return p;
}

// ---- domain encoding ------------------------------------------------------------

static AspTerm element_term(const std::string& e) {
  if (e.empty()) return asp_sym(e);
  bool digits = true;
  size_t start = e[0] == '-' ? 1 : 0;
  if (start == e.size()) digits = false;
  for (size_t i = start; i < e.size() && digits; ++i)
    if (!isdigit(static_cast<unsigned char>(e[i]))) digits = false;
  return digits ? asp_num(std::stol(e)) : asp_sym(e);
}

AspProgram encode_domain(const PuzzleDomain& d) {
  if (d.types.empty()) throw DomainError("domain: no types");
  size_t n = d.types[0].elements.size();
  for (auto& t : d.types)
    if (t.elements.size() != n) throw DomainError("domain: unequal type sizes");
  AspProgram p;
  AspRule idx;
  idx.head = lit_atom("index", {asp_range(1, static_cast<long>(d.types.size()))});
  p.rules.push_back(idx);
  AspRule eidx;
  eidx.head = lit_atom("eindex", {asp_range(1, static_cast<long>(n))});
  p.rules.push_back(eidx);
  for (size_t i = 0; i < d.types.size(); ++i) {
    AspRule et;
    et.head = lit_atom("etype", {asp_num(static_cast<long>(i + 1)), asp_sym(d.types[i].name)});
    p.rules.push_back(et);
    for (auto& e : d.types[i].elements) {
      AspRule el;
      el.head = lit_atom("element", {asp_num(static_cast<long>(i + 1)), element_term(e)});
      p.rules.push_back(el);
    }
  }
  auto& rank = d.types[domain_rank(d)];
  for (size_t j = 0; j < rank.elements.size(); ++j) {
    AspRule tp;
    tp.head = lit_atom("tuple",
                       {asp_num(static_cast<long>(j + 1)), element_term(rank.elements[j])});
    p.rules.push_back(tp);
  }
  return p;
}

AspProgram generation_module() {
  AspProgram p;
  AspRule choice;
  choice.kind = AspRule::Choice;
  choice.lo = 1;
  choice.hi = 1;
  choice.choice_elem = lit_atom("tuple", {asp_var("I"), asp_var("X")});
  choice.choice_cond.push_back(lit_atom("element", {asp_var("A"), asp_var("X")}));
  choice.body.push_back(lit_atom("eindex", {asp_var("I")}));
  choice.body.push_back(lit_atom("index", {asp_var("A")}));
  p.rules.push_back(choice);
  AspRule excl;
  excl.kind = AspRule::Constraint;
  excl.body.push_back(lit_atom("tuple", {asp_var("I"), asp_var("X")}));
  excl.body.push_back(lit_atom("tuple", {asp_var("J"), asp_var("X")}));
  excl.body.push_back(lit_atom("element", {asp_var("K"), asp_var("X")}));
  excl.body.push_back(lit_cmp(asp_var("I"), "!=", asp_var("J")));
  p.rules.push_back(excl);
  return p;
}

AspProgram background_module() {
  AspProgram p;
  AspRule notmax;
  notmax.kind = AspRule::Def;
  notmax.head = lit_atom("notmax", {asp_var("A"), asp_var("X")});
  notmax.body = {lit_atom("element", {asp_var("A"), asp_var("X")}),
                 lit_atom("element", {asp_var("A"), asp_var("Y")}),
                 lit_cmp(asp_var("X"), "!=", asp_var("Y")),
                 lit_cmp(asp_var("Y"), ">", asp_var("X"))};
  p.rules.push_back(notmax);
  AspRule maximum;
  maximum.kind = AspRule::Def;
  maximum.head = lit_atom("maximum", {asp_var("A"), asp_var("X")});
  maximum.body = {lit_atom("notmax", {asp_var("A"), asp_var("X")}, true),
                  lit_atom("element", {asp_var("A"), asp_var("X")})};
  p.rules.push_back(maximum);
  AspRule notmin;
  notmin.kind = AspRule::Def;
  notmin.head = lit_atom("notmin", {asp_var("A"), asp_var("X")});
  notmin.body = {lit_atom("element", {asp_var("A"), asp_var("X")}),
                 lit_atom("element", {asp_var("A"), asp_var("Y")}),
                 lit_cmp(asp_var("X"), "!=", asp_var("Y")),
                 lit_cmp(asp_var("Y"), "<", asp_var("X"))};
  p.rules.push_back(notmin);
  AspRule minimum;
  minimum.kind = AspRule::Def;
  minimum.head = lit_atom("minimum", {asp_var("A"), asp_var("X")});
  minimum.body = {lit_atom("notmin", {asp_var("A"), asp_var("X")}, true),
                  lit_atom("element", {asp_var("A"), asp_var("X")})};
  p.rules.push_back(minimum);
  return p;
}

AspProgram bridge_module(const std::vector<std::string>& used_preds,
                         const std::string& rank_type_name) {
  AspProgram p;
  auto used = [&used_preds](const char* name) {
    return std::find(used_preds.begin(), used_preds.end(), name) != used_preds.end();
  };
  auto bridge = [&rank_type_name](const char* name, const char* base) {
    AspRule r;
    r.kind = AspRule::Def;
    r.head = lit_atom(name, {asp_var("X")});
    r.body = {lit_atom("etype", {asp_var("A"), asp_sym(rank_type_name)}),
              lit_atom(base, {asp_var("A"), asp_var("X")})};
    return r;
  };
  if (used("highest")) p.rules.push_back(bridge("highest", "maximum"));
  if (used("lowest")) p.rules.push_back(bridge("lowest", "minimum"));
  if (used("first")) p.rules.push_back(bridge("first", "minimum"));
  return p;
}

std::string encode_program(const PuzzleDomain& d, const std::vector<AspRule>& clues) {
  std::string out = serialize_program(encode_domain(d));
  out += serialize_program(generation_module());
  out += serialize_program(background_module());
  std::set<std::string> used;
  for (auto& r : clues)
    for (auto& l : r.body)
      if (!l.is_compare) used.insert(l.pred);
  std::vector<std::string> used_v(used.begin(), used.end());
  out += serialize_program(bridge_module(used_v, d.types[domain_rank(d)].name));
  AspProgram cl;
  cl.rules = clues;
  out += serialize_program(cl);
  return out;
}

// ---- term bridge ------------------------------------------------------------------

static AspTerm asp_from_operand(const TermPtr& t) {
  int delta = 0;
  TermPtr base = t;
  if (base->kind == Kind::Off) {
    delta = base->delta;
    base = base->fun;
  }
  if (base->kind != Kind::Cst)
    throw DomainError("rule_from_term: argument is not a constant: " + print_term(t));
  if (is_integer(base->name)) {
    AspTerm n = asp_num(std::stol(base->name));
    n.num += delta;  // fold numeric offsets
    return n;
  }
  if (is_logic_var(base->name)) return asp_var(base->name, delta);
  if (delta != 0) throw DomainError("rule_from_term: offset on symbol " + base->name);
  return asp_sym(base->name);
}

AspRule rule_from_term(const TermPtr& t) {
  if (t->kind != Kind::Constr)
    throw DomainError("rule_from_term: not a constraint: " + print_term(t));
  AspRule r;
  r.kind = AspRule::Constraint;
  for (auto& item : t->items) {
    if (item->kind == Kind::Atm) {
      std::vector<AspTerm> args;
      for (auto& a : item->items) args.push_back(asp_from_operand(a));
      r.body.push_back(lit_atom(item->name, std::move(args), item->naf));
    } else if (item->kind == Kind::Cmp) {
      r.body.push_back(
          lit_cmp(asp_from_operand(item->fun), item->name, asp_from_operand(item->arg)));
    } else {
      throw DomainError("rule_from_term: bad body item: " + print_term(item));
    }
  }
  return r;
}

static TermPtr term_from_asp(const AspTerm& t) {
  TermPtr base;
  switch (t.k) {
    case AspTerm::Sym: base = cst(t.name); break;
    case AspTerm::Num: base = cst(std::to_string(t.num)); break;
    case AspTerm::Var: base = cst(t.name); break;
    case AspTerm::Range: throw DomainError("term_from_rule: range in constraint");
  }
  if (t.delta != 0) return off(base, t.delta);
  return base;
}

TermPtr term_from_rule(const AspRule& r) {
  if (r.kind != AspRule::Constraint)
    throw DomainError("term_from_rule: only constraints map to terms");
  std::vector<TermPtr> items;
  for (auto& l : r.body) {
    if (l.is_compare) {
      items.push_back(cmp(term_from_asp(l.lhs), l.op, term_from_asp(l.rhs)));
    } else {
      std::vector<TermPtr> args;
      for (auto& a : l.args) args.push_back(term_from_asp(a));
      items.push_back(atm(l.pred, std::move(args), l.naf));
    }
  }
  return constr(std::move(items));
}

// ---- equivalence ------------------------------------------------------------------

namespace {

struct VarMap {
  std::map<std::string, std::string> fwd, rev;
  bool bind(const std::string& a, const std::string& b) {
    auto fa = fwd.find(a);
    if (fa != fwd.end()) return fa->second == b;
    auto rb = rev.find(b);
    if (rb != rev.end()) return false;
    fwd[a] = b;
    rev[b] = a;
    return true;
  }
};

bool term_match(const AspTerm& a, const AspTerm& b, VarMap& m) {
  if (a.k != b.k || a.delta != b.delta) return false;
  switch (a.k) {
    case AspTerm::Sym: return a.name == b.name;
    case AspTerm::Num: return a.num == b.num;
    case AspTerm::Var: return m.bind(a.name, b.name);
    case AspTerm::Range: return a.lo == b.lo && a.hi == b.hi;
  }
  return false;
}

bool lit_match(const Literal& a, const Literal& b, VarMap& m) {
  if (a.is_compare != b.is_compare) return false;
  if (a.is_compare) {
    if (a.op != b.op) return false;
    VarMap trial = m;
    if (term_match(a.lhs, b.lhs, trial) && term_match(a.rhs, b.rhs, trial)) {
      m = trial;
      return true;
    }
    if (a.op == "=" || a.op == "!=") {  // symmetric operators match flipped
      VarMap flip = m;
      if (term_match(a.lhs, b.rhs, flip) && term_match(a.rhs, b.lhs, flip)) {
        m = flip;
        return true;
      }
    }
    return false;
  }
  if (a.pred != b.pred || a.naf != b.naf || a.args.size() != b.args.size()) return false;
  VarMap trial = m;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!term_match(a.args[i], b.args[i], trial)) return false;
  m = trial;
  return true;
}

bool body_match(const std::vector<Literal>& a, const std::vector<Literal>& b, size_t i,
                std::vector<bool>& used, VarMap& m) {
  if (i == a.size()) return true;
  for (size_t j = 0; j < b.size(); ++j) {
    if (used[j]) continue;
    VarMap trial = m;
    if (!lit_match(a[i], b[j], trial)) continue;
    used[j] = true;
    if (body_match(a, b, i + 1, used, trial)) {
      m = trial;
      return true;
    }
    used[j] = false;
  }
  return false;
}

} // namespace

bool rule_equivalent(const AspRule& a, const AspRule& b) {
  if (a.kind != b.kind) return false;
  if (a.kind != AspRule::Constraint) return serialize_rule(a) == serialize_rule(b);
  if (a.body.size() != b.body.size()) return false;
  VarMap m;
  std::vector<bool> used(b.body.size(), false);
  return body_match(a.body, b.body, 0, used, m);
}

namespace {

const char* kVarPool[] = {"I", "J", "X", "Y", "A", "B", "K", "L", "M", "N"};

void canon_term(AspTerm& t, std::map<std::string, std::string>& names) {
  if (t.k != AspTerm::Var) return;
  auto it = names.find(t.name);
  if (it == names.end()) {
    std::string fresh = names.size() < 10
                            ? kVarPool[names.size()]
                            : "V" + std::to_string(names.size() - 9);
    it = names.emplace(t.name, fresh).first;
  }
  t.name = it->second;
}

AspRule canon_rule(const AspRule& r) {
  AspRule out = r;
  std::map<std::string, std::string> names;
  auto walk_lit = [&names](Literal& l) {
    if (l.is_compare) {
      canon_term(l.lhs, names);
      canon_term(l.rhs, names);
    } else {
      for (auto& a : l.args) canon_term(a, names);
    }
  };
  walk_lit(out.head);
  walk_lit(out.choice_elem);
  for (auto& l : out.choice_cond) walk_lit(l);
  for (auto& l : out.body) walk_lit(l);
  return out;
}

} // namespace

bool rule_exact(const AspRule& a, const AspRule& b) {
  return serialize_rule(canon_rule(a)) == serialize_rule(canon_rule(b));
}

// ---- validation ------------------------------------------------------------------

std::vector<std::string> validate_rule(const AspRule& r, const PuzzleDomain& d) {
  static const std::map<std::string, std::vector<int>> known = {
      {"tuple", {2}},    {"etype", {2}},  {"element", {2}}, {"index", {1}},
      {"eindex", {1}},   {"highest", {1, 2}}, {"lowest", {1, 2}},
      {"first", {1, 2}}, {"maximum", {1, 2}}, {"minimum", {1, 2}},
      {"notmax", {2}},   {"notmin", {2}}};
  std::set<std::string> symbols;
  for (auto& t : d.types) {
    symbols.insert(t.name);
    for (auto& e : t.elements) symbols.insert(e);
  }
  std::vector<std::string> issues;
  auto check = [&symbols, &issues](const Literal& l) {
    if (l.is_compare || l.pred.empty()) return;  // unused slot for this rule kind
    auto it = known.find(l.pred);
    if (it == known.end()) {
      issues.push_back("unknown predicate: " + l.pred);
    } else {
      int arity = static_cast<int>(l.args.size());
      if (std::find(it->second.begin(), it->second.end(), arity) == it->second.end())
        issues.push_back("bad arity for " + l.pred + "/" + std::to_string(arity));
    }
    for (auto& a : l.args)
      if (a.k == AspTerm::Sym && !symbols.count(a.name))
        issues.push_back("symbol not in domain: " + a.name);
  };
  check(r.head);
  check(r.choice_elem);
  for (auto& l : r.choice_cond) check(l);
  for (auto& l : r.body) check(l);

  // safety: a compared variable must be grounded by some positive atom
  std::set<std::string> grounded;
  auto ground_lit = [&grounded](const Literal& l) {
    if (l.is_compare || l.naf) return;
    for (auto& a : l.args)
      if (a.k == AspTerm::Var) grounded.insert(a.name);
  };
  for (auto& l : r.body) ground_lit(l);
  for (auto& l : r.choice_cond) ground_lit(l);
  for (auto& l : r.body) {
    if (!l.is_compare) continue;
    for (auto* t : {&l.lhs, &l.rhs})
      if (t->k == AspTerm::Var && !grounded.count(t->name))
        issues.push_back("unsafe variable in comparison: " + t->name);
  }
  return issues;
}

} // namespace logigram
