#include "logigram/lambda.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace logigram {

namespace {
TermPtr mk(Term t) { return std::make_shared<const Term>(std::move(t)); }
constexpr long kStepCap = 100000;
} // namespace

TermPtr var(std::string name) { return mk({Kind::Var, std::move(name)}); }
TermPtr cst(std::string name) { return mk({Kind::Cst, std::move(name)}); }

TermPtr app(TermPtr f, TermPtr a) {
  Term t{Kind::App};
  t.fun = std::move(f);
  t.arg = std::move(a);
  return mk(std::move(t));
}

TermPtr abs(std::string v, TermPtr body) {
  Term t{Kind::Abs, std::move(v)};
  t.fun = std::move(body);
  return mk(std::move(t));
}

TermPtr off(TermPtr base, int delta) {
  Term t{Kind::Off};
  t.fun = std::move(base);
  t.delta = delta;
  return mk(std::move(t));
}

TermPtr atm(std::string pred, std::vector<TermPtr> args, bool naf) {
  Term t{Kind::Atm, std::move(pred)};
  t.items = std::move(args);
  t.naf = naf;
  return mk(std::move(t));
}

TermPtr cmp(TermPtr lhs, std::string op, TermPtr rhs) {
  Term t{Kind::Cmp, std::move(op)};
  t.fun = std::move(lhs);
  t.arg = std::move(rhs);
  return mk(std::move(t));
}

TermPtr conj(std::vector<TermPtr> items) {
  if (items.empty()) throw DomainError("empty conjunction");
  Term t{Kind::Conj};
  t.items = std::move(items);
  return mk(std::move(t));
}

TermPtr constr(std::vector<TermPtr> body) {
  if (body.empty()) throw DomainError("empty constraint body");
  Term t{Kind::Constr};
  t.items = std::move(body);
  return mk(std::move(t));
}

bool is_logic_var(const std::string& name) {
  return !name.empty() && name[0] >= 'A' && name[0] <= 'Z';
}

bool is_integer(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// ---- free vars / subterms ---------------------------------------------------

static void free_vars_rec(const TermPtr& t, std::vector<std::string>& bound,
                          std::set<std::string>& out) {
  switch (t->kind) {
    case Kind::Var:
      if (std::find(bound.rbegin(), bound.rend(), t->name) == bound.rend()) out.insert(t->name);
      break;
    case Kind::Cst: break;
    case Kind::App:
    case Kind::Cmp:
      free_vars_rec(t->fun, bound, out);
      free_vars_rec(t->arg, bound, out);
      break;
    case Kind::Abs:
      bound.push_back(t->name);
      free_vars_rec(t->fun, bound, out);
      bound.pop_back();
      break;
    case Kind::Off: free_vars_rec(t->fun, bound, out); break;
    case Kind::Atm:
    case Kind::Conj:
    case Kind::Constr:
      for (auto& it : t->items) free_vars_rec(it, bound, out);
      break;
  }
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_rec(t, bound, out);
  return out;
}

static void subterms_rec(const TermPtr& t, std::vector<TermPtr>& out) {
  out.push_back(t);
  switch (t->kind) {
    case Kind::Var:
    case Kind::Cst: break;
    case Kind::App:
    case Kind::Cmp:
      subterms_rec(t->fun, out);
      subterms_rec(t->arg, out);
      break;
    case Kind::Abs: subterms_rec(t->fun, out); break;
    case Kind::Off: subterms_rec(t->fun, out); break;
    case Kind::Atm:
    case Kind::Conj:
    case Kind::Constr:
      for (auto& it : t->items) subterms_rec(it, out);
      break;
  }
}

std::vector<TermPtr> subterms(const TermPtr& t) {
  std::vector<TermPtr> out;
  subterms_rec(t, out);
  return out;
}

// ---- substitution -----------------------------------------------------------

static std::string freshen(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

namespace {
// Untouched subtrees come back as the same pointer, so shared structure
// survives substitution and rebuilds stay proportional to the changed spine.
TermPtr subst_rec(const TermPtr& body, const std::string& name, const TermPtr& value,
                  const std::set<std::string>& fv_val) {
  switch (body->kind) {
    case Kind::Var: return body->name == name ? value : body;
    case Kind::Cst: return body;
    case Kind::App: {
      TermPtr f = subst_rec(body->fun, name, value, fv_val);
      TermPtr a = subst_rec(body->arg, name, value, fv_val);
      if (f == body->fun && a == body->arg) return body;
      return app(std::move(f), std::move(a));
    }
    case Kind::Cmp: {
      TermPtr l = subst_rec(body->fun, name, value, fv_val);
      TermPtr r = subst_rec(body->arg, name, value, fv_val);
      if (l == body->fun && r == body->arg) return body;
      return cmp(std::move(l), body->name, std::move(r));
    }
    case Kind::Abs: {
      if (body->name == name) return body;  // shadowed
      if (fv_val.count(body->name)) {
        std::set<std::string> avoid = fv_val;
        auto fv_body = free_vars(body->fun);
        avoid.insert(fv_body.begin(), fv_body.end());
        avoid.insert(name);
        std::string fresh = freshen(body->name, avoid);
        TermPtr renamed = substitute(body->fun, body->name, var(fresh));
        return abs(fresh, subst_rec(renamed, name, value, fv_val));
      }
      TermPtr b = subst_rec(body->fun, name, value, fv_val);
      if (b == body->fun) return body;
      return abs(body->name, std::move(b));
    }
    case Kind::Off: {
      TermPtr b = subst_rec(body->fun, name, value, fv_val);
      if (b == body->fun) return body;
      return off(std::move(b), body->delta);
    }
    case Kind::Atm:
    case Kind::Conj:
    case Kind::Constr: {
      std::vector<TermPtr> items;
      items.reserve(body->items.size());
      bool changed = false;
      for (auto& it : body->items) {
        items.push_back(subst_rec(it, name, value, fv_val));
        changed = changed || items.back() != it;
      }
      if (!changed) return body;
      Term t = *body;
      t.items = std::move(items);
      return mk(std::move(t));
    }
  }
  throw DomainError("substitute: bad kind");
}
} // namespace

TermPtr substitute(const TermPtr& body, const std::string& name, const TermPtr& value) {
  return subst_rec(body, name, value, free_vars(value));
}

// ---- normalization ----------------------------------------------------------

namespace {
struct Normalizer {
  long steps = 0;

  void bump() {
    if (++steps > kStepCap) throw DomainError("normalization step cap exceeded");
  }

  static std::vector<TermPtr> splice(std::vector<TermPtr> items) {
    std::vector<TermPtr> out;
    for (auto& it : items) {
      if (it->kind == Kind::Conj)
        out.insert(out.end(), it->items.begin(), it->items.end());
      else
        out.push_back(it);
    }
    return out;
  }

  // Already-normal subtrees come back as the same pointer; rebuilds happen
  // only along spines that actually reduce.
  // cur is reassigned (not recursed on) after each head beta step, so
  // divergent redexes hit the step cap instead of the stack limit.
  TermPtr go(const TermPtr& t) {
    TermPtr cur = t;
    for (;;) {
    switch (cur->kind) {
      case Kind::Var:
      case Kind::Cst: return cur;
      case Kind::App: {
        TermPtr f = go(cur->fun);
        if (f->kind == Kind::Abs) {
          bump();
          cur = substitute(f->fun, f->name, cur->arg);
          continue;
        }
        TermPtr a = go(cur->arg);
        if (f == cur->fun && a == cur->arg) return cur;
        return app(std::move(f), std::move(a));
      }
      case Kind::Abs: {
        TermPtr b = go(cur->fun);
        if (b == cur->fun) return cur;
        return abs(cur->name, std::move(b));
      }
      case Kind::Off: {
        TermPtr base = go(cur->fun);
        int delta = cur->delta;
        if (base->kind == Kind::Off) {
          delta += base->delta;
          base = base->fun;
        }
        if (delta == 0) return base;
        if (base == cur->fun && delta == cur->delta) return cur;
        return off(std::move(base), delta);
      }
      case Kind::Cmp: {
        TermPtr l = go(cur->fun);
        TermPtr r = go(cur->arg);
        if (l == cur->fun && r == cur->arg) return cur;
        return cmp(std::move(l), cur->name, std::move(r));
      }
      case Kind::Atm: {
        std::vector<TermPtr> args;
        args.reserve(cur->items.size());
        bool changed = false;
        for (auto& it : cur->items) {
          args.push_back(go(it));
          changed = changed || args.back() != it;
        }
        if (!changed) return cur;
        return atm(cur->name, std::move(args), cur->naf);
      }
      case Kind::Conj: {
        std::vector<TermPtr> items;
        items.reserve(cur->items.size());
        bool changed = false;
        bool nested = false;
        for (auto& it : cur->items) {
          items.push_back(go(it));
          changed = changed || items.back() != it;
          nested = nested || items.back()->kind == Kind::Conj;
        }
        if (nested) {
          items = splice(std::move(items));
          changed = true;
        }
        if (items.size() == 1) return items[0];
        if (!changed) return cur;
        return conj(std::move(items));
      }
      case Kind::Constr: {
        std::vector<TermPtr> items;
        items.reserve(cur->items.size());
        bool changed = false;
        bool nested = false;
        for (auto& it : cur->items) {
          items.push_back(go(it));
          changed = changed || items.back() != it;
          nested = nested || items.back()->kind == Kind::Conj;
        }
        if (nested) {
          items = splice(std::move(items));
          changed = true;
        }
        if (!changed) return cur;
        return constr(std::move(items));
      }
    }
    throw DomainError("normalize: bad kind");
    }
  }
};
} // namespace

TermPtr normalize(const TermPtr& t) {
  Normalizer n;
  return n.go(t);
}

// ---- types ------------------------------------------------------------------

namespace {
TypePtr mkty(Type t) { return std::make_shared<const Type>(std::move(t)); }
} // namespace

TypePtr type_ind() {
  static TypePtr t = mkty({Type::Ind});
  return t;
}
TypePtr type_rule() {
  static TypePtr t = mkty({Type::Rule});
  return t;
}
TypePtr type_arrow(TypePtr a, TypePtr b) {
  Type t{Type::Arrow};
  t.a = std::move(a);
  t.b = std::move(b);
  return mkty(std::move(t));
}

namespace {
struct Infer {
  std::vector<TypePtr> binding;  // hole id -> bound type (or null)
  std::map<std::string, TypePtr> freevar_types;

  TypePtr fresh() {
    Type t{Type::Hole};
    t.id = static_cast<int>(binding.size());
    binding.push_back(nullptr);
    return mkty(std::move(t));
  }

  TypePtr find(TypePtr t) {
    while (t->k == Type::Hole && binding[t->id]) t = binding[t->id];
    return t;
  }

  bool occurs(int id, const TypePtr& t0) {
    TypePtr t = find(t0);
    if (t->k == Type::Hole) return t->id == id;
    if (t->k == Type::Arrow) return occurs(id, t->a) || occurs(id, t->b);
    return false;
  }

  // Returns false on clash or occurs failure; inference threads the failure
  // up instead of throwing, so probing ill-typed terms stays cheap.
  bool unify(TypePtr a, TypePtr b) {
    a = find(a);
    b = find(b);
    if (a->k == Type::Hole && b->k == Type::Hole && a->id == b->id) return true;
    if (a->k == Type::Hole) {
      if (occurs(a->id, b)) return false;
      binding[a->id] = b;
      return true;
    }
    if (b->k == Type::Hole) return unify(b, a);
    if (a->k != b->k) return false;
    if (a->k == Type::Arrow) return unify(a->a, b->a) && unify(a->b, b->b);
    return true;
  }

  TypePtr resolve(TypePtr t) {
    t = find(t);
    if (t->k == Type::Arrow) return type_arrow(resolve(t->a), resolve(t->b));
    return t;
  }

  // Null result means no typing exists.
  TypePtr visit(const TermPtr& t, std::vector<std::pair<std::string, TypePtr>>& env) {
    switch (t->kind) {
      case Kind::Var: {
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t->name) return it->second;
        auto f = freevar_types.find(t->name);
        if (f != freevar_types.end()) return f->second;
        TypePtr h = fresh();
        freevar_types.emplace(t->name, h);
        return h;
      }
      case Kind::Cst: return type_ind();
      case Kind::App: {
        TypePtr tf = visit(t->fun, env);
        if (!tf) return nullptr;
        TypePtr ta = visit(t->arg, env);
        if (!ta) return nullptr;
        TypePtr r = fresh();
        if (!unify(tf, type_arrow(std::move(ta), r))) return nullptr;
        return r;
      }
      case Kind::Abs: {
        TypePtr a = fresh();
        env.emplace_back(t->name, a);
        TypePtr b = visit(t->fun, env);
        env.pop_back();
        if (!b) return nullptr;
        return type_arrow(std::move(a), std::move(b));
      }
      case Kind::Off: {
        TypePtr b = visit(t->fun, env);
        if (!b || !unify(std::move(b), type_ind())) return nullptr;
        return type_ind();
      }
      case Kind::Atm:
        for (auto& a : t->items) {
          TypePtr ta = visit(a, env);
          if (!ta || !unify(std::move(ta), type_ind())) return nullptr;
        }
        return type_rule();
      case Kind::Cmp: {
        TypePtr tl = visit(t->fun, env);
        if (!tl || !unify(std::move(tl), type_ind())) return nullptr;
        TypePtr tr = visit(t->arg, env);
        if (!tr || !unify(std::move(tr), type_ind())) return nullptr;
        return type_rule();
      }
      case Kind::Conj:
      case Kind::Constr:
        for (auto& it : t->items) {
          TypePtr ti = visit(it, env);
          if (!ti || !unify(std::move(ti), type_rule())) return nullptr;
        }
        return type_rule();
    }
    return nullptr;
  }
};
} // namespace

std::string print_type(const TypePtr& t) {
  switch (t->k) {
    case Type::Ind: return "i";
    case Type::Rule: return "r";
    case Type::Hole: return "t" + std::to_string(t->id);
    case Type::Arrow: {
      std::string lhs = print_type(t->a);
      if (t->a->k == Type::Arrow) lhs = "(" + lhs + ")";
      return lhs + "->" + print_type(t->b);
    }
  }
  return "?";
}

std::optional<TypePtr> try_infer(const TermPtr& t) {
  Infer inf;
  std::vector<std::pair<std::string, TypePtr>> env;
  TypePtr r = inf.visit(t, env);
  if (!r) return std::nullopt;
  return inf.resolve(std::move(r));
}

TypePtr infer_type(const TermPtr& t) {
  auto r = try_infer(t);
  if (!r) throw TypeError("term is not typable: " + print_term(t));
  return *r;
}

bool well_typed(const TermPtr& t) { return try_infer(t).has_value(); }

namespace {

int max_hole_id(const TypePtr& t) {
  if (t->k == Type::Hole) return t->id;
  if (t->k == Type::Arrow) return std::max(max_hole_id(t->a), max_hole_id(t->b));
  return -1;
}

TypePtr shift_holes(const TypePtr& t, int delta) {
  if (t->k == Type::Hole) {
    Type h{Type::Hole};
    h.id = t->id + delta;
    return mkty(std::move(h));
  }
  if (t->k == Type::Arrow)
    return type_arrow(shift_holes(t->a, delta), shift_holes(t->b, delta));
  return t;
}

// Map-based unifier over already-inferred types; returns false instead of
// throwing so callers can probe many candidate pairs cheaply.
struct PairUnify {
  std::map<int, TypePtr> bind;

  TypePtr find(TypePtr t) {
    while (t->k == Type::Hole) {
      auto it = bind.find(t->id);
      if (it == bind.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs(int id, const TypePtr& t0) {
    TypePtr t = find(t0);
    if (t->k == Type::Hole) return t->id == id;
    if (t->k == Type::Arrow) return occurs(id, t->a) || occurs(id, t->b);
    return false;
  }

  bool unify(TypePtr a, TypePtr b) {
    a = find(a);
    b = find(b);
    if (a->k == Type::Hole && b->k == Type::Hole && a->id == b->id) return true;
    if (a->k == Type::Hole) {
      if (occurs(a->id, b)) return false;
      bind[a->id] = b;
      return true;
    }
    if (b->k == Type::Hole) return unify(b, a);
    if (a->k != b->k) return false;
    if (a->k == Type::Arrow) return unify(a->a, b->a) && unify(a->b, b->b);
    return true;
  }

  TypePtr resolve(TypePtr t) {
    t = find(t);
    if (t->k == Type::Arrow) return type_arrow(resolve(t->a), resolve(t->b));
    return t;
  }
};

} // namespace

std::optional<TypePtr> apply_type(const TypePtr& fn, const TypePtr& arg) {
  int base = max_hole_id(fn) + 1;
  TypePtr a = shift_holes(arg, base);
  Type rh{Type::Hole};
  rh.id = base + max_hole_id(arg) + 1;
  TypePtr r = mkty(std::move(rh));
  PairUnify u;
  if (!u.unify(fn, type_arrow(std::move(a), r))) return std::nullopt;
  return u.resolve(r);
}

// ---- alpha equivalence --------------------------------------------------------

namespace {
struct AlphaCtx {
  std::vector<std::pair<std::string, int>> la, lb;
  int depth = 0;

  int lookup(const std::vector<std::pair<std::string, int>>& st, const std::string& n) const {
    for (auto it = st.rbegin(); it != st.rend(); ++it)
      if (it->first == n) return it->second;
    return -1;
  }

  bool eq(const TermPtr& a, const TermPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Var: {
        int ia = lookup(la, a->name), ib = lookup(lb, b->name);
        if (ia != ib) return false;
        return ia >= 0 || a->name == b->name;
      }
      case Kind::Cst: return a->name == b->name;
      case Kind::App: return eq(a->fun, b->fun) && eq(a->arg, b->arg);
      case Kind::Cmp: return a->name == b->name && eq(a->fun, b->fun) && eq(a->arg, b->arg);
      case Kind::Abs: {
        la.emplace_back(a->name, depth);
        lb.emplace_back(b->name, depth);
        ++depth;
        bool r = eq(a->fun, b->fun);
        --depth;
        la.pop_back();
        lb.pop_back();
        return r;
      }
      case Kind::Off: return a->delta == b->delta && eq(a->fun, b->fun);
      case Kind::Atm: {
        if (a->name != b->name || a->naf != b->naf || a->items.size() != b->items.size()) return false;
        for (size_t i = 0; i < a->items.size(); ++i)
          if (!eq(a->items[i], b->items[i])) return false;
        return true;
      }
      case Kind::Conj:
      case Kind::Constr: {
        if (a->items.size() != b->items.size()) return false;
        std::vector<bool> used(b->items.size(), false);
        return match(a, b, 0, used);
      }
    }
    return false;
  }

  // Bodies compare as multisets: backtracking bipartite match.
  bool match(const TermPtr& a, const TermPtr& b, size_t i, std::vector<bool>& used) {
    if (i == a->items.size()) return true;
    for (size_t j = 0; j < b->items.size(); ++j) {
      if (used[j]) continue;
      if (eq(a->items[i], b->items[j])) {
        used[j] = true;
        if (match(a, b, i + 1, used)) return true;
        used[j] = false;
      }
    }
    return false;
  }
};
} // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  AlphaCtx ctx;
  return ctx.eq(a, b);
}

// ---- canonical key ------------------------------------------------------------

static void canon_rec(const TermPtr& t, std::vector<std::string>& binders, std::string& out) {
  switch (t->kind) {
    case Kind::Var: {
      for (size_t i = binders.size(); i-- > 0;) {
        if (binders[i] == t->name) {
          out += "#" + std::to_string(i);
          return;
        }
      }
      out += "~" + t->name;
      return;
    }
    case Kind::Cst: out += "'" + t->name; return;
    case Kind::App:
      out += "(";
      canon_rec(t->fun, binders, out);
      out += "@";
      canon_rec(t->arg, binders, out);
      out += ")";
      return;
    case Kind::Abs:
      out += "(L";
      binders.push_back(t->name);
      canon_rec(t->fun, binders, out);
      binders.pop_back();
      out += ")";
      return;
    case Kind::Off:
      out += "(";
      canon_rec(t->fun, binders, out);
      out += (t->delta >= 0 ? "+" : "") + std::to_string(t->delta) + ")";
      return;
    case Kind::Cmp:
      out += "(";
      canon_rec(t->fun, binders, out);
      out += t->name;
      canon_rec(t->arg, binders, out);
      out += ")";
      return;
    case Kind::Atm: {
      if (t->naf) out += "!";
      out += t->name + "(";
      for (size_t i = 0; i < t->items.size(); ++i) {
        if (i) out += ",";
        canon_rec(t->items[i], binders, out);
      }
      out += ")";
      return;
    }
    case Kind::Conj:
    case Kind::Constr: {
      std::vector<std::string> keys;
      for (auto& it : t->items) {
        std::string k;
        canon_rec(it, binders, k);
        keys.push_back(std::move(k));
      }
      std::sort(keys.begin(), keys.end());
      out += t->kind == Kind::Conj ? "{" : "[";
      for (size_t i = 0; i < keys.size(); ++i) {
        if (i) out += ";";
        out += keys[i];
      }
      out += t->kind == Kind::Conj ? "}" : "]";
      return;
    }
  }
}

std::string canon_key(const TermPtr& t) {
  std::string out;
  std::vector<std::string> binders;
  canon_rec(t, binders, out);
  return out;
}

// ---- printer -------------------------------------------------------------------

static void print_rec(const TermPtr& t, std::string& out);

static void print_wrapped(const TermPtr& t, std::string& out, bool wrap) {
  if (wrap) out += "(";
  print_rec(t, out);
  if (wrap) out += ")";
}

static void print_rec(const TermPtr& t, std::string& out) {
  switch (t->kind) {
    case Kind::Var:
    case Kind::Cst: out += t->name; return;
    case Kind::App: {
      bool wf = !(t->fun->kind == Kind::Var || t->fun->kind == Kind::Cst ||
                  t->fun->kind == Kind::App || t->fun->kind == Kind::Atm);
      print_wrapped(t->fun, out, wf);
      out += "@";
      bool wa = !(t->arg->kind == Kind::Var || t->arg->kind == Kind::Cst ||
                  t->arg->kind == Kind::Atm || t->arg->kind == Kind::Conj);
      print_wrapped(t->arg, out, wa);
      return;
    }
    case Kind::Abs:
      out += "\xce\xbb" + t->name + ". ";
      print_rec(t->fun, out);
      return;
    case Kind::Off: {
      bool wb = !(t->fun->kind == Kind::Var || t->fun->kind == Kind::Cst);
      print_wrapped(t->fun, out, wb);
      out += t->delta >= 0 ? "+" + std::to_string(t->delta) : std::to_string(t->delta);
      return;
    }
    case Kind::Cmp: {
      auto operand = [&](const TermPtr& o) {
        bool w = !(o->kind == Kind::Var || o->kind == Kind::Cst || o->kind == Kind::Off ||
                   o->kind == Kind::Atm);
        print_wrapped(o, out, w);
      };
      operand(t->fun);
      out += " " + t->name + " ";
      operand(t->arg);
      return;
    }
    case Kind::Atm: {
      if (t->naf) out += "not ";
      out += t->name + "(";
      for (size_t i = 0; i < t->items.size(); ++i) {
        if (i) out += ",";
        print_rec(t->items[i], out);
      }
      out += ")";
      return;
    }
    case Kind::Conj: {
      out += "(";
      for (size_t i = 0; i < t->items.size(); ++i) {
        if (i) out += ", ";
        print_rec(t->items[i], out);
      }
      out += ")";
      return;
    }
    case Kind::Constr: {
      out += ":- ";
      for (size_t i = 0; i < t->items.size(); ++i) {
        if (i) out += ", ";
        print_rec(t->items[i], out);
      }
      out += ".";
      return;
    }
  }
}

std::string print_term(const TermPtr& t) {
  std::string out;
  print_rec(t, out);
  return out;
}

// ---- parser ---------------------------------------------------------------------

namespace {
struct Token {
  enum T { Ident, Int, Lambda, Dot, At, LPar, RPar, Comma, ConstrHead, CmpOp, Plus, Minus, Naf, End } t;
  std::string text;
  size_t pos;
};

struct Lexer {
  const std::string& s;
  size_t i = 0;
  std::vector<Token> toks;

  explicit Lexer(const std::string& src) : s(src) { run(); }

  void run() {
    while (i < s.size()) {
      char c = s[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      size_t start = i;
      if (s.compare(i, 2, "\xce\xbb") == 0) {
        toks.push_back({Token::Lambda, "\xce\xbb", start});
        i += 2;
      } else if (c == '\\') {
        toks.push_back({Token::Lambda, "\\", start});
        ++i;
      } else if (s.compare(i, 2, ":-") == 0) {
        toks.push_back({Token::ConstrHead, ":-", start});
        i += 2;
      } else if (s.compare(i, 3, "\xe2\x89\xa0") == 0) {
        toks.push_back({Token::CmpOp, "!=", start});
        i += 3;
      } else if (s.compare(i, 2, "!=") == 0) {
        toks.push_back({Token::CmpOp, "!=", start});
        i += 2;
      } else if (s.compare(i, 2, "==") == 0) {
        toks.push_back({Token::CmpOp, "=", start});
        i += 2;
      } else if (s.compare(i, 2, "<=") == 0 || s.compare(i, 2, ">=") == 0) {
        toks.push_back({Token::CmpOp, s.substr(i, 2), start});
        i += 2;
      } else if (c == '=' || c == '<' || c == '>') {
        toks.push_back({Token::CmpOp, std::string(1, c), start});
        ++i;
      } else if (c == '.') {
        toks.push_back({Token::Dot, ".", start});
        ++i;
      } else if (c == '@') {
        toks.push_back({Token::At, "@", start});
        ++i;
      } else if (c == '(') {
        toks.push_back({Token::LPar, "(", start});
        ++i;
      } else if (c == ')') {
        toks.push_back({Token::RPar, ")", start});
        ++i;
      } else if (c == ',') {
        toks.push_back({Token::Comma, ",", start});
        ++i;
      } else if (c == '+') {
        toks.push_back({Token::Plus, "+", start});
        ++i;
      } else if (c == '-') {
        toks.push_back({Token::Minus, "-", start});
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        toks.push_back({Token::Int, s.substr(i, j - i), start});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          ++j;
        std::string word = s.substr(i, j - i);
        if (word == "not")
          toks.push_back({Token::Naf, word, start});
        else
          toks.push_back({Token::Ident, word, start});
        i = j;
      } else {
        throw ParseError("unexpected character '" + std::string(1, c) + "' at " + std::to_string(i));
      }
    }
    toks.push_back({Token::End, "", s.size()});
  }
};

struct Parser {
  std::vector<Token> toks;
  size_t p = 0;
  std::vector<std::string> scope;

  const Token& peek(size_t k = 0) const { return toks[std::min(p + k, toks.size() - 1)]; }
  Token take() { return toks[p < toks.size() - 1 ? p++ : p]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " near position " + std::to_string(peek().pos));
  }

  void expect(Token::T t, const char* what) {
    if (peek().t != t) fail(std::string("expected ") + what);
    take();
  }

  bool bound(const std::string& n) const {
    return std::find(scope.rbegin(), scope.rend(), n) != scope.rend();
  }

  TermPtr parse_full() {
    TermPtr t = parse_term();
    if (peek().t != Token::End) fail("trailing input");
    return t;
  }

  TermPtr parse_term() {
    if (peek().t == Token::Lambda) {
      take();
      if (peek().t != Token::Ident) fail("expected binder name");
      std::string name = take().text;
      expect(Token::Dot, "'.' after binder");
      scope.push_back(name);
      TermPtr body = parse_term();
      scope.pop_back();
      return abs(name, body);
    }
    if (peek().t == Token::ConstrHead) return parse_constraint();
    return parse_conj_or_item();
  }

  TermPtr parse_constraint() {
    take();  // :-
    std::vector<TermPtr> items;
    items.push_back(parse_item());
    while (peek().t == Token::Comma) {
      take();
      items.push_back(parse_item());
    }
    expect(Token::Dot, "'.' ending constraint");
    return constr(std::move(items));
  }

  TermPtr parse_conj_or_item() {
    TermPtr first = parse_item();
    if (peek().t != Token::Comma) return first;
    std::vector<TermPtr> items{first};
    while (peek().t == Token::Comma) {
      take();
      items.push_back(parse_item());
    }
    return conj(std::move(items));
  }

  TermPtr parse_item() {
    TermPtr lhs = parse_app_chain();
    if (peek().t == Token::CmpOp) {
      std::string op = take().text;
      TermPtr rhs = parse_app_chain();
      return cmp(lhs, op, rhs);
    }
    return lhs;
  }

  TermPtr parse_app_chain() {
    TermPtr t = parse_offsetable();
    while (peek().t == Token::At) {
      take();
      t = app(t, parse_offsetable());
    }
    return t;
  }

  TermPtr parse_offsetable() {
    TermPtr t = parse_primary();
    if ((peek().t == Token::Plus || peek().t == Token::Minus) && peek(1).t == Token::Int) {
      bool neg = take().t == Token::Minus;
      int n = std::stoi(take().text);
      return off(t, neg ? -n : n);
    }
    return t;
  }

  TermPtr parse_atom(bool naf) {
    std::string pred = take().text;
    expect(Token::LPar, "'(' after predicate");
    std::vector<TermPtr> args;
    if (peek().t != Token::RPar) {
      args.push_back(parse_item());
      while (peek().t == Token::Comma) {
        take();
        args.push_back(parse_item());
      }
    }
    expect(Token::RPar, "')' closing atom");
    return atm(pred, std::move(args), naf);
  }

  TermPtr parse_primary() {
    switch (peek().t) {
      case Token::LPar: {
        take();
        TermPtr t = parse_term();
        expect(Token::RPar, "')'");
        return t;
      }
      case Token::Lambda: return parse_term();
      case Token::Naf: {
        if (peek(1).t == Token::Ident && peek(2).t == Token::LPar) {
          take();
          return parse_atom(true);
        }
        Token w = take();
        return bound(w.text) ? var(w.text) : cst(w.text);
      }
      case Token::Ident: {
        if (peek(1).t == Token::LPar) return parse_atom(false);
        Token w = take();
        return bound(w.text) ? var(w.text) : cst(w.text);
      }
      case Token::Int: return cst(take().text);
      default: fail("expected term");
    }
  }
};
} // namespace

TermPtr parse_term(const std::string& text) {
  Lexer lex(text);
  Parser ps{std::move(lex.toks)};
  return ps.parse_full();
}

// ---- apply ------------------------------------------------------------------------

TermPtr apply(const TermPtr& f, const TermPtr& a) {
  TermPtr combined = app(f, a);
  infer_type(combined);  // throws TypeError when application is ill-typed
  return normalize(combined);
}

} // namespace logigram
