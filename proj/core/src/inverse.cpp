#include "logigram/inverse.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace logigram {

namespace {
constexpr int kMaxDepth = 8;
constexpr size_t kMaxCandidates = 24;

int fresh_counter_hint(const TermPtr& t) {
  // Names v1, v2, ... stay readable; pick a suffix clear of existing vars.
  int best = 0;
  for (auto& s : subterms(t))
    if ((s->kind == Kind::Var || s->kind == Kind::Abs) && s->name.size() > 1 && s->name[0] == 'v') {
      int n = 0;
      bool digits = true;
      for (size_t i = 1; i < s->name.size(); ++i) {
        if (!isdigit(static_cast<unsigned char>(s->name[i]))) {
          digits = false;
          break;
        }
        n = n * 10 + (s->name[i] - '0');
      }
      if (digits) best = std::max(best, n);
    }
  return best;
}

struct FreshNames {
  int next;
  explicit FreshNames(const TermPtr& a, const TermPtr& b)
      : next(std::max(fresh_counter_hint(a), fresh_counter_hint(b)) + 1) {}
  std::string get() { return "v" + std::to_string(next++); }
};
} // namespace

// ---- replacement ------------------------------------------------------------

static TermPtr replace_rec(const TermPtr& h, const std::vector<TermPtr>& from,
                           const std::vector<TermPtr>& to) {
  for (size_t i = 0; i < from.size(); ++i)
    if (alpha_eq(h, from[i])) return to[i];
  switch (h->kind) {
    case Kind::Var:
    case Kind::Cst: return h;
    case Kind::App: return app(replace_rec(h->fun, from, to), replace_rec(h->arg, from, to));
    case Kind::Cmp:
      return cmp(replace_rec(h->fun, from, to), h->name, replace_rec(h->arg, from, to));
    case Kind::Abs: return abs(h->name, replace_rec(h->fun, from, to));
    case Kind::Off: return off(replace_rec(h->fun, from, to), h->delta);
    case Kind::Atm:
    case Kind::Conj:
    case Kind::Constr: {
      std::vector<TermPtr> items;
      items.reserve(h->items.size());
      for (auto& it : h->items) items.push_back(replace_rec(it, from, to));
      if (h->kind == Kind::Atm) return atm(h->name, std::move(items), h->naf);
      if (h->kind == Kind::Conj) return conj(std::move(items));
      return constr(std::move(items));
    }
  }
  throw DomainError("replace: bad kind");
}

TermPtr replace(const TermPtr& h, const std::vector<TermPtr>& from,
                const std::vector<TermPtr>& to) {
  if (from.size() != to.size()) throw DomainError("replace: list size mismatch");
  if (from.empty()) return h;
  return replace_rec(h, from, to);
}

TermPtr replace1(const TermPtr& h, const TermPtr& from, const TermPtr& to) {
  return replace(h, {from}, {to});
}

// ---- decomposition units ------------------------------------------------------

namespace {

// A replaceable fragment of H: a real subterm or a contiguous body segment,
// with the argument-slot lists its abstractions may range over.
struct Unit {
  TermPtr node;                                // segment units hold a Conj
  std::vector<std::vector<TermPtr>> slot_variants;
  bool segment = false;
};

std::vector<TermPtr> chain_parts(const TermPtr& t) {
  // f@a1@..@ak -> [f, a1, .., ak]
  std::vector<TermPtr> rev;
  TermPtr cur = t;
  while (cur->kind == Kind::App) {
    rev.push_back(cur->arg);
    cur = cur->fun;
  }
  rev.push_back(cur);
  std::reverse(rev.begin(), rev.end());
  return rev;
}

TermPtr unbase(const TermPtr& t) { return t->kind == Kind::Off ? t->fun : t; }

std::vector<TermPtr> item_slots(const TermPtr& it) {
  switch (it->kind) {
    case Kind::Atm: return it->items;
    case Kind::Cmp: return {unbase(it->fun), unbase(it->arg)};
    case Kind::App: return chain_parts(it);
    default: return {};
  }
}

void collect_units(const TermPtr& t, bool in_fun_spine, std::vector<Unit>& out) {
  switch (t->kind) {
    case Kind::Var:
    case Kind::Cst: return;
    case Kind::App: {
      if (!in_fun_spine) {
        Unit u{t, {chain_parts(t)}, false};
        out.push_back(std::move(u));
      }
      collect_units(t->fun, true, out);
      collect_units(t->arg, false, out);
      return;
    }
    case Kind::Abs: collect_units(t->fun, false, out); return;
    case Kind::Off: collect_units(t->fun, false, out); return;
    case Kind::Atm: {
      if (!t->items.empty()) out.push_back({t, {t->items}, false});
      for (auto& a : t->items) collect_units(a, false, out);
      return;
    }
    case Kind::Cmp: {
      Unit u{t, {}, false};
      std::vector<TermPtr> unwrapped{unbase(t->fun), unbase(t->arg)};
      std::vector<TermPtr> as_is{t->fun, t->arg};
      u.slot_variants.push_back(unwrapped);
      if (!alpha_eq(unwrapped[0], as_is[0]) || !alpha_eq(unwrapped[1], as_is[1]))
        u.slot_variants.push_back(as_is);
      out.push_back(std::move(u));
      collect_units(t->fun, false, out);
      collect_units(t->arg, false, out);
      return;
    }
    case Kind::Conj:
    case Kind::Constr: {
      size_t n = t->items.size();
      size_t max_len = t->kind == Kind::Conj ? n - 1 : n;  // Conj full span is the node itself
      for (size_t i = 0; i < n; ++i) {
        for (size_t len = 2; len <= max_len && i + len <= n; ++len) {
          std::vector<TermPtr> seg(t->items.begin() + i, t->items.begin() + i + len);
          std::vector<TermPtr> slots;
          for (auto& s : seg) {
            auto ss = item_slots(s);
            slots.insert(slots.end(), ss.begin(), ss.end());
          }
          out.push_back({conj(seg), {slots}, true});
        }
      }
      for (auto& it : t->items) collect_units(it, false, out);
      return;
    }
  }
}

std::vector<Unit> units_of(const TermPtr& h) {
  std::vector<Unit> out;
  collect_units(h, false, out);
  return out;
}

// Replace every occurrence of the unit inside h by `to`: plain subterm
// replacement, or contiguous body-run replacement for segment units.
TermPtr replace_unit_rec(const TermPtr& h, const Unit& u, const TermPtr& to) {
  if (!u.segment) return replace1(h, u.node, to);
  const auto& seg = u.node->items;
  switch (h->kind) {
    case Kind::Var:
    case Kind::Cst: return h;
    case Kind::App: return app(replace_unit_rec(h->fun, u, to), replace_unit_rec(h->arg, u, to));
    case Kind::Cmp:
      return cmp(replace_unit_rec(h->fun, u, to), h->name, replace_unit_rec(h->arg, u, to));
    case Kind::Abs: return abs(h->name, replace_unit_rec(h->fun, u, to));
    case Kind::Off: return off(replace_unit_rec(h->fun, u, to), h->delta);
    case Kind::Atm: return h;
    case Kind::Conj:
    case Kind::Constr: {
      std::vector<TermPtr> items;
      size_t i = 0;
      while (i < h->items.size()) {
        bool run = i + seg.size() <= h->items.size();
        if (run)
          for (size_t k = 0; k < seg.size(); ++k)
            if (!alpha_eq(h->items[i + k], seg[k])) {
              run = false;
              break;
            }
        if (run) {
          items.push_back(to);
          i += seg.size();
        } else {
          items.push_back(replace_unit_rec(h->items[i], u, to));
          ++i;
        }
      }
      if (h->kind == Kind::Conj) {
        if (items.size() == 1) return items[0];
        return conj(std::move(items));
      }
      return constr(std::move(items));
    }
  }
  throw DomainError("replace_unit: bad kind");
}

// Subterm pool for structural cases: pre-order subterms plus body segments.
std::vector<TermPtr> subterm_pool(const TermPtr& h, std::vector<Unit>* unit_map) {
  std::vector<TermPtr> pool = subterms(h);
  std::vector<Unit> units = units_of(h);
  if (unit_map) *unit_map = units;
  for (auto& u : units)
    if (u.segment) pool.push_back(u.node);
  return pool;
}

bool reapplies_to(const TermPtr& fn, const TermPtr& arg, const TermPtr& h) {
  TermPtr combined = app(fn, arg);
  if (!try_infer(combined)) return false;
  try {
    return alpha_eq(normalize(combined), h);
  } catch (const DomainError&) {
    return false;  // step cap
  }
}

bool verify_l(const TermPtr& f, const TermPtr& g, const TermPtr& h) {
  return reapplies_to(f, g, h);
}

bool verify_r(const TermPtr& f, const TermPtr& g, const TermPtr& h) {
  return reapplies_to(g, f, h);
}

void push_unique(std::vector<TermPtr>& out, std::set<std::string>& seen, const TermPtr& f) {
  if (out.size() >= kMaxCandidates) return;
  std::string key = canon_key(f);
  if (seen.insert(key).second) out.push_back(f);
}

std::vector<TermPtr> enum_l(const TermPtr& h, const TermPtr& g, int depth);
std::vector<TermPtr> enum_r(const TermPtr& h, const TermPtr& g, int depth);

// Enumeration is pure and identical (H, G) subproblems recur heavily across
// chart nodes, so results are memoized process-wide (cleared at a size cap).
constexpr size_t kMemoCap = 1 << 17;
thread_local std::unordered_map<std::string, std::vector<TermPtr>> memo_l;
thread_local std::unordered_map<std::string, std::vector<TermPtr>> memo_r;

std::string memo_key(const TermPtr& h, const TermPtr& g, int depth) {
  return canon_key(h) + '\t' + canon_key(g) + '\t' + std::to_string(depth);
}

TermPtr slot_application(const TermPtr& head, const std::vector<TermPtr>& slots, size_t p,
                         size_t q) {
  TermPtr t = head;
  for (size_t k = p; k <= q; ++k) t = app(t, slots[k]);
  return t;
}

bool range_has_duplicates(const std::vector<TermPtr>& slots, size_t p, size_t q) {
  for (size_t i = p; i <= q; ++i)
    for (size_t j = i + 1; j <= q; ++j)
      if (alpha_eq(slots[i], slots[j])) return true;
  return false;
}

std::vector<TermPtr> enum_r(const TermPtr& h, const TermPtr& g, int depth) {
  std::vector<TermPtr> out;
  if (depth > kMaxDepth) return out;
  // Every right-inverse shape compares G against an abstraction.
  if (g->kind != Kind::Abs) return out;
  std::string key = memo_key(h, g, depth);
  if (auto hit = memo_r.find(key); hit != memo_r.end()) return hit->second;
  std::set<std::string> seen;
  FreshNames fresh(h, g);

  // Case 1: G = λv. v@J delegates to the left inverse against J.
  if (g->fun->kind == Kind::App && g->fun->fun->kind == Kind::Var &&
      g->fun->fun->name == g->name && !free_vars(g->fun->arg).count(g->name)) {
    for (auto& f : enum_l(h, g->fun->arg, depth + 1))
      if (verify_r(f, g, h)) push_unique(out, seen, f);
  }

  // Case 2: G abstracts H over one of its fragments J; then F = J.
  // G's body kind must match H's (Var when J is H itself).
  std::vector<Unit> units;
  std::vector<TermPtr> pool = subterm_pool(h, &units);
  const bool want_var = g->fun->kind == Kind::Var;
  const bool want_same = g->fun->kind == h->kind;
  if (want_var || want_same) {
    for (auto& j : pool) {
      if (alpha_eq(j, h) ? !want_var : !want_same) continue;
      std::string v = fresh.get();
      TermPtr cand_g;
      if (j->kind == Kind::Conj) {
        Unit u{j, {}, true};
        cand_g = abs(v, replace_unit_rec(h, u, var(v)));
      } else {
        cand_g = abs(v, replace1(h, j, var(v)));
      }
      if (alpha_eq(g, cand_g) && verify_r(j, g, h)) push_unique(out, seen, j);
    }
  }

  // Case 3: G abstracts a fragment A over a contiguous argument range; F
  // rebuilds A with those arguments bound.
  for (auto& u : units) {
    Kind expect = alpha_eq(u.node, h) ? Kind::App : h->kind;
    if (g->fun->kind != expect) continue;
    for (auto& slots : u.slot_variants) {
      for (size_t p = 0; p < slots.size(); ++p) {
        for (size_t q = p; q < slots.size(); ++q) {
          if (range_has_duplicates(slots, p, q)) continue;
          std::string w = fresh.get();
          TermPtr applied = slot_application(var(w), slots, p, q);
          TermPtr cand_g = abs(w, replace_unit_rec(h, u, applied));
          if (!alpha_eq(g, cand_g)) continue;
          std::vector<TermPtr> vs;
          std::vector<TermPtr> from(slots.begin() + p, slots.begin() + q + 1);
          for (size_t k = p; k <= q; ++k) vs.push_back(var(fresh.get()));
          TermPtr body = replace(u.node, from, vs);
          TermPtr f = body;
          for (size_t k = vs.size(); k-- > 0;) f = abs(vs[k]->name, f);
          if (verify_r(f, g, h)) push_unique(out, seen, f);
        }
      }
    }
  }
  if (memo_r.size() >= kMemoCap) memo_r.clear();
  memo_r.emplace(std::move(key), out);
  return out;
}

std::vector<TermPtr> enum_l(const TermPtr& h, const TermPtr& g, int depth) {
  std::vector<TermPtr> out;
  if (depth > kMaxDepth) return out;
  std::string key = memo_key(h, g, depth);
  if (auto hit = memo_l.find(key); hit != memo_l.end()) return hit->second;
  std::set<std::string> seen;
  FreshNames fresh(h, g);
  // Cases 2-4 compare against or apply an abstraction; only case 1 can fire
  // for a non-Abs G (closed normal terms of base type never apply).
  const bool g_abs = g->kind == Kind::Abs;

  // Case 1: G occurs inside H; abstract its occurrences.
  {
    std::vector<Unit> units;
    std::vector<TermPtr> pool = subterm_pool(h, &units);
    bool hit = false;
    for (auto& j : pool) {
      if (!alpha_eq(j, g)) continue;
      std::string v = fresh.get();
      TermPtr f;
      if (j->kind == Kind::Conj && j->items.size() >= 2) {
        Unit u{j, {}, true};
        f = abs(v, replace_unit_rec(h, u, var(v)));
      } else {
        f = abs(v, replace1(h, j, var(v)));
      }
      if (verify_l(f, g, h)) {
        push_unique(out, seen, f);
        hit = true;
      }
      if (hit) break;
    }
  }

  // Case 2: H = λx1..λxs. M; solve the stripped body on the right and rebind.
  if (h->kind == Kind::Abs && g_abs) {
    std::vector<std::string> prefix;
    TermPtr m = h;
    while (m->kind == Kind::Abs) {
      prefix.push_back(m->name);
      m = m->fun;
    }
    for (auto& j : enum_r(m, g, depth + 1)) {
      std::string w = fresh.get();
      TermPtr body = app(var(w), j);
      for (size_t k = prefix.size(); k-- > 0;) body = abs(prefix[k], body);
      TermPtr f = abs(w, body);
      if (verify_l(f, g, h)) push_unique(out, seen, f);
    }
  }

  // Case 3: G applied to an argument range reproduces a fragment A of H;
  // abstract that application point.
  if (g_abs) {
    size_t g_arity = 0;
    TermPtr g_body = g;
    while (g_body->kind == Kind::Abs) {
      ++g_arity;
      g_body = g_body->fun;
    }
    // Extra arguments beyond G's λ-prefix survive only when the instantiated
    // body can keep reducing (Var/App head) or the target is an application.
    const bool body_can_eat = g_body->kind == Kind::Var || g_body->kind == Kind::App;
    std::vector<Unit> units = units_of(h);
    for (auto& u : units) {
      for (auto& slots : u.slot_variants) {
        for (size_t p = 0; p < slots.size(); ++p) {
          for (size_t q = p; q < slots.size(); ++q) {
            size_t len = q - p + 1;
            if (len < g_arity) continue;  // leftover λ prefix never equals a unit
            if (len > g_arity && !body_can_eat && u.node->kind != Kind::App) continue;
            if (range_has_duplicates(slots, p, q)) continue;
            TermPtr applied_g;
            try {
              applied_g = normalize(slot_application(g, slots, p, q));
            } catch (const DomainError&) {
              continue;
            }
            if (!alpha_eq(applied_g, u.node)) continue;
            if (!well_typed(applied_g)) continue;
            std::string z = fresh.get();
            TermPtr f = abs(z, replace_unit_rec(h, u, slot_application(var(z), slots, p, q)));
            if (verify_l(f, g, h)) push_unique(out, seen, f);
          }
        }
      }
    }
  }

  // Case 4: wrap a right-inverse solution: F = λv. v@J.
  if (g_abs) {
    for (auto& j : enum_r(h, g, depth + 1)) {
      std::string v = fresh.get();
      TermPtr f = abs(v, app(var(v), j));
      if (verify_l(f, g, h)) push_unique(out, seen, f);
    }
  }
  if (memo_l.size() >= kMemoCap) memo_l.clear();
  memo_l.emplace(std::move(key), out);
  return out;
}

} // namespace

std::vector<TermPtr> enumerate_inverse_l(const TermPtr& h, const TermPtr& g) {
  return enum_l(normalize(h), normalize(g), 0);
}

std::vector<TermPtr> enumerate_inverse_r(const TermPtr& h, const TermPtr& g) {
  return enum_r(normalize(h), normalize(g), 0);
}

std::optional<TermPtr> inverse_l(const TermPtr& h, const TermPtr& g) {
  auto all = enumerate_inverse_l(h, g);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<TermPtr> inverse_r(const TermPtr& h, const TermPtr& g) {
  auto all = enumerate_inverse_r(h, g);
  if (all.empty()) return std::nullopt;
  return all.front();
}

} // namespace logigram
