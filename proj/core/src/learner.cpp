#include "logigram/learner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "logigram/inverse.hpp"

namespace logigram {

namespace {
constexpr size_t kMaxSemsPerSpan = 16;
constexpr size_t kMaxSetsPerNode = 64;
} // namespace

std::vector<CatPtr> default_hypothesis_cats() {
  static const char* texts[] = {"N",      "NP",          "NP/N",          "N/N",
                                "N\\N",   "NP/NP",       "NP\\NP",        "(NP\\NP)/NP",
                                "(S\\NP)/(S\\NP)", "(S\\NP)/NP", "(NP/NP)/N"};
  std::vector<CatPtr> out;
  for (auto* t : texts) out.push_back(parse_cat(t));
  return out;
}

namespace {

// The learner's notion of "reaching the gold": alpha-equality against the
// gold rule's term form.  A merely equivalent root (permuted body, renamed
// rule variables) does not count, so generation keeps running until some
// derivation reproduces the gold exactly.
TermPtr gold_term(const AspRule& gold) { return normalize(term_from_rule(gold)); }

bool matches_gold(const Derivation& d, const TermPtr& groot) {
  return alpha_eq(d.sem, groot);
}

void collect_constants(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Kind::Cst) out.insert(t->name);
  collect_constants(t->fun, out);
  collect_constants(t->arg, out);
  for (auto& it : t->items) collect_constants(it, out);
}

// Constant c of a property template \x. tuple(x, c), or empty.
std::string template_constant(const TermPtr& s) {
  if (s->kind != Kind::Abs || s->fun->kind != Kind::Atm || s->fun->name != "tuple")
    return {};
  if (s->fun->items.size() != 2) return {};
  if (s->fun->items[0]->kind != Kind::Var || s->fun->items[0]->name != s->name)
    return {};
  if (s->fun->items[1]->kind != Kind::Cst) return {};
  return s->fun->items[1]->name;
}

// A candidate meaning may not embed a sibling token's property constant: the
// sibling's semantics is already known at its own span, so such candidates
// only duplicate it (and cannot transfer to sentences without that sibling).
bool embeds_sibling_constant(const Lexicon& lex, const std::vector<std::string>& tokens,
                             const std::string& self, const TermPtr& sem) {
  std::set<std::string> csts;
  collect_constants(sem, csts);
  if (csts.empty()) return false;
  for (auto& u : tokens) {
    if (u == self) continue;
    for (int e : lex.find(u)) {
      std::string c = template_constant(lex.entries[e].sem);
      if (!c.empty() && csts.count(c)) return true;
    }
  }
  return false;
}

struct Cand {
  std::string token;
  CatPtr cat;
  TermPtr sem;
};

std::string cand_key(const Cand& c) {
  return c.token + "\t" + print_cat(c.cat) + "\t" + canon_key(c.sem);
}

using CandSet = std::vector<Cand>;

std::string set_key(const CandSet& s) {
  std::vector<std::string> keys;
  for (auto& c : s) keys.push_back(cand_key(c));
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (auto& k : keys) {
    out += k;
    out += '\n';
  }
  return out;
}

void push_set(std::vector<CandSet>& out, std::set<std::string>& seen, CandSet s) {
  if (out.size() >= kMaxSetsPerNode) return;
  std::string key = set_key(s);
  if (seen.insert(key).second) out.push_back(std::move(s));
}

// Category-only CKY over known-token entry categories and pool categories
// for unknown tokens; backpointers keep every split.
struct SynChart {
  struct BP {
    int split;
    bool fwd;
    int left, right;  // category indices in the child cells
  };
  struct Cell {
    std::vector<CatPtr> cats;
    std::vector<std::vector<BP>> bps;
    int find(const CatPtr& c) const {
      for (size_t i = 0; i < cats.size(); ++i)
        if (cat_eq(cats[i], c)) return static_cast<int>(i);
      return -1;
    }
    int add(const CatPtr& c) {
      int idx = find(c);
      if (idx >= 0) return idx;
      cats.push_back(c);
      bps.emplace_back();
      return static_cast<int>(cats.size()) - 1;
    }
  };
  int n = 0;
  std::vector<std::vector<Cell>> cells;

  Cell& at(int i, int j) { return cells[i][j]; }
  const Cell& at(int i, int j) const { return cells[i][j]; }
};

SynChart build_syn_chart(const std::vector<std::string>& tokens, const Lexicon& lex,
                         const std::vector<bool>& unknown,
                         const std::vector<CatPtr>& pool) {
  SynChart chart;
  int n = static_cast<int>(tokens.size());
  chart.n = n;
  chart.cells.assign(n + 1, std::vector<SynChart::Cell>(n + 1));
  for (int i = 0; i < n; ++i) {
    auto& cell = chart.at(i, i + 1);
    if (unknown[i]) {
      for (auto& c : pool) cell.add(c);
    } else {
      for (int e : lex.find(tokens[i])) cell.add(lex.entries[e].cat);
    }
  }
  for (int len = 2; len <= n; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      int j = i + len;
      auto& cell = chart.at(i, j);
      for (int k = i + 1; k < j; ++k) {
        auto& lc = chart.at(i, k);
        auto& rc = chart.at(k, j);
        for (size_t li = 0; li < lc.cats.size(); ++li) {
          for (size_t ri = 0; ri < rc.cats.size(); ++ri) {
            if (lc.cats[li]->k == Category::Fwd && cat_eq(lc.cats[li]->arg, rc.cats[ri])) {
              int idx = cell.add(lc.cats[li]->res);
              cell.bps[idx].push_back(
                  {k, true, static_cast<int>(li), static_cast<int>(ri)});
            }
            if (rc.cats[ri]->k == Category::Bwd && cat_eq(rc.cats[ri]->arg, lc.cats[li])) {
              int idx = cell.add(rc.cats[ri]->res);
              cell.bps[idx].push_back(
                  {k, false, static_cast<int>(li), static_cast<int>(ri)});
            }
          }
        }
      }
    }
  }
  return chart;
}

struct TreeSolver {
  const std::vector<std::string>& tokens;
  const Lexicon& lex;  // base lexicon (may include helper placeholders)
  const std::vector<bool>& unknown;
  SynChart syn;
  Chart sem_chart;
  std::vector<int> unknown_prefix;
  std::map<std::string, std::vector<CandSet>> memo;

  TreeSolver(const std::vector<std::string>& toks, const Lexicon& l,
             const std::vector<bool>& unk, const std::vector<CatPtr>& pool)
      : tokens(toks), lex(l), unknown(unk) {
    syn = build_syn_chart(tokens, lex, unknown, pool);
    sem_chart = build_chart(tokens, lex);
    unknown_prefix.assign(tokens.size() + 1, 0);
    for (size_t i = 0; i < tokens.size(); ++i)
      unknown_prefix[i + 1] = unknown_prefix[i] + (unknown[i] ? 1 : 0);
  }

  bool span_known(int i, int j) const { return unknown_prefix[j] == unknown_prefix[i]; }

  std::vector<TermPtr> span_sems(int i, int j, const CatPtr& cat) {
    std::vector<TermPtr> out;
    std::set<std::string> seen;
    for (int id : sem_chart.cell(i, j)) {
      const ChartItem& it = sem_chart.pool[id];
      if (!cat_eq(it.cat, cat)) continue;
      if (out.size() >= kMaxSemsPerSpan) break;
      if (seen.insert(canon_key(it.sem)).second) out.push_back(it.sem);
    }
    return out;
  }

  bool span_has_sem(int i, int j, const CatPtr& cat, const TermPtr& h) {
    for (int id : sem_chart.cell(i, j)) {
      const ChartItem& it = sem_chart.pool[id];
      if (cat_eq(it.cat, cat) && alpha_eq(it.sem, h)) return true;
    }
    return false;
  }

  std::vector<CandSet> solve(int i, int j, int cat_idx, const TermPtr& h) {
    const auto& cell = syn.at(i, j);
    const CatPtr& cat = cell.cats[cat_idx];
    if (span_known(i, j))
      return span_has_sem(i, j, cat, h) ? std::vector<CandSet>{{}} : std::vector<CandSet>{};
    std::string key = std::to_string(i) + "," + std::to_string(j) + "," +
                      std::to_string(cat_idx) + "\t" + canon_key(h);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;
    memo[key] = {};  // cycle guard; spans strictly shrink so cycles cannot occur
    std::vector<CandSet> out;
    std::set<std::string> seen;
    if (j - i == 1) {
      // unknown leaf: hypothesize the target meaning here
      push_set(out, seen, {Cand{tokens[i], cat, h}});
      memo[key] = out;
      return out;
    }
    auto combine = [&out, &seen](const std::vector<CandSet>& sub) {
      for (auto& s : sub) push_set(out, seen, s);
    };
    // A split is solvable only when one side is fully known: the known side
    // supplies G, the inverse operators propose the other side's target.
    for (const auto& bp : cell.bps[cat_idx]) {
      if (out.size() >= kMaxSetsPerNode) break;
      int k = bp.split;
      int li = bp.left, ri = bp.right;
      const CatPtr& lcat = syn.at(i, k).cats[li];
      const CatPtr& rcat = syn.at(k, j).cats[ri];
      bool lknown = span_known(i, k);
      bool rknown = span_known(k, j);
      if (bp.fwd) {
        if (lknown) {
          for (auto& sem_l : span_sems(i, k, lcat))
            for (auto& sem_r : enumerate_inverse_r(h, sem_l)) combine(solve(k, j, ri, sem_r));
        } else if (rknown) {
          for (auto& sem_r : span_sems(k, j, rcat))
            for (auto& sem_l : enumerate_inverse_l(h, sem_r)) combine(solve(i, k, li, sem_l));
        }
      } else {
        if (rknown) {
          for (auto& sem_r : span_sems(k, j, rcat))
            for (auto& sem_l : enumerate_inverse_r(h, sem_r)) combine(solve(i, k, li, sem_l));
        } else if (lknown) {
          for (auto& sem_l : span_sems(i, k, lcat))
            for (auto& sem_r : enumerate_inverse_l(h, sem_l)) combine(solve(k, j, ri, sem_r));
        }
      }
    }
    memo[key] = out;
    return out;
  }

  std::vector<CandSet> solve_root(const TermPtr& h) {
    std::vector<CandSet> out;
    std::set<std::string> seen;
    if (static_cast<size_t>(syn.n) != tokens.size() || tokens.empty()) return out;
    const auto& cell = syn.at(0, syn.n);
    for (size_t ci = 0; ci < cell.cats.size(); ++ci) {
      if (cell.cats[ci]->k == Category::Atom && cell.cats[ci]->name == "S")
        for (auto& s : solve(0, syn.n, static_cast<int>(ci), h)) push_set(out, seen, s);
    }
    return out;
  }
};

bool entry_in(const Lexicon& lex, const std::string& phrase, const CatPtr& cat,
              const TermPtr& sem) {
  for (auto& e : lex.entries)
    if (e.phrase == phrase && cat_eq(e.cat, cat) && alpha_eq(e.sem, sem)) return true;
  return false;
}

// Reparse with the candidate set added; keep the set only when a derivation
// uses every candidate and reaches a gold-equivalent constraint.  Returns
// all non-original entries used by that derivation (helpers included).
std::vector<Cand> verify_set(const Lexicon& base, const Lexicon& original,
                             const std::vector<std::string>& tokens, const AspRule& gold,
                             const CandSet& set, double init_weight) {
  for (auto& c : set)
    if (embeds_sibling_constant(original, tokens, c.token, c.sem)) return {};
  Lexicon tentative = base;
  std::vector<int> ids;
  for (auto& c : set) ids.push_back(tentative.add(c.token, c.cat, c.sem, init_weight));
  TermPtr groot = gold_term(gold);
  auto derivs = parse_all(tokens, tentative);
  for (auto& d : derivs) {
    if (!matches_gold(d, groot)) continue;
    bool uses_all = true;
    for (int id : ids)
      if (std::find(d.features.begin(), d.features.end(), id) == d.features.end()) {
        uses_all = false;
        break;
      }
    if (!uses_all) continue;
    std::vector<Cand> out;
    std::set<std::string> seen;
    for (int f : d.features) {
      const LexEntry& e = tentative.entries[f];
      if (entry_in(original, e.phrase, e.cat, e.sem)) continue;
      Cand c{e.phrase, e.cat, e.sem};
      if (seen.insert(cand_key(c)).second) out.push_back(std::move(c));
    }
    return out;
  }
  return {};
}

// Mechanism 1: identity meanings for every unknown at every pool category,
// verified collectively in one reparse.
std::vector<Cand> trivial_solve(const Lexicon& lex, const std::vector<std::string>& tokens,
                                const AspRule& gold, const std::vector<std::string>& unknowns,
                                const std::vector<CatPtr>& pool, double init_weight) {
  Lexicon tentative = lex;
  std::set<int> fresh;
  TermPtr identity = abs("x", var("x"));
  for (auto& u : unknowns)
    for (auto& c : pool) {
      size_t before = tentative.entries.size();
      int id = tentative.add(u, c, identity, init_weight);
      if (tentative.entries.size() > before) fresh.insert(id);
    }
  TermPtr groot = gold_term(gold);
  std::vector<Cand> out;
  std::set<std::string> seen;
  for (auto& d : parse_all(tokens, tentative)) {
    if (!matches_gold(d, groot)) continue;
    for (int f : d.features) {
      if (!fresh.count(f)) continue;
      const LexEntry& e = tentative.entries[f];
      Cand c{e.phrase, e.cat, e.sem};
      if (seen.insert(cand_key(c)).second) out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Cand> tree_solve(const Lexicon& base, const Lexicon& original,
                             const std::vector<std::string>& tokens, const AspRule& gold,
                             const std::vector<std::string>& unknowns,
                             const std::vector<CatPtr>& pool, double init_weight) {
  std::vector<bool> unknown(tokens.size(), false);
  for (size_t i = 0; i < tokens.size(); ++i)
    for (auto& u : unknowns)
      if (tokens[i] == u) unknown[i] = true;
  TreeSolver solver(tokens, base, unknown, pool);
  TermPtr root = normalize(term_from_rule(gold));
  std::vector<Cand> accepted;
  std::set<std::string> seen;
  std::set<std::string> sets_tried;  // identical sets reparse identically
  for (auto& set : solver.solve_root(root)) {
    std::string set_key;
    for (auto& c : set) {
      set_key += cand_key(c);
      set_key += '\n';
    }
    if (!sets_tried.insert(set_key).second) continue;
    for (auto& c : verify_set(base, original, tokens, gold, set, init_weight)) {
      if (seen.insert(cand_key(c)).second) accepted.push_back(c);
    }
  }
  return accepted;
}

// Mechanisms 1, 2 and 2' for a fixed unknown set.
std::vector<Cand> solve_with_unknowns(const Lexicon& lex,
                                      const std::vector<std::string>& tokens,
                                      const AspRule& gold,
                                      const std::vector<std::string>& unknowns,
                                      const std::vector<CatPtr>& pool, double init_weight) {
  std::vector<Cand> accepted;
  std::set<std::string> seen;
  auto take = [&accepted, &seen](const std::vector<Cand>& cands) {
    for (auto& c : cands)
      if (seen.insert(cand_key(c)).second) accepted.push_back(c);
  };
  take(trivial_solve(lex, tokens, gold, unknowns, pool, init_weight));
  take(tree_solve(lex, lex, tokens, gold, unknowns, pool, init_weight));
  if (unknowns.size() >= 2) {
    TermPtr identity = abs("x", var("x"));
    for (auto& u : unknowns) {
      Lexicon helper = lex;
      for (auto& other : unknowns) {
        if (other == u) continue;
        for (auto& c : pool) helper.add(other, c, identity, init_weight);
      }
      take(tree_solve(helper, lex, tokens, gold, {u}, pool, init_weight));
    }
  }
  return accepted;
}

} // namespace

bool gold_derivable(const Lexicon& lex, const std::vector<std::string>& tokens,
                    const AspRule& gold) {
  TermPtr groot = gold_term(gold);
  for (auto& d : parse_all(tokens, lex))
    if (matches_gold(d, groot)) return true;
  return false;
}

int lexical_generation(Lexicon& lex, const std::vector<std::string>& tokens,
                       const AspRule& gold, const std::vector<CatPtr>& pool,
                       const TrainConfig& cfg) {
  if (tokens.empty()) return 0;
  if (gold_derivable(lex, tokens, gold)) return 0;
  std::vector<std::string> unknowns;
  for (auto& t : tokens)
    if (!lex.has_phrase(t) &&
        std::find(unknowns.begin(), unknowns.end(), t) == unknowns.end())
      unknowns.push_back(t);
  if (static_cast<int>(unknowns.size()) > cfg.max_unknown) return 0;

  std::vector<Cand> accepted;
  if (!unknowns.empty())
    accepted = solve_with_unknowns(lex, tokens, gold, unknowns, pool, cfg.init_weight);
  if (accepted.empty()) {
    // re-learning sweep: re-open one known token at a time, left to right
    for (auto& t : tokens) {
      if (!lex.has_phrase(t)) continue;
      std::vector<std::string> opened;
      for (auto& tok : tokens) {
        bool is_unknown =
            std::find(unknowns.begin(), unknowns.end(), tok) != unknowns.end();
        if ((is_unknown || tok == t) &&
            std::find(opened.begin(), opened.end(), tok) == opened.end())
          opened.push_back(tok);
      }
      accepted = solve_with_unknowns(lex, tokens, gold, opened, pool, cfg.init_weight);
      if (!accepted.empty()) break;
    }
  }
  int added = 0;
  for (auto& c : accepted) {
    size_t before = lex.entries.size();
    lex.add(c.token, c.cat, c.sem, cfg.init_weight);
    if (lex.entries.size() > before) ++added;
  }
  return added;
}

void update_parameters(Lexicon& lex, const std::vector<std::vector<std::string>>& tokens,
                       const std::vector<AspRule>& golds, const TrainConfig& cfg,
                       int* skipped) {
  int skip = 0;
  for (size_t p = 0; p < tokens.size(); ++p) {
    auto derivs = parse_all(tokens[p], lex);
    // Positives are exactly the derivations whose root is alpha-equal to the
    // gold rule; merely equivalent roots count against, like any other parse.
    TermPtr groot = gold_term(golds[p]);
    std::vector<size_t> gold_idx;
    for (size_t i = 0; i < derivs.size(); ++i)
      if (matches_gold(derivs[i], groot)) gold_idx.push_back(i);
    if (derivs.empty() || gold_idx.empty()) {
      ++skip;
      continue;
    }
    std::vector<double> score(derivs.size());
    double max_all = -1e300;
    for (size_t i = 0; i < derivs.size(); ++i) {
      score[i] = derivation_score(derivs[i], lex);
      max_all = std::max(max_all, score[i]);
    }
    double z_all = 0;
    for (size_t i = 0; i < derivs.size(); ++i) z_all += std::exp(score[i] - max_all);
    double max_gold = -1e300;
    for (size_t i : gold_idx) max_gold = std::max(max_gold, score[i]);
    double z_gold = 0;
    for (size_t i : gold_idx) z_gold += std::exp(score[i] - max_gold);

    std::map<int, double> grad;
    for (size_t i : gold_idx) {
      double q = std::exp(score[i] - max_gold) / z_gold;
      for (int f : derivs[i].features) grad[f] += q;
    }
    for (size_t i = 0; i < derivs.size(); ++i) {
      double pr = std::exp(score[i] - max_all) / z_all;
      for (int f : derivs[i].features) grad[f] -= pr;
    }
    for (auto& [f, g] : grad) lex.entries[f].weight += cfg.rate * g;
  }
  if (skipped) *skipped = skip;
}

void generalize(Lexicon& lex, const std::vector<std::string>& noun_vocab) {
  // property templates: \x. tuple(x, c)
  struct Template {
    CatPtr cat;
    double weight;
  };
  std::vector<Template> templates;
  for (auto& e : lex.entries) {
    const TermPtr& s = e.sem;
    if (s->kind != Kind::Abs || s->fun->kind != Kind::Atm || s->fun->name != "tuple") continue;
    if (s->fun->items.size() != 2) continue;
    if (s->fun->items[0]->kind != Kind::Var || s->fun->items[0]->name != s->name) continue;
    if (s->fun->items[1]->kind != Kind::Cst) continue;
    bool found = false;
    for (auto& t : templates)
      if (cat_eq(t.cat, e.cat)) {
        t.weight = std::max(t.weight, e.weight);
        found = true;
      }
    if (!found) templates.push_back({e.cat, e.weight});
  }
  for (auto& noun : noun_vocab)
    for (auto& t : templates)
      lex.add(noun, t.cat, abs("x", atm("tuple", {var("x"), cst(noun)})), t.weight);
}

Lexicon train(const Lexicon& initial, const std::vector<std::vector<std::string>>& tokens,
              const std::vector<AspRule>& golds, const std::vector<CatPtr>& pool,
              const std::vector<std::string>& noun_vocab, const TrainConfig& cfg,
              TrainStats* stats) {
  if (tokens.size() != golds.size()) throw DomainError("train: pair count mismatch");
  Lexicon lex = initial;
  for (int it = 0; it < cfg.iterations; ++it) {
    int added = 0;
    for (size_t p = 0; p < tokens.size(); ++p)
      added += lexical_generation(lex, tokens[p], golds[p], pool, cfg);
    int skip = 0;
    update_parameters(lex, tokens, golds, cfg, &skip);
    if (stats) {
      stats->entries_added.push_back(added);
      stats->pairs_without_gold.push_back(skip);
    }
  }
  generalize(lex, noun_vocab);
  return lex;
}

Translation translate(const Lexicon& lex, const std::vector<std::string>& tokens) {
  Translation t;
  auto bp = best_parse(tokens, lex);
  if (!bp) return t;
  t.parsed = true;
  t.sem = bp->sem;
  if (t.sem->kind == Kind::Constr) {
    try {
      t.rule = rule_from_term(t.sem);
    } catch (const DomainError&) {
    }
  }
  return t;
}

} // namespace logigram
