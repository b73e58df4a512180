#include "logigram/solver.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

namespace logigram {

namespace {

struct Val {
  bool is_num = false;
  long num = 0;
  std::string sym;
};

Val val_num(long v) {
  Val x;
  x.is_num = true;
  x.num = v;
  return x;
}

Val val_sym(std::string s) {
  Val x;
  x.sym = std::move(s);
  return x;
}

Val val_of_element(const std::string& e) {
  if (!e.empty()) {
    bool digits = true;
    size_t start = e[0] == '-' ? 1 : 0;
    if (start == e.size()) digits = false;
    for (size_t i = start; i < e.size() && digits; ++i)
      if (!isdigit(static_cast<unsigned char>(e[i]))) digits = false;
    if (digits) return val_num(std::stol(e));
  }
  return val_sym(e);
}

// Total term order: integers numerically, integers before symbols, symbols
// lexicographically.
int cmp_vals(const Val& a, const Val& b) {
  if (a.is_num && b.is_num) return a.num < b.num ? -1 : a.num > b.num ? 1 : 0;
  if (a.is_num != b.is_num) return a.is_num ? -1 : 1;
  return a.sym < b.sym ? -1 : a.sym > b.sym ? 1 : 0;
}

bool val_eq(const Val& a, const Val& b) { return cmp_vals(a, b) == 0; }

std::string val_str(const Val& v) { return v.is_num ? std::to_string(v.num) : v.sym; }

using Env = std::map<std::string, Val>;

// nullopt: the term cannot be evaluated under this binding (offset applied
// to a non-integer value), so the grounding fails.
std::optional<Val> eval_term(const AspTerm& t, const Env& env) {
  switch (t.k) {
    case AspTerm::Num: return val_num(t.num);
    case AspTerm::Sym: {
      if (t.delta != 0) return std::nullopt;
      return val_sym(t.name);
    }
    case AspTerm::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) return std::nullopt;
      if (t.delta == 0) return it->second;
      if (!it->second.is_num) return std::nullopt;
      return val_num(it->second.num + t.delta);
    }
    case AspTerm::Range: return std::nullopt;
  }
  return std::nullopt;
}

bool is_bound(const AspTerm& t, const Env& env) {
  return t.k != AspTerm::Var || env.count(t.name) > 0;
}

bool builtin_pred(const std::string& p) {
  return p == "highest" || p == "lowest" || p == "first" || p == "maximum" ||
         p == "minimum";
}

bool fact_pred(const std::string& p) {
  return p == "tuple" || p == "etype" || p == "element" || p == "index" || p == "eindex";
}

struct World {
  const PuzzleDomain* d = nullptr;
  const Model* m = nullptr;
  std::vector<bool> present;  // per type: row of m is filled in

  size_t entity_count() const { return d->types[0].elements.size(); }

  Val extremum(size_t type_idx, bool want_max) const {
    const auto& elems = d->types[type_idx].elements;
    Val best = val_of_element(elems[0]);
    for (size_t i = 1; i < elems.size(); ++i) {
      Val v = val_of_element(elems[i]);
      if (want_max ? cmp_vals(v, best) > 0 : cmp_vals(v, best) < 0) best = v;
    }
    return best;
  }
};

// Try to match a bound-or-bindable atom argument against a ground value.
bool match_arg(const AspTerm& a, const Val& v, Env& env) {
  if (a.k == AspTerm::Var) {
    auto it = env.find(a.name);
    if (it == env.end()) {
      if (a.delta != 0) throw DomainError("solver: offset on unbound variable");
      env[a.name] = v;
      return true;
    }
    auto ev = eval_term(a, env);
    return ev && val_eq(*ev, v);
  }
  auto ev = eval_term(a, env);
  return ev && val_eq(*ev, v);
}

bool builtin_extremum_spec(const std::string& pred, bool& want_max) {
  if (pred == "highest" || pred == "maximum") {
    want_max = true;
    return true;
  }
  if (pred == "lowest" || pred == "minimum" || pred == "first") {
    want_max = false;
    return true;
  }
  return false;
}

// Ground truth of a fully bound atom.
bool atom_true(const Literal& l, const World& w, const Env& env) {
  std::vector<Val> vals;
  for (auto& a : l.args) {
    auto v = eval_term(a, env);
    if (!v) return false;
    vals.push_back(*v);
  }
  const auto& types = w.d->types;
  if (l.pred == "tuple" && vals.size() == 2) {
    if (!vals[0].is_num) return false;
    long i = vals[0].num;
    if (i < 1 || i > static_cast<long>(w.entity_count())) return false;
    for (size_t t = 0; t < types.size(); ++t)
      if (w.present[t] && val_eq(val_of_element(w.m->rows[t][i - 1]), vals[1])) return true;
    return false;
  }
  if (l.pred == "etype" && vals.size() == 2) {
    if (!vals[0].is_num) return false;
    long a = vals[0].num;
    return a >= 1 && a <= static_cast<long>(types.size()) &&
           val_eq(val_sym(types[a - 1].name), vals[1]);
  }
  if (l.pred == "element" && vals.size() == 2) {
    if (!vals[0].is_num) return false;
    long a = vals[0].num;
    if (a < 1 || a > static_cast<long>(types.size())) return false;
    for (auto& e : types[a - 1].elements)
      if (val_eq(val_of_element(e), vals[1])) return true;
    return false;
  }
  if (l.pred == "index" && vals.size() == 1)
    return vals[0].is_num && vals[0].num >= 1 && vals[0].num <= static_cast<long>(types.size());
  if (l.pred == "eindex" && vals.size() == 1)
    return vals[0].is_num && vals[0].num >= 1 &&
           vals[0].num <= static_cast<long>(w.entity_count());
  bool want_max = false;
  if (builtin_extremum_spec(l.pred, want_max)) {
    size_t type_idx;
    Val x;
    if (vals.size() == 2) {
      if (!vals[0].is_num || vals[0].num < 1 || vals[0].num > static_cast<long>(types.size()))
        return false;
      type_idx = static_cast<size_t>(vals[0].num - 1);
      x = vals[1];
    } else if (vals.size() == 1) {
      type_idx = static_cast<size_t>(domain_rank(*w.d));
      x = vals[0];
    } else {
      return false;
    }
    return val_eq(w.extremum(type_idx, want_max), x);
  }
  return false;  // unknown predicate: no facts
}

struct BodyEval {
  const World& w;
  std::vector<const Literal*> order;

  BodyEval(const World& world, const std::vector<Literal>& body) : w(world) {
    // Positive facts bind variables first, then builtins (which may bind
    // their value argument), then comparisons, then negation.
    for (auto& l : body)
      if (!l.is_compare && !l.naf && fact_pred(l.pred)) order.push_back(&l);
    for (auto& l : body)
      if (!l.is_compare && !l.naf && builtin_pred(l.pred)) order.push_back(&l);
    for (auto& l : body)
      if (!l.is_compare && !l.naf && !fact_pred(l.pred) && !builtin_pred(l.pred))
        order.push_back(&l);
    for (auto& l : body)
      if (l.is_compare) order.push_back(&l);
    for (auto& l : body)
      if (l.naf) order.push_back(&l);
  }

  bool satisfiable(size_t k, Env& env) const {
    if (k == order.size()) return true;
    const Literal& l = *order[k];
    if (l.is_compare) {
      auto a = eval_term(l.lhs, env);
      auto b = eval_term(l.rhs, env);
      if ((l.lhs.k == AspTerm::Var && !is_bound(l.lhs, env)) ||
          (l.rhs.k == AspTerm::Var && !is_bound(l.rhs, env)))
        throw DomainError("solver: comparison over unbound variable");
      if (!a || !b) return false;
      int c = cmp_vals(*a, *b);
      bool ok = l.op == "=" ? c == 0
                : l.op == "!=" ? c != 0
                : l.op == "<" ? c < 0
                : l.op == ">" ? c > 0
                : l.op == "<=" ? c <= 0
                : l.op == ">=" ? c >= 0
                              : throw DomainError("solver: bad comparison " + l.op);
      return ok && satisfiable(k + 1, env);
    }
    if (l.naf) {
      for (auto& a : l.args)
        if (!is_bound(a, env)) throw DomainError("solver: negation over unbound variable");
      return !atom_true(l, w, env) && satisfiable(k + 1, env);
    }
    if (l.pred == "tuple" && l.args.size() == 2) {
      for (size_t t = 0; t < w.d->types.size(); ++t) {
        if (!w.present[t]) continue;
        for (size_t i = 0; i < w.entity_count(); ++i) {
          Env trial = env;
          if (match_arg(l.args[0], val_num(static_cast<long>(i + 1)), trial) &&
              match_arg(l.args[1], val_of_element(w.m->rows[t][i]), trial) &&
              satisfiable(k + 1, trial)) {
            env = trial;
            return true;
          }
        }
      }
      return false;
    }
    if (l.pred == "etype" && l.args.size() == 2) {
      for (size_t t = 0; t < w.d->types.size(); ++t) {
        Env trial = env;
        if (match_arg(l.args[0], val_num(static_cast<long>(t + 1)), trial) &&
            match_arg(l.args[1], val_sym(w.d->types[t].name), trial) &&
            satisfiable(k + 1, trial)) {
          env = trial;
          return true;
        }
      }
      return false;
    }
    if (l.pred == "element" && l.args.size() == 2) {
      for (size_t t = 0; t < w.d->types.size(); ++t) {
        for (auto& e : w.d->types[t].elements) {
          Env trial = env;
          if (match_arg(l.args[0], val_num(static_cast<long>(t + 1)), trial) &&
              match_arg(l.args[1], val_of_element(e), trial) && satisfiable(k + 1, trial)) {
            env = trial;
            return true;
          }
        }
      }
      return false;
    }
    if (l.pred == "index" && l.args.size() == 1) {
      for (size_t t = 0; t < w.d->types.size(); ++t) {
        Env trial = env;
        if (match_arg(l.args[0], val_num(static_cast<long>(t + 1)), trial) &&
            satisfiable(k + 1, trial)) {
          env = trial;
          return true;
        }
      }
      return false;
    }
    if (l.pred == "eindex" && l.args.size() == 1) {
      for (size_t i = 0; i < w.entity_count(); ++i) {
        Env trial = env;
        if (match_arg(l.args[0], val_num(static_cast<long>(i + 1)), trial) &&
            satisfiable(k + 1, trial)) {
          env = trial;
          return true;
        }
      }
      return false;
    }
    bool want_max = false;
    if (builtin_extremum_spec(l.pred, want_max)) {
      auto try_type = [&](size_t type_idx, const AspTerm& xarg) {
        Env trial = env;
        if (match_arg(xarg, w.extremum(type_idx, want_max), trial) &&
            satisfiable(k + 1, trial)) {
          env = trial;
          return true;
        }
        return false;
      };
      if (l.args.size() == 1) return try_type(static_cast<size_t>(domain_rank(*w.d)), l.args[0]);
      if (l.args.size() == 2) {
        if (is_bound(l.args[0], env)) {
          auto a = eval_term(l.args[0], env);
          if (!a || !a->is_num || a->num < 1 || a->num > static_cast<long>(w.d->types.size()))
            return false;
          return try_type(static_cast<size_t>(a->num - 1), l.args[1]);
        }
        for (size_t t = 0; t < w.d->types.size(); ++t) {
          Env trial = env;
          if (match_arg(l.args[0], val_num(static_cast<long>(t + 1)), trial)) {
            Env saved = env;
            env = trial;
            if (try_type(t, l.args[1])) return true;
            env = saved;
          }
        }
        return false;
      }
      return false;
    }
    return false;  // unknown predicate: no facts to match
  }
};

bool body_satisfiable(const AspRule& r, const World& w) {
  BodyEval ev(w, r.body);
  Env env;
  return ev.satisfiable(0, env);
}

bool has_naf(const AspRule& r) {
  for (auto& l : r.body)
    if (l.naf) return true;
  return false;
}

struct Enumerator {
  const PuzzleDomain& d;
  const std::vector<AspRule>& clues;
  bool prune;
  std::vector<Model> out;
  Model work;
  World w;
  std::vector<size_t> order;

  Enumerator(const PuzzleDomain& dom, const std::vector<AspRule>& cl, bool do_prune)
      : d(dom), clues(cl), prune(do_prune) {
    for (auto& r : clues)
      if (r.kind != AspRule::Constraint)
        throw DomainError("solve: clues must be integrity constraints");
    size_t rank = static_cast<size_t>(domain_rank(d));
    order.push_back(rank);
    for (size_t t = 0; t < d.types.size(); ++t)
      if (t != rank) order.push_back(t);
    work.rows.resize(d.types.size());
    w.d = &d;
    w.m = &work;
    w.present.assign(d.types.size(), false);
  }

  bool partial_ok() const {
    if (!prune) return true;
    for (auto& r : clues)
      if (!has_naf(r) && body_satisfiable(r, w)) return false;
    return true;
  }

  bool complete_ok() const {
    for (auto& r : clues)
      if (body_satisfiable(r, w)) return false;
    return true;
  }

  void dfs(size_t depth) {
    if (depth == order.size()) {
      if (complete_ok()) out.push_back(work);
      return;
    }
    size_t t = order[depth];
    const auto& elems = d.types[t].elements;
    std::vector<size_t> perm(elems.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      work.rows[t].resize(elems.size());
      for (size_t i = 0; i < elems.size(); ++i) work.rows[t][i] = elems[perm[i]];
      w.present[t] = true;
      if (partial_ok()) dfs(depth + 1);
      w.present[t] = false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    work.rows[t].clear();
  }

  std::vector<Model> run() {
    size_t rank = order[0];
    work.rows[rank] = d.types[rank].elements;  // rank row is fixed
    w.present[rank] = true;
    if (!prune || partial_ok()) {
      // remaining types start at depth 1
      if (order.size() == 1) {
        if (complete_ok()) out.push_back(work);
      } else {
        dfs(1);
      }
    }
    return out;
  }
};

} // namespace

std::string model_key(const Model& m) {
  std::string out;
  for (auto& row : m.rows) {
    out += '|';
    for (auto& e : row) {
      out += e;
      out += ',';
    }
  }
  return out;
}

bool model_eq(const Model& a, const Model& b) { return model_key(a) == model_key(b); }

std::vector<Model> all_models(const PuzzleDomain& d, const std::vector<AspRule>& clues) {
  return Enumerator(d, clues, true).run();
}

std::vector<Model> brute_force_models(const PuzzleDomain& d,
                                      const std::vector<AspRule>& clues) {
  return Enumerator(d, clues, false).run();
}

SolveResult solve(const PuzzleDomain& d, const std::vector<AspRule>& clues) {
  auto models = all_models(d, clues);
  SolveResult r;
  r.count = static_cast<long>(models.size());
  r.status = models.empty() ? SolveResult::None
             : models.size() == 1 ? SolveResult::Unique
                                  : SolveResult::Multiple;
  if (!models.empty()) r.model = models.front();
  return r;
}

bool constraint_holds(const AspRule& r, const PuzzleDomain& d, const Model& m) {
  if (r.kind != AspRule::Constraint)
    throw DomainError("constraint_holds: not an integrity constraint");
  World w;
  w.d = &d;
  w.m = &m;
  w.present.assign(d.types.size(), true);
  return !body_satisfiable(r, w);
}

// ---- external solver ------------------------------------------------------------

std::vector<std::vector<std::pair<long, std::string>>> parse_external_answers(
    const std::string& output, bool* unsat) {
  std::vector<std::vector<std::pair<long, std::string>>> answers;
  if (unsat) *unsat = false;
  size_t pos = 0;
  bool expect_atoms = false;
  while (pos <= output.size()) {
    size_t eol = output.find('\n', pos);
    std::string line = output.substr(pos, eol == std::string::npos ? eol : eol - pos);
    pos = eol == std::string::npos ? output.size() + 1 : eol + 1;
    if (line.rfind("Answer:", 0) == 0) {
      expect_atoms = true;
      continue;
    }
    if (line.find("UNSATISFIABLE") != std::string::npos && unsat) *unsat = true;
    if (!expect_atoms) continue;
    expect_atoms = false;
    std::vector<std::pair<long, std::string>> atoms;
    size_t i = 0;
    while ((i = line.find("tuple(", i)) != std::string::npos) {
      i += 6;
      size_t comma = line.find(',', i);
      size_t close = line.find(')', i);
      if (comma == std::string::npos || close == std::string::npos || comma > close) break;
      std::string first = line.substr(i, comma - i);
      std::string second = line.substr(comma + 1, close - comma - 1);
      auto trim = [](std::string& s) {
        while (!s.empty() && isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
      };
      trim(first);
      trim(second);
      try {
        atoms.emplace_back(std::stol(first), second);
      } catch (const std::exception&) {
        // non-numeric first argument: skip the atom
      }
      i = close + 1;
    }
    std::sort(atoms.begin(), atoms.end());
    answers.push_back(std::move(atoms));
  }
  return answers;
}

ExternalResult solve_external(const std::string& program, const std::string& command) {
  ExternalResult res;
  char path[] = "/tmp/logigram_ext_XXXXXX";
  int fd = mkstemp(path);
  if (fd < 0) return res;
  {
    FILE* f = fdopen(fd, "w");
    if (!f) return res;
    fwrite(program.data(), 1, program.size(), f);
    fclose(f);
  }
  std::string cmd = command + " " + path + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe) {
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.raw.append(buf, got);
    pclose(pipe);
  }
  remove(path);
  bool unsat = false;
  res.answers = parse_external_answers(res.raw, &unsat);
  res.unsat = unsat;
  res.ran = res.raw.find("Answer:") != std::string::npos ||
            res.raw.find("SATISFIABLE") != std::string::npos ||
            res.raw.find("UNSATISFIABLE") != std::string::npos;
  return res;
}

} // namespace logigram
