#include "logigram/ccg.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace logigram {

int Lexicon::add(const std::string& phrase, const CatPtr& cat, const TermPtr& sem,
                 double weight) {
  TermPtr norm = normalize(sem);
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].phrase == phrase && cat_eq(entries[i].cat, cat) &&
        alpha_eq(entries[i].sem, norm))
      return static_cast<int>(i);
  entries.push_back({phrase, cat, norm, weight});
  return static_cast<int>(entries.size()) - 1;
}

std::vector<int> Lexicon::find(const std::string& phrase) const {
  std::vector<int> out;
  for (size_t i = 0; i < entries.size(); ++i)
    if (entries[i].phrase == phrase) out.push_back(static_cast<int>(i));
  return out;
}

bool Lexicon::has_phrase(const std::string& phrase) const {
  for (auto& e : entries)
    if (e.phrase == phrase) return true;
  return false;
}

namespace {

std::vector<int> merge_features(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

} // namespace

Chart build_chart(const std::vector<std::string>& tokens, const Lexicon& lex) {
  Chart chart;
  int n = static_cast<int>(tokens.size());
  chart.n = n;
  chart.cells.assign(n + 1, std::vector<std::vector<int>>(n + 1));
  // Cell-level dedup: bucket by feature multiset, then compare category and
  // semantics pairwise; buckets stay tiny, so no canonical strings are built.
  std::vector<std::map<std::vector<int>, std::vector<int>>> seen(
      static_cast<size_t>(n + 1) * (n + 1));
  auto insert = [&chart, &seen, n](ChartItem it) {
    auto& bucket = seen[static_cast<size_t>(it.start) * (n + 1) + it.end][it.features];
    for (int id : bucket) {
      const ChartItem& old = chart.pool[id];
      if (cat_eq(old.cat, it.cat) && alpha_eq(old.sem, it.sem)) return;
    }
    int id = static_cast<int>(chart.pool.size());
    bucket.push_back(id);
    chart.pool.push_back(std::move(it));
    chart.cells[chart.pool.back().start][chart.pool.back().end].push_back(id);
  };
  // Entry semantics are closed, so pairwise unification of cached principal
  // types decides typability without re-inferring the combined term.
  auto entry_type = [&lex](int e) -> TypePtr {
    const LexEntry& le = lex.entries[e];
    if (!le.ty_ready) {
      auto t = try_infer(le.sem);
      le.ty_cache = t ? *t : nullptr;  // null: never combines; may still leaf
      le.ty_ready = true;
    }
    return le.ty_cache;
  };
  // Combine under the type gate; null result means the pair was pruned.
  auto combine = [](const ChartItem& fn, const ChartItem& arg) -> ChartItem {
    ChartItem it;
    if (!fn.type || !arg.type) return it;
    auto rt = apply_type(fn.type, arg.type);
    if (!rt) return it;
    try {
      it.sem = normalize(app(fn.sem, arg.sem));
    } catch (const DomainError&) {
      return it;  // step cap
    }
    it.type = *rt;
    return it;
  };

  for (int len = 1; len <= n; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      int j = i + len;
      // lexical fill: the joined token span as a phrase
      std::string phrase = tokens[i];
      for (int k = i + 1; k < j; ++k) {
        phrase += ' ';
        phrase += tokens[k];
      }
      for (int e : lex.find(phrase)) {
        ChartItem it;
        it.cat = lex.entries[e].cat;
        it.sem = lex.entries[e].sem;
        it.type = entry_type(e);
        it.features = {e};
        it.start = i;
        it.end = j;
        it.entry = e;
        insert(std::move(it));
      }
      // binary combinations.  References into the pool are re-taken every
      // iteration and dropped before insert(), which may grow the pool.
      for (int k = i + 1; k < j; ++k) {
        const auto left_ids = chart.cells[i][k];
        const auto right_ids = chart.cells[k][j];
        // forward application: X/Y  Y  =>  X
        for (int li : left_ids) {
          if (chart.pool[li].cat->k != Category::Fwd) continue;
          for (int ri : right_ids) {
            const ChartItem& L = chart.pool[li];
            const ChartItem& R = chart.pool[ri];
            if (!cat_eq(L.cat->arg, R.cat)) continue;
            ChartItem it = combine(L, R);
            if (!it.sem) continue;
            it.cat = L.cat->res;
            it.features = merge_features(L.features, R.features);
            it.start = i;
            it.end = j;
            it.left = li;
            it.right = ri;
            insert(std::move(it));
          }
        }
        // backward application: Y  X\Y  =>  X
        for (int li : left_ids) {
          for (int ri : right_ids) {
            const ChartItem& L = chart.pool[li];
            const ChartItem& R = chart.pool[ri];
            if (R.cat->k != Category::Bwd) continue;
            if (!cat_eq(R.cat->arg, L.cat)) continue;
            ChartItem it = combine(R, L);
            if (!it.sem) continue;
            it.cat = R.cat->res;
            it.features = merge_features(L.features, R.features);
            it.start = i;
            it.end = j;
            it.left = li;
            it.right = ri;
            insert(std::move(it));
          }
        }
      }
    }
  }
  return chart;
}

std::vector<Derivation> root_derivations(const Chart& chart) {
  std::vector<Derivation> out;
  if (chart.n == 0) return out;
  for (int id : chart.cells[0][chart.n]) {
    const ChartItem& it = chart.pool[id];
    if (it.cat->k == Category::Atom && it.cat->name == "S")
      out.push_back({it.cat, it.sem, it.features, id});
  }
  return out;
}

std::vector<Derivation> parse_all(const std::vector<std::string>& tokens,
                                  const Lexicon& lex) {
  if (tokens.empty()) return {};
  return root_derivations(build_chart(tokens, lex));
}

double derivation_score(const Derivation& d, const Lexicon& lex) {
  double s = 0;
  for (int f : d.features) s += lex.entries[f].weight;
  return s;
}

std::optional<Derivation> best_parse(const std::vector<std::string>& tokens,
                                     const Lexicon& lex) {
  auto all = parse_all(tokens, lex);
  if (all.empty()) return std::nullopt;
  size_t best = 0;
  double best_score = derivation_score(all[0], lex);
  for (size_t i = 1; i < all.size(); ++i) {
    double s = derivation_score(all[i], lex);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  return all[best];
}

std::string entry_to_tsv(const LexEntry& e) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, e.weight);
  return e.phrase + "\t" + print_cat(e.cat) + "\t" + print_term(e.sem) + "\t" +
         std::string(buf, res.ptr);
}

LexEntry entry_from_tsv(const std::string& line) {
  std::vector<std::string> parts;
  size_t pos = 0;
  while (parts.size() < 3) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) throw ParseError("lexicon line needs 4 tab-separated fields");
    parts.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  parts.push_back(line.substr(pos));
  LexEntry e;
  e.phrase = parts[0];
  e.cat = parse_cat(parts[1]);
  e.sem = parse_term(parts[2]);
  double w = 0;
  auto res = std::from_chars(parts[3].data(), parts[3].data() + parts[3].size(), w);
  if (res.ec != std::errc()) throw ParseError("lexicon line: bad weight: " + parts[3]);
  e.weight = w;
  return e;
}

} // namespace logigram
