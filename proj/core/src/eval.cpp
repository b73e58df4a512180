#include "logigram/eval.hpp"

#include <cmath>

#include <json.hpp>

namespace logigram {

namespace {

void finish_metrics(ClueMetrics& m) {
  if (m.translated > 0) {
    m.precision = static_cast<double>(m.equivalent) / m.translated;
  } else {
    m.precision = 0;
    m.zero_translations = m.total > 0;
  }
  m.recall = m.total > 0 ? static_cast<double>(m.exact) / m.total : 0;
  m.f1 = m.precision + m.recall > 0
             ? 2 * m.precision * m.recall / (m.precision + m.recall)
             : 0;
}

} // namespace

ClueMetrics evaluate_clues(const Lexicon& lex,
                           const std::vector<std::vector<std::string>>& tokens,
                           const std::vector<AspRule>& golds) {
  ClueMetrics m;
  m.total = static_cast<int>(tokens.size());
  for (size_t i = 0; i < tokens.size(); ++i) {
    Translation t = translate(lex, tokens[i]);
    if (!t.parsed || !t.rule) continue;
    ++m.translated;
    if (rule_equivalent(*t.rule, golds[i])) ++m.equivalent;
    if (rule_exact(*t.rule, golds[i])) ++m.exact;
  }
  finish_metrics(m);
  return m;
}

double compound_accuracy(double per_clue, int n) { return std::pow(per_clue, n); }

PuzzleOutcome evaluate_puzzle(const Lexicon& lex, const PuzzleFile& puzzle) {
  PuzzleOutcome out;
  out.clue_count = static_cast<int>(puzzle.clues.size());
  std::vector<AspRule> golds, translated;
  for (auto& c : puzzle.clues) {
    golds.push_back(parse_rule(c.gold));
    Translation t = translate(lex, preprocess(c.text, puzzle.merges));
    if (t.parsed && t.rule && validate_rule(*t.rule, puzzle.domain).empty()) {
      translated.push_back(*t.rule);
      ++out.clues_translated;
    }
  }
  SolveResult ref = solve(puzzle.domain, golds);
  out.reference_unique = ref.status == SolveResult::Unique;
  SolveResult got = solve(puzzle.domain, translated);
  out.solved_unique = got.status == SolveResult::Unique;
  out.matches_reference = out.reference_unique && out.solved_unique &&
                          model_eq(*ref.model, *got.model);
  return out;
}

namespace {

nlohmann::ordered_json metrics_json(const ClueMetrics& m) {
  nlohmann::ordered_json j;
  j["total"] = m.total;
  j["translated"] = m.translated;
  j["equivalent"] = m.equivalent;
  j["exact"] = m.exact;
  j["precision"] = m.precision;
  j["recall"] = m.recall;
  j["f1"] = m.f1;
  j["zero_translations"] = m.zero_translations;
  return j;
}

} // namespace

std::string eval_pairs_report(const PairsFile& pairs, const InitialDict& dict,
                              const TrainConfig& cfg, int kfold) {
  std::vector<std::vector<std::string>> tokens;
  std::vector<AspRule> golds;
  for (auto& p : pairs.pairs) {
    tokens.push_back(preprocess(p.text, pairs.merges));
    golds.push_back(parse_rule(p.gold));
  }
  Lexicon initial = expand_dict(dict);
  std::vector<CatPtr> pool =
      dict.hyp_cats.empty() ? default_hypothesis_cats() : dict.hyp_cats;
  TrainConfig tcfg = cfg;
  tcfg.max_unknown = dict.max_unknown;

  nlohmann::ordered_json report;
  report["report"] = "logigram-eval";
  report["version"] = 1;
  report["mode"] = kfold >= 2 ? "kfold" : "resubstitution";
  nlohmann::ordered_json config;
  config["iterations"] = tcfg.iterations;
  config["rate"] = tcfg.rate;
  config["init_weight"] = tcfg.init_weight;
  config["max_unknown"] = tcfg.max_unknown;
  config["seed"] = tcfg.seed;
  config["kfold"] = kfold >= 2 ? kfold : 0;
  report["config"] = config;
  report["pairs"] = static_cast<int>(pairs.pairs.size());

  auto folds = nlohmann::ordered_json::array();
  ClueMetrics overall;
  if (kfold >= 2) {
    std::vector<int> fold = kfold_assignment(pairs.pairs.size(), kfold, tcfg.seed);
    for (int f = 0; f < kfold; ++f) {
      std::vector<std::vector<std::string>> train_toks, eval_toks;
      std::vector<AspRule> train_golds, eval_golds;
      for (size_t i = 0; i < tokens.size(); ++i) {
        if (fold[i] == f) {
          eval_toks.push_back(tokens[i]);
          eval_golds.push_back(golds[i]);
        } else {
          train_toks.push_back(tokens[i]);
          train_golds.push_back(golds[i]);
        }
      }
      Lexicon trained =
          train(initial, train_toks, train_golds, pool, dict.nouns, tcfg, nullptr);
      ClueMetrics m = evaluate_clues(trained, eval_toks, eval_golds);
      overall.total += m.total;
      overall.translated += m.translated;
      overall.equivalent += m.equivalent;
      overall.exact += m.exact;
      nlohmann::ordered_json fj;
      fj["fold"] = f;
      fj["train_pairs"] = static_cast<int>(train_toks.size());
      fj["eval_pairs"] = static_cast<int>(eval_toks.size());
      fj["metrics"] = metrics_json(m);
      folds.push_back(fj);
    }
    finish_metrics(overall);
  } else {
    Lexicon trained = train(initial, tokens, golds, pool, dict.nouns, tcfg, nullptr);
    overall = evaluate_clues(trained, tokens, golds);
  }
  report["folds"] = folds;
  report["overall"] = metrics_json(overall);
  report["compound_accuracy"] =
      compound_accuracy(overall.precision, static_cast<int>(pairs.pairs.size()));
  return report.dump(2) + "\n";
}

} // namespace logigram
