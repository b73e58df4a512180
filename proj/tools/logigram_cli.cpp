#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "logigram/corpus.hpp"
#include "logigram/eval.hpp"
#include "logigram/inverse.hpp"
#include "logigram/learner.hpp"
#include "logigram/solver.hpp"

using namespace logigram;

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::vector<std::vector<std::string>> tokenize_pairs(const PairsFile& pf) {
  std::vector<std::vector<std::string>> out;
  out.reserve(pf.pairs.size());
  for (const auto& p : pf.pairs) out.push_back(preprocess(p.text, pf.merges));
  return out;
}

std::vector<AspRule> parse_golds(const PairsFile& pf) {
  std::vector<AspRule> out;
  out.reserve(pf.pairs.size());
  for (const auto& p : pf.pairs) out.push_back(parse_rule(p.gold));
  return out;
}

int cmd_train(const std::string& pairs_path, const std::string& dict_path,
              const std::string& out_path, int iterations, unsigned long seed) {
  PairsFile pf = load_pairs(pairs_path);
  InitialDict dict = load_dict(dict_path);
  Lexicon initial = expand_dict(dict);

  TrainConfig cfg;
  cfg.iterations = iterations;
  cfg.seed = seed;
  cfg.max_unknown = dict.max_unknown;
  std::vector<CatPtr> pool =
      dict.hyp_cats.empty() ? default_hypothesis_cats() : dict.hyp_cats;

  TrainStats stats;
  Lexicon learned = train(initial, tokenize_pairs(pf), parse_golds(pf), pool,
                          dict.nouns, cfg, &stats);

  ModelFile mf;
  mf.iterations = cfg.iterations;
  mf.seed = cfg.seed;
  mf.lexicon = learned;
  save_model(mf, out_path);

  int added = 0;
  for (int a : stats.entries_added) added += a;
  std::cout << "pairs: " << pf.pairs.size() << "\n"
            << "iterations: " << cfg.iterations << "\n"
            << "entries: " << learned.entries.size() << " (" << added
            << " learned)\n"
            << "model: " << out_path << "\n";
  return 0;
}

void print_translation(const std::string& text, const Translation& t) {
  std::cout << text << "\n";
  if (t.rule) {
    std::cout << "  " << serialize_rule(*t.rule) << "\n";
  } else if (t.parsed) {
    std::cout << "  [parsed, not a constraint] " << print_term(t.sem) << "\n";
  } else {
    std::cout << "  [no parse]\n";
  }
}

int cmd_translate(const std::string& model_path, const std::string& text,
                  const std::string& pairs_path) {
  ModelFile mf = load_model(model_path);
  if (!text.empty()) {
    Translation t = translate(mf.lexicon, preprocess(text, {}));
    print_translation(text, t);
    return t.rule ? 0 : 1;
  }
  PairsFile pf = load_pairs(pairs_path);
  auto toks = tokenize_pairs(pf);
  auto golds = parse_golds(pf);
  int equivalent = 0, exact = 0, translated = 0;
  for (size_t i = 0; i < pf.pairs.size(); ++i) {
    Translation t = translate(mf.lexicon, toks[i]);
    print_translation(pf.pairs[i].text, t);
    if (!t.rule) continue;
    ++translated;
    if (rule_equivalent(*t.rule, golds[i])) ++equivalent;
    if (rule_exact(*t.rule, golds[i])) ++exact;
    std::cout << "  gold: " << pf.pairs[i].gold
              << (rule_equivalent(*t.rule, golds[i]) ? "  [equivalent]" : "  [different]")
              << "\n";
  }
  std::cout << "translated " << translated << "/" << pf.pairs.size()
            << ", equivalent " << equivalent << ", exact " << exact << "\n";
  return 0;
}

void print_model(const PuzzleDomain& d, const Model& m) {
  for (size_t t = 0; t < d.types.size(); ++t) {
    std::cout << "  " << d.types[t].name << ":";
    for (const auto& e : m.rows[t]) std::cout << " " << e;
    std::cout << "\n";
  }
}

int cmd_solve(const std::string& puzzle_path, const std::string& model_path,
              const std::string& external, bool emit) {
  PuzzleFile pz = load_puzzle(puzzle_path);
  std::vector<AspRule> clues;
  if (!model_path.empty()) {
    ModelFile mf = load_model(model_path);
    int done = 0;
    for (const auto& c : pz.clues) {
      Translation t = translate(mf.lexicon, preprocess(c.text, pz.merges));
      if (t.rule && validate_rule(*t.rule, pz.domain).empty()) {
        clues.push_back(*t.rule);
        ++done;
      }
    }
    std::cout << "translated " << done << "/" << pz.clues.size() << " clues\n";
  } else {
    for (const auto& c : pz.clues) clues.push_back(parse_rule(c.gold));
  }

  std::string program = encode_program(pz.domain, clues);
  if (emit) std::cout << program;

  SolveResult r = solve(pz.domain, clues);
  switch (r.status) {
    case SolveResult::None:
      std::cout << "unsatisfiable\n";
      break;
    case SolveResult::Unique:
      std::cout << "unique model\n";
      print_model(pz.domain, *r.model);
      break;
    case SolveResult::Multiple:
      std::cout << r.count << " models; first:\n";
      print_model(pz.domain, *r.model);
      break;
  }

  if (!external.empty()) {
    ExternalResult ext = solve_external(program, external);
    if (!ext.ran) {
      std::cout << "external: not available\n";
    } else if (ext.unsat) {
      std::cout << "external: unsatisfiable\n";
    } else {
      std::cout << "external: " << ext.answers.size() << " answer(s)\n";
    }
  }
  return r.status == SolveResult::None ? 1 : 0;
}

int cmd_eval(const std::string& pairs_path, const std::string& dict_path,
             int kfold, unsigned long seed, int iterations,
             const std::string& out_path) {
  PairsFile pf = load_pairs(pairs_path);
  InitialDict dict = load_dict(dict_path);
  TrainConfig cfg;
  cfg.iterations = iterations;
  cfg.seed = seed;
  std::string report = eval_pairs_report(pf, dict, cfg, kfold);
  if (out_path.empty())
    std::cout << report;
  else
    write_file(out_path, report);
  return 0;
}

int cmd_inverse(bool left, const std::string& h_text, const std::string& g_text,
                bool all) {
  TermPtr h = parse_term(h_text);
  TermPtr g = parse_term(g_text);
  if (all) {
    auto fs = left ? enumerate_inverse_l(h, g) : enumerate_inverse_r(h, g);
    if (fs.empty()) {
      std::cout << "empty\n";
      return 1;
    }
    for (const auto& f : fs) std::cout << print_term(f) << "\n";
    return 0;
  }
  auto f = left ? inverse_l(h, g) : inverse_r(h, g);
  if (!f) {
    std::cout << "empty\n";
    return 1;
  }
  std::cout << print_term(*f) << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"CCG-based logic-puzzle translator and solver"};
  app.require_subcommand(1);

  std::string pairs_path, dict_path, model_path, out_path, puzzle_path;
  std::string text, external, h_text, g_text;
  int iterations = 10, kfold = 0;
  unsigned long seed = 0;
  bool emit = false, all = false, left = false, right = false;

  auto* train = app.add_subcommand("train", "Learn a lexicon from clue/rule pairs");
  train->add_option("--pairs", pairs_path, "training pairs file")->required();
  train->add_option("--dict", dict_path, "initial dictionary file")->required();
  train->add_option("--out", out_path, "model output path")->required();
  train->add_option("--iterations", iterations, "training iterations");
  train->add_option("--seed", seed, "fold-split seed recorded in the model");

  auto* tr = app.add_subcommand("translate", "Translate clues with a trained model");
  tr->add_option("--model", model_path, "trained model file")->required();
  tr->add_option("--text", text, "single clue sentence");
  tr->add_option("--pairs", pairs_path, "pairs file to translate and compare");

  auto* solve = app.add_subcommand("solve", "Solve a puzzle from gold or translated rules");
  solve->add_option("--puzzle", puzzle_path, "puzzle file")->required();
  solve->add_option("--model", model_path, "translate clues with this model (default: gold rules)");
  solve->add_option("--external", external, "external solver command to cross-check");
  solve->add_flag("--emit", emit, "print the full logic program");

  auto* ev = app.add_subcommand("eval", "Evaluation report over clue/rule pairs");
  ev->add_option("--pairs", pairs_path, "pairs file")->required();
  ev->add_option("--dict", dict_path, "initial dictionary file")->required();
  ev->add_option("--kfold", kfold, "number of folds (0: train and test on all pairs)");
  ev->add_option("--seed", seed, "fold-split seed");
  ev->add_option("--iterations", iterations, "training iterations");
  ev->add_option("--out", out_path, "write the JSON report here instead of stdout");

  auto* inv = app.add_subcommand("inverse", "Inverse application on lambda terms");
  inv->add_flag("--left", left, "solve F in F @ G = H");
  inv->add_flag("--right", right, "solve F in G @ F = H");
  inv->add_option("H", h_text, "result term")->required();
  inv->add_option("G", g_text, "known operand term")->required();
  inv->add_flag("--all", all, "print every candidate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(train))
      return cmd_train(pairs_path, dict_path, out_path, iterations, seed);
    if (app.got_subcommand(tr)) {
      if (text.empty() == pairs_path.empty()) {
        std::cerr << "translate needs exactly one of --text / --pairs\n";
        return 2;
      }
      return cmd_translate(model_path, text, pairs_path);
    }
    if (app.got_subcommand(solve))
      return cmd_solve(puzzle_path, model_path, external, emit);
    if (app.got_subcommand(ev))
      return cmd_eval(pairs_path, dict_path, kfold, seed, iterations, out_path);
    if (app.got_subcommand(inv)) {
      if (left == right) {
        std::cerr << "inverse needs exactly one of --left / --right\n";
        return 2;
      }
      return cmd_inverse(left, h_text, g_text, all);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
