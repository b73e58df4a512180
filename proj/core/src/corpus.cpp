#include "logigram/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

namespace logigram {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    std::string line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
    pos = eol + 1;
  }
  return lines;
}

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool take_prefix(const std::string& line, const char* key, std::string& rest) {
  size_t n = strlen(key);
  if (line.compare(0, n, key) != 0) return false;
  if (line.size() > n && !isspace(static_cast<unsigned char>(line[n]))) return false;
  rest = trim(line.substr(n));
  return true;
}

// "phrase -> token"
std::pair<std::string, std::string> parse_merge(const std::string& rest) {
  size_t arrow = rest.find("->");
  if (arrow == std::string::npos) throw ParseError("merge line needs '->': " + rest);
  std::string phrase = trim(rest.substr(0, arrow));
  std::string token = trim(rest.substr(arrow + 2));
  if (phrase.empty() || token.empty()) throw ParseError("merge line incomplete: " + rest);
  return {phrase, token};
}

void expect_header(const std::vector<std::string>& lines, const char* tag,
                   const std::string& path) {
  if (lines.empty() || trim(lines[0]) != tag)
    throw ParseError(path + ": expected header '" + tag + "'");
}

bool skippable(const std::string& line) {
  std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

} // namespace

std::vector<std::string> preprocess(const std::string& text, const MergeList& merges) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (unsigned char c : text) {
    if (c == '\'') continue;  // apostrophes deleted: "Donna's" -> "donnas"
    if (c == '-') {
      cleaned += ' ';
      continue;
    }
    if (isalnum(c) || c == '_') {
      cleaned += static_cast<char>(tolower(c));
    } else {
      cleaned += ' ';
    }
  }
  std::vector<std::string> tokens;
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);

  // longest-match merge pass over token sequences
  std::vector<std::pair<std::vector<std::string>, std::string>> rules;
  for (auto& m : merges) {
    std::vector<std::string> phrase_toks;
    std::istringstream p(m.first);
    std::string w;
    while (p >> w) phrase_toks.push_back(w);
    if (!phrase_toks.empty()) rules.push_back({std::move(phrase_toks), m.second});
  }
  std::stable_sort(rules.begin(), rules.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
  std::vector<std::string> out;
  size_t i = 0;
  while (i < tokens.size()) {
    bool merged = false;
    for (auto& r : rules) {
      size_t len = r.first.size();
      if (i + len > tokens.size()) continue;
      bool match = true;
      for (size_t k = 0; k < len && match; ++k)
        if (tokens[i + k] != r.first[k]) match = false;
      if (match) {
        out.push_back(r.second);
        i += len;
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(tokens[i]);
      ++i;
    }
  }
  return out;
}

MergeList domain_merges(const PuzzleDomain& d) {
  MergeList merges;
  for (auto& t : d.types)
    for (auto& e : t.elements) {
      if (e.find('_') == std::string::npos) continue;
      std::string spaced = e;
      std::replace(spaced.begin(), spaced.end(), '_', ' ');
      merges.push_back({spaced, e});
    }
  return merges;
}

PairsFile load_pairs(const std::string& path) {
  auto lines = split_lines(read_file(path));
  expect_header(lines, "%pairs v1", path);
  PairsFile out;
  std::string pending_clue;
  bool have_clue = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    std::string rest;
    if (take_prefix(lines[i], "merge", rest)) {
      out.merges.push_back(parse_merge(rest));
    } else if (take_prefix(lines[i], "clue", rest)) {
      if (have_clue) throw ParseError(path + ": clue without gold");
      pending_clue = rest;
      have_clue = true;
    } else if (take_prefix(lines[i], "gold", rest)) {
      if (!have_clue) throw ParseError(path + ": gold without clue");
      parse_rule(rest);  // validate now, fail early
      out.pairs.push_back({pending_clue, rest});
      have_clue = false;
    } else {
      throw ParseError(path + ": bad line: " + lines[i]);
    }
  }
  if (have_clue) throw ParseError(path + ": trailing clue without gold");
  return out;
}

PuzzleFile load_puzzle(const std::string& path) {
  auto lines = split_lines(read_file(path));
  expect_header(lines, "%puzzle v1", path);
  PuzzleFile out;
  std::string pending_clue;
  bool have_clue = false;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    std::string rest;
    if (take_prefix(lines[i], "type", rest)) {
      size_t colon = rest.find(':');
      if (colon == std::string::npos) throw ParseError(path + ": type line needs ':'");
      std::string head = trim(rest.substr(0, colon));
      bool is_rank = false;
      if (!head.empty() && head.back() == '*') {
        is_rank = true;
        head = trim(head.substr(0, head.size() - 1));
      }
      if (head.empty()) throw ParseError(path + ": type line needs a name");
      PuzzleDomain::TypeRow row;
      row.name = head;
      std::string elems = rest.substr(colon + 1);
      size_t pos = 0;
      while (pos <= elems.size()) {
        size_t comma = elems.find(',', pos);
        std::string e = trim(comma == std::string::npos ? elems.substr(pos)
                                                        : elems.substr(pos, comma - pos));
        if (!e.empty()) row.elements.push_back(e);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
      if (row.elements.empty()) throw ParseError(path + ": type has no elements");
      if (is_rank) {
        if (out.domain.rank_index >= 0) throw ParseError(path + ": two rank types");
        out.domain.rank_index = static_cast<int>(out.domain.types.size());
      }
      out.domain.types.push_back(std::move(row));
    } else if (take_prefix(lines[i], "merge", rest)) {
      out.merges.push_back(parse_merge(rest));
    } else if (take_prefix(lines[i], "clue", rest)) {
      if (have_clue) throw ParseError(path + ": clue without gold");
      pending_clue = rest;
      have_clue = true;
    } else if (take_prefix(lines[i], "gold", rest)) {
      if (!have_clue) throw ParseError(path + ": gold without clue");
      parse_rule(rest);
      out.clues.push_back({pending_clue, rest});
      have_clue = false;
    } else {
      throw ParseError(path + ": bad line: " + lines[i]);
    }
  }
  if (have_clue) throw ParseError(path + ": trailing clue without gold");
  if (out.domain.types.empty()) throw ParseError(path + ": no types");
  if (out.domain.rank_index < 0) out.domain.rank_defaulted = true;
  auto dm = domain_merges(out.domain);
  out.merges.insert(out.merges.end(), dm.begin(), dm.end());
  return out;
}

InitialDict load_dict(const std::string& path) {
  auto lines = split_lines(read_file(path));
  expect_header(lines, "%dict v1", path);
  InitialDict out;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    std::string rest;
    if (take_prefix(lines[i], "maxunknown", rest)) {
      out.max_unknown = std::stoi(rest);
    } else if (take_prefix(lines[i], "vcat", rest)) {
      out.verb_cats.push_back(parse_cat(rest));
    } else if (take_prefix(lines[i], "ncat", rest)) {
      out.noun_cats.push_back(parse_cat(rest));
    } else if (take_prefix(lines[i], "hypcat", rest)) {
      out.hyp_cats.push_back(parse_cat(rest));
    } else if (take_prefix(lines[i], "verb", rest)) {
      out.verbs.push_back(rest);
    } else if (take_prefix(lines[i], "noun", rest)) {
      out.nouns.push_back(rest);
    } else if (take_prefix(lines[i], "gk", rest)) {
      std::istringstream in(rest);
      std::array<std::string, 3> g;
      std::string cat_text;
      if (!(in >> g[0] >> g[1])) throw ParseError(path + ": gk line needs token and predicate");
      std::getline(in, cat_text);
      g[2] = trim(cat_text);
      if (g[2].empty()) g[2] = "N";
      out.gk.push_back(std::move(g));
    } else {
      throw ParseError(path + ": bad line: " + lines[i]);
    }
  }
  return out;
}

Lexicon expand_dict(const InitialDict& d) {
  Lexicon lex;
  const TermPtr x = var("x"), y = var("y");
  std::vector<TermPtr> verb_sems = {
      // inequality constraint between the two argument properties
      abs("x", abs("y", constr({app(y, cst("I")), app(x, cst("J")),
                                cmp(cst("I"), "!=", cst("J"))}))),
      abs("x", abs("y", app(x, y))),
      abs("x", abs("y", app(y, x))),
      abs("x", x),
  };
  for (auto& v : d.verbs)
    for (auto& sem : verb_sems)
      for (auto& c : d.verb_cats) lex.add(v, c, sem);
  for (auto& n : d.nouns) {
    std::vector<TermPtr> noun_sems = {abs("x", atm("tuple", {x, cst(n)})), abs("x", x)};
    for (auto& sem : noun_sems)
      for (auto& c : d.noun_cats) lex.add(n, c, sem);
  }
  for (auto& g : d.gk) lex.add(g[0], parse_cat(g[2]), abs("x", atm(g[1], {x})));
  return lex;
}

// ---- model files ------------------------------------------------------------

std::string model_to_string(const ModelFile& m) {
  std::string out = "%model v1\n";
  out += "%iterations " + std::to_string(m.iterations) + "\n";
  out += "%seed " + std::to_string(m.seed) + "\n";
  for (auto& e : m.lexicon.entries) {
    out += entry_to_tsv(e);
    out += '\n';
  }
  return out;
}

ModelFile model_from_string(const std::string& text) {
  auto lines = split_lines(text);
  expect_header(lines, "%model v1", "<model>");
  ModelFile m;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::string rest;
    if (take_prefix(lines[i], "%iterations", rest)) {
      m.iterations = std::stoi(rest);
    } else if (take_prefix(lines[i], "%seed", rest)) {
      m.seed = std::stoul(rest);
    } else {
      LexEntry e = entry_from_tsv(lines[i]);
      m.lexicon.entries.push_back(std::move(e));
    }
  }
  return m;
}

ModelFile load_model(const std::string& path) { return model_from_string(read_file(path)); }

void save_model(const ModelFile& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + path);
  out << model_to_string(m);
}

std::vector<int> kfold_assignment(size_t n, int k, unsigned long seed) {
  if (k < 2) throw DomainError("kfold: k must be at least 2");
  if (n < static_cast<size_t>(k)) throw DomainError("kfold: fewer items than folds");
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  // Fisher-Yates with explicit modulo keeps the permutation identical across
  // standard library implementations.
  std::mt19937_64 rng(seed);
  for (size_t j = n; j > 1; --j) {
    size_t pick = static_cast<size_t>(rng() % j);
    std::swap(idx[j - 1], idx[pick]);
  }
  std::vector<int> fold(n, 0);
  for (size_t j = 0; j < n; ++j) fold[idx[j]] = static_cast<int>(j % static_cast<size_t>(k));
  return fold;
}

} // namespace logigram
