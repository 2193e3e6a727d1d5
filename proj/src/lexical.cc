#include "listforge/lexical.h"

#include <cctype>
#include <fstream>
#include <unordered_map>
#include <unordered_set>

#include "listforge/util.h"

namespace listforge {

namespace {

const std::unordered_map<std::string, std::string> &irregular_plurals() {
  static const std::unordered_map<std::string, std::string> kMap = {
      {"people", "person"},     {"men", "man"},           {"women", "woman"},
      {"children", "child"},    {"media", "medium"},      {"criteria", "criterion"},
      {"phenomena", "phenomenon"}, {"data", "datum"},     {"mice", "mouse"},
      {"geese", "goose"},       {"feet", "foot"},         {"teeth", "tooth"},
      {"alumni", "alumnus"},    {"fungi", "fungus"},      {"cacti", "cactus"},
      {"larvae", "larva"},      {"algae", "alga"},        {"oxen", "ox"},
      {"indices", "index"},     {"vertices", "vertex"},   {"matrices", "matrix"},
      {"analyses", "analysis"}, {"theses", "thesis"},     {"crises", "crisis"},
      {"species", "species"},   {"series", "series"},     {"aircraft", "aircraft"},
      {"police", "police"},     {"wives", "wife"},        {"knives", "knife"},
      {"lives", "life"},        {"wolves", "wolf"},       {"leaves", "leaf"},
      {"halves", "half"},       {"thieves", "thief"},     {"heroes", "hero"},
      {"potatoes", "potato"},   {"tomatoes", "tomato"},   {"genera", "genus"},
      {"taxa", "taxon"},        {"bacteria", "bacterium"}, {"clergy", "clergy"},
  };
  return kMap;
}

// Words ending in -s that are singular or mass nouns.
const std::unordered_set<std::string> &singular_s_words() {
  static const std::unordered_set<std::string> kSet = {
      "news",     "physics",  "mathematics", "economics", "politics",
      "athletics", "gymnastics", "linguistics", "ethics",  "genetics",
      "bus",      "gas",      "lens",        "chaos",     "atlas",
      "canvas",   "bias",     "always",      "perhaps",   "various",
  };
  return kSet;
}

const std::unordered_set<std::string> &men_exceptions() {
  static const std::unordered_set<std::string> kSet = {
      "specimen", "abdomen", "omen", "amen", "stamen", "regimen", "hymen", "acumen"};
  return kSet;
}

const std::unordered_set<std::string> &truncating_prepositions() {
  static const std::unordered_set<std::string> kSet = {"from", "of", "in", "by", "for", "at"};
  return kSet;
}

const std::unordered_set<std::string> &function_words() {
  static const std::unordered_set<std::string> kSet = {
      "the", "a", "an", "and", "or", "of", "from", "in", "by", "for", "at", "to",
      "on", "with", "&", "nor", "as", "about", "into", "per", "vs", "vs.", "versus"};
  return kSet;
}

bool has_letter(std::string_view s) {
  for (unsigned char c : s) {
    if (std::isalpha(c) || c >= 0x80) return true;
  }
  return false;
}

std::string strip_punct(std::string_view token) {
  size_t b = 0, e = token.size();
  auto punct = [](unsigned char c) {
    return c < 0x80 && std::ispunct(c) && c != '&' && c != '-';
  };
  while (b < e && punct(token[b])) ++b;
  while (e > b && punct(token[e - 1])) --e;
  return std::string(token.substr(b, e - b));
}

WordPair normalized_pair(std::string_view a, std::string_view b) {
  return {normalize_phrase(a), normalize_phrase(b)};
}

std::vector<std::string> read_tsv_lines(const std::string &path, size_t fields,
                                        std::vector<int> *line_numbers) {
  std::ifstream in(path);
  std::vector<std::string> rows;
  if (!in) return rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    auto parts = split(line, '\t');
    if (parts.size() != fields) {
      throw ParseError(path, lineno,
                       "expected " + std::to_string(fields) + " tab-separated fields, got " +
                           std::to_string(parts.size()));
    }
    rows.push_back(line);
    line_numbers->push_back(lineno);
  }
  return rows;
}

}  // namespace

std::string clean_phrase(std::string_view phrase) {
  std::string s;
  s.reserve(phrase.size());
  for (char c : phrase) s.push_back(c == '_' ? ' ' : c);
  return join(split_words(to_lower(s)), " ");
}

std::string normalize_phrase(std::string_view phrase) {
  auto words = split_words(clean_phrase(phrase));
  for (auto &w : words) w = singularize(w);
  return join(words, " ");
}

bool is_plural(std::string_view word_in) {
  std::string word = to_lower(word_in);
  if (word.empty()) return false;
  if (irregular_plurals().count(word)) return true;
  if (singular_s_words().count(word)) return false;
  // Compounds such as "businessmen", "sportswomen", "townspeople".
  if (word.size() > 3 && word.compare(word.size() - 3, 3, "men") == 0 &&
      !men_exceptions().count(word)) {
    return true;
  }
  if (word.size() > 6 && word.compare(word.size() - 6, 6, "people") == 0) return true;
  if (word.size() < 3 || word.back() != 's') return false;
  std::string_view tail(word.data() + word.size() - 2, 2);
  return tail != "ss" && tail != "us" && tail != "is";
}

std::string singularize(std::string_view word_in) {
  std::string word(word_in);
  auto it = irregular_plurals().find(word);
  if (it != irregular_plurals().end()) return it->second;
  if (!is_plural(word)) return word;
  auto ends = [&](std::string_view suf) {
    return word.size() > suf.size() &&
           word.compare(word.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends("people")) return word.substr(0, word.size() - 6) + "person";
  if (ends("men")) return word.substr(0, word.size() - 3) + "man";
  if (ends("ies") && word.size() > 4) return word.substr(0, word.size() - 3) + "y";
  if (ends("sses") || ends("xes") || ends("ches") || ends("shes") || ends("zes")) {
    return word.substr(0, word.size() - 2);
  }
  return word.substr(0, word.size() - 1);
}

std::string head_noun(std::string_view phrase) {
  std::vector<std::string> tokens;
  int paren_depth = 0;
  for (const auto &raw : split_words(clean_phrase(phrase))) {
    bool opens = !raw.empty() && raw.front() == '(';
    bool closes = !raw.empty() && raw.back() == ')';
    if (opens) ++paren_depth;
    if (paren_depth == 0) {
      std::string tok = strip_punct(raw);
      if (!tok.empty()) tokens.push_back(std::move(tok));
    }
    if (closes && paren_depth > 0) --paren_depth;
  }
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (truncating_prepositions().count(tokens[i])) {
      tokens.resize(i);
      break;
    }
  }
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (!function_words().count(*it) && has_letter(*it)) return *it;
  }
  throw Error("no head noun in \"" + std::string(phrase) + "\"");
}

std::string strip_list_prefix(std::string_view title) {
  for (std::string_view prefix : {"Lists of ", "List of ", "Lists_of_", "List_of_"}) {
    if (starts_with(title, prefix)) return std::string(title.substr(prefix.size()));
  }
  return std::string(title);
}

void SynonymTable::add(std::string_view a, std::string_view b) {
  std::string na = normalize_phrase(a), nb = normalize_phrase(b);
  pairs_.emplace(na, nb);
  pairs_.emplace(nb, na);
}

bool SynonymTable::contains(std::string_view a, std::string_view b) const {
  if (pairs_.empty()) return false;
  return pairs_.count({normalize_phrase(a), normalize_phrase(b)}) > 0;
}

std::set<std::string> SynonymTable::synonyms_of(std::string_view phrase) const {
  std::set<std::string> out;
  std::string key = normalize_phrase(phrase);
  for (auto it = pairs_.lower_bound({key, ""}); it != pairs_.end() && it->first == key; ++it) {
    out.insert(it->second);
  }
  return out;
}

bool is_synonym(std::string_view a, std::string_view b, const SynonymTable &table) {
  if (normalize_phrase(a) == normalize_phrase(b)) return true;
  return table.contains(a, b);
}

namespace {

// Evidence may be keyed by normalized or by merely cleaned phrases; the
// stronger entry wins.
template <class V>
const V *best_entry(const std::map<WordPair, V> &m, const WordPair &normalized, const WordPair &cleaned) {
  const V *best = nullptr;
  for (const WordPair *key : {&normalized, &cleaned}) {
    auto it = m.find(*key);
    if (it != m.end() && (best == nullptr || it->second > *best)) best = &it->second;
  }
  return best;
}

}  // namespace

int hypernym_votes(std::string_view hyper, std::string_view hypo, const HypernymEvidence &ev,
                   const HypernymThresholds &th) {
  if (ev.empty()) return 0;
  WordPair key = normalized_pair(hyper, hypo);
  WordPair raw = {clean_phrase(hyper), clean_phrase(hypo)};
  int votes = 0;
  if (const int *n = best_entry(ev.hearst, key, raw); n && *n >= th.hearst_min_count) ++votes;
  if (const double *c = best_entry(ev.webisalod, key, raw); c && *c >= th.webisalod_min_confidence) {
    ++votes;
  }
  if (const int *n = best_entry(ev.category_axiom_pairs, key, raw); n && *n >= th.axiom_min_count) {
    ++votes;
  }
  return votes;
}

bool is_hypernym(std::string_view hyper, std::string_view hypo, const HypernymEvidence &ev,
                 const HypernymThresholds &th) {
  return hypernym_votes(hyper, hypo, ev, th) >= 2;
}

std::map<WordPair, int> scan_hearst_patterns(const std::vector<std::string> &texts) {
  std::map<WordPair, int> counts;
  for (const auto &text : texts) {
    std::vector<std::string> words;
    std::string cur;
    for (char c : text) {
      unsigned char u = static_cast<unsigned char>(c);
      if (std::isalpha(u) || u >= 0x80) {
        cur.push_back(static_cast<char>(std::tolower(u)));
      } else if (!cur.empty()) {
        words.push_back(std::move(cur));
        cur.clear();
      }
    }
    if (!cur.empty()) words.push_back(std::move(cur));
    for (size_t i = 0; i + 3 < words.size(); ++i) {
      if (words[i + 1] == "is" && (words[i + 2] == "a" || words[i + 2] == "an")) {
        ++counts[normalized_pair(words[i + 3], words[i])];
      }
      if (words[i + 1] == "such" && words[i + 2] == "as") {
        ++counts[normalized_pair(words[i], words[i + 3])];
      }
    }
    for (size_t i = 0; i + 2 < words.size(); ++i) {
      if (words[i + 1] == "including") ++counts[normalized_pair(words[i], words[i + 2])];
    }
  }
  return counts;
}

std::map<WordPair, int> read_count_tsv(const std::string &path) {
  std::map<WordPair, int> out;
  std::vector<int> lines;
  auto rows = read_tsv_lines(path, 3, &lines);
  for (size_t i = 0; i < rows.size(); ++i) {
    auto parts = split(rows[i], '\t');
    int count = 0;
    try {
      size_t used = 0;
      count = std::stoi(parts[2], &used);
      if (used != trim(parts[2]).size()) throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw ParseError(path, lines[i], "count is not an integer: " + parts[2]);
    }
    if (count < 1) throw ParseError(path, lines[i], "count must be >= 1");
    out[normalized_pair(parts[0], parts[1])] += count;
  }
  return out;
}

std::map<WordPair, double> read_confidence_tsv(const std::string &path) {
  std::map<WordPair, double> out;
  std::vector<int> lines;
  auto rows = read_tsv_lines(path, 3, &lines);
  for (size_t i = 0; i < rows.size(); ++i) {
    auto parts = split(rows[i], '\t');
    double conf = 0.0;
    try {
      conf = std::stod(parts[2]);
    } catch (const std::exception &) {
      throw ParseError(path, lines[i], "confidence is not a number: " + parts[2]);
    }
    if (!(conf >= 0.0 && conf <= 1.0)) {
      throw ParseError(path, lines[i], "confidence outside [0,1]");
    }
    auto key = normalized_pair(parts[0], parts[1]);
    auto [it, inserted] = out.emplace(key, conf);
    if (!inserted && conf > it->second) it->second = conf;
  }
  return out;
}

SynonymTable read_synonyms_tsv(const std::string &path) {
  SynonymTable table;
  std::vector<int> lines;
  for (const auto &row : read_tsv_lines(path, 2, &lines)) {
    auto parts = split(row, '\t');
    table.add(parts[0], parts[1]);
  }
  return table;
}

void write_count_tsv(const std::string &path, const std::map<WordPair, int> &data) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto &[k, v] : data) out << k.first << '\t' << k.second << '\t' << v << '\n';
}

void write_confidence_tsv(const std::string &path, const std::map<WordPair, double> &data) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out.precision(17);
  for (const auto &[k, v] : data) out << k.first << '\t' << k.second << '\t' << v << '\n';
}

void write_synonyms_tsv(const std::string &path, const SynonymTable &table) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (const auto &[a, b] : table.pairs()) {
    if (a <= b) out << a << '\t' << b << '\n';
  }
}

}  // namespace listforge
