#ifndef LISTFORGE_LEXICAL_H_
#define LISTFORGE_LEXICAL_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace listforge {

using WordPair = std::pair<std::string, std::string>;

// Lowercases, maps underscores to spaces and collapses whitespace. No
// singularization; see normalize_phrase for the comparison key.
std::string clean_phrase(std::string_view phrase);

// Comparison key for words and phrases: clean_phrase plus per-token
// singularization. Two phrases are "named alike" iff their keys are equal.
std::string normalize_phrase(std::string_view phrase);

// Singular form of a lowercased word. Irregular plurals are looked up in a
// built-in lexicon; regular plurals follow suffix rules (-ies, -sses/-xes/
// -ches/-shes/-zes, -s). Words that are not plural are returned unchanged.
std::string singularize(std::string_view word);

// Rule-based head noun: tokenize, drop parenthesized qualifiers, truncate at
// the first preposition in {from, of, in, by, for, at} and return the last
// remaining non-function word, lowercased. Throws Error("no head noun").
std::string head_noun(std::string_view phrase);

// Removes a leading "List of " / "Lists of " prefix, if any.
std::string strip_list_prefix(std::string_view title);

bool is_plural(std::string_view word);

// Symmetric synonym relation over normalized words and phrases.
class SynonymTable {
 public:
  void add(std::string_view a, std::string_view b);
  bool contains(std::string_view a, std::string_view b) const;
  // Every normalized phrase declared synonymous with `phrase`.
  std::set<std::string> synonyms_of(std::string_view phrase) const;
  size_t size() const { return pairs_.size(); }
  const std::set<WordPair> &pairs() const { return pairs_; }

  bool operator==(const SynonymTable &other) const { return pairs_ == other.pairs_; }

 private:
  // Stored with both orientations.
  std::set<WordPair> pairs_;
};

// True iff singular forms are equal or the table lists the pair.
bool is_synonym(std::string_view a, std::string_view b, const SynonymTable &table = {});

// Three evidence sources for hypernymy, keyed by (hyper, hypo). Readers
// store normalize_phrase keys; lookups also accept clean_phrase keys. Absence of a pair in a source counts as a "no" vote.
struct HypernymEvidence {
  std::map<WordPair, int> hearst;
  std::map<WordPair, double> webisalod;
  std::map<WordPair, int> category_axiom_pairs;

  bool empty() const {
    return hearst.empty() && webisalod.empty() && category_axiom_pairs.empty();
  }
  bool operator==(const HypernymEvidence &other) const = default;
};

struct HypernymThresholds {
  int hearst_min_count = 2;
  double webisalod_min_confidence = 0.4;
  int axiom_min_count = 2;
};

// Number of sources voting yes for (hyper, hypo).
int hypernym_votes(std::string_view hyper, std::string_view hypo,
                   const HypernymEvidence &ev, const HypernymThresholds &th = {});

// Majority vote: at least two of the three sources say yes.
bool is_hypernym(std::string_view hyper, std::string_view hypo,
                 const HypernymEvidence &ev, const HypernymThresholds &th = {});

// Bundles the synonym table, evidence and thresholds that the taxonomy and
// feature code consult for "synonym or hypernym" decisions.
struct Lexicon {
  SynonymTable synonyms;
  HypernymEvidence evidence;
  HypernymThresholds thresholds;

  bool synonym_or_hypernym(std::string_view parent_head, std::string_view child_head) const {
    return is_synonym(parent_head, child_head, synonyms) ||
           is_hypernym(parent_head, child_head, evidence, thresholds);
  }
};

// Scans plain text for "X is a Y", "Y such as X" and "Y including X" and
// returns (hyper, hypo) counts over single words.
std::map<WordPair, int> scan_hearst_patterns(const std::vector<std::string> &texts);

// TSV readers/writers. Lines are "a<TAB>b[<TAB>value]"; blank lines and lines
// starting with '#' are ignored. Malformed lines raise ParseError.
std::map<WordPair, int> read_count_tsv(const std::string &path);
std::map<WordPair, double> read_confidence_tsv(const std::string &path);
SynonymTable read_synonyms_tsv(const std::string &path);
void write_count_tsv(const std::string &path, const std::map<WordPair, int> &data);
void write_confidence_tsv(const std::string &path, const std::map<WordPair, double> &data);
void write_synonyms_tsv(const std::string &path, const SynonymTable &table);

}  // namespace listforge

#endif  // LISTFORGE_LEXICAL_H_
