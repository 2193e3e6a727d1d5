#ifndef LISTFORGE_FEATURES_H_
#define LISTFORGE_FEATURES_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "listforge/lexical.h"
#include "listforge/wikitext.h"

namespace listforge {

// Missing numeric values (e.g. a header flag on a table without header).
inline constexpr double kMissing = -1.0;

// Coarse token shape used in place of a statistical POS/NE tagger.
// One of CAP, ALLCAPS, NUM, LOWER, PUNCT; NONE for an absent token.
std::string token_tag(std::string_view token);

// Splits plain text into word tokens and single punctuation tokens, with
// byte offsets.
struct Token {
  std::string text;
  size_t begin = 0;
  size_t end = 0;
};
std::vector<Token> tokenize(std::string_view text);

// Feature names per layout, in vector order.
const std::vector<std::string> &numeric_feature_names(Layout layout);
const std::vector<std::string> &categorical_feature_names(Layout layout);

// Features of one mention before categorical encoding.
struct RawFeatures {
  Layout layout = Layout::kUndefined;
  std::vector<double> numeric;
  std::vector<std::string> categorical;

  bool operator==(const RawFeatures &) const = default;
};

// Page-level statistics shared by every mention on a page. Building it once
// per page keeps extraction linear in the number of mentions.
class PageFeatureContext {
 public:
  PageFeatureContext(const ParsedListPage &page, const Lexicon &lexicon);

  const ParsedListPage &page() const { return page_; }
  // Throws Error when the mention does not belong to the page's layout
  // (for example an enumeration mention on a table page).
  RawFeatures extract(const EntityMention &mention) const;

 private:
  const ParsedListPage &page_;
  const Lexicon &lexicon_;
  std::vector<double> page_numeric_;
  std::vector<int> table_offset_;  // global table index of each section's first table
  std::vector<std::string> title_words_;
  std::map<std::string, std::map<int, int>> target_counts_;  // target -> container -> count
};

// True when a mention is covered by the page's layout schema.
bool mention_matches_layout(const EntityMention &mention, Layout layout);

RawFeatures extract_features(const EntityMention &mention, const ParsedListPage &page,
                             const Lexicon &lexicon);

// Dense vector plus the hash of the schema it was built with.
struct FeatureVector {
  std::vector<double> values;
  uint64_t schema_hash = 0;
};

uint64_t schema_hash(const std::vector<std::string> &feature_names);

// One-hot encoding of categorical features: the top-K values per feature
// (by training frequency, ties broken lexicographically) get their own
// column; everything else maps to an "<other>" column.
class CategoricalEncoder {
 public:
  CategoricalEncoder() = default;
  CategoricalEncoder(Layout layout, const std::vector<RawFeatures> &training, size_t top_k = 50);

  Layout layout() const { return layout_; }
  const std::vector<std::string> &feature_names() const { return names_; }
  uint64_t hash() const { return hash_; }
  // Throws Error on a layout mismatch.
  FeatureVector encode(const RawFeatures &raw) const;

  nlohmann::json to_json() const;
  static CategoricalEncoder from_json(const nlohmann::json &j);

 private:
  void finalize();

  Layout layout_ = Layout::kUndefined;
  std::vector<std::vector<std::string>> vocab_;  // per categorical feature
  std::vector<std::string> names_;
  uint64_t hash_ = 0;
};

}  // namespace listforge

#endif  // LISTFORGE_FEATURES_H_
