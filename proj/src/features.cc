#include "listforge/features.h"

#include <algorithm>
#include <cctype>

#include "listforge/util.h"

namespace listforge {

using json = nlohmann::json;

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80 || c == '\'';
}

// Word tokens of `text`, ignoring punctuation.
std::vector<std::string> words_of(std::string_view text) {
  std::vector<std::string> out;
  for (const auto &t : tokenize(text)) {
    if (is_word_byte(static_cast<unsigned char>(t.text[0]))) out.push_back(t.text);
  }
  return out;
}

size_t words_before(std::string_view text, size_t offset) {
  size_t n = 0;
  for (const auto &t : tokenize(text)) {
    if (t.begin >= offset) break;
    if (is_word_byte(static_cast<unsigned char>(t.text[0]))) ++n;
  }
  return n;
}

const std::set<std::string> &stopwords() {
  static const std::set<std::string> kWords = {
      "a", "an", "and", "at", "by", "for", "from", "in", "list", "lists", "of", "on",
      "or", "the", "to", "with"};
  return kWords;
}

std::vector<std::string> content_words(std::string_view text) {
  std::vector<std::string> out;
  for (const auto &w : words_of(text)) {
    std::string lw = to_lower(w);
    if (lw.size() < 3 || stopwords().count(lw)) continue;
    out.push_back(lw);
  }
  return out;
}

// Page-wide container number, so that same/other counts span sections.
int container_key(const MentionPosition &p) { return p.section * 100000 + p.container; }

std::string section_label(const Section &s) {
  std::string h = to_lower(trim(s.heading));
  return h.empty() ? "<lead>" : h;
}

void push_stats(std::vector<double> *out, const std::vector<double> &values) {
  MeanStd ms = mean_std(values);
  out->push_back(ms.mean);
  out->push_back(ms.std);
}

const std::vector<std::string> kSharedNumeric = {"section_count", "section_position"};

const std::vector<std::string> kEnumPageNumeric = {
    "entry_count",
    "indentation_avg", "indentation_std",
    "entities_per_entry_avg", "entities_per_entry_std",
    "words_per_entry_avg", "words_per_entry_std",
    "chars_per_entry_avg", "chars_per_entry_std",
    "first_entity_position_avg", "first_entity_position_std"};

const std::vector<std::string> kEnumMentionNumeric = {
    "entry_position", "indentation", "sub_entry_count", "mention_position",
    "entities_in_entry", "mentions_same_container", "mentions_other_containers"};

const std::vector<std::string> kTablePageNumeric = {
    "table_count", "row_count", "column_count",
    "rows_per_table_avg", "rows_per_table_std",
    "columns_per_table_avg", "columns_per_table_std",
    "entities_per_row_avg", "entities_per_row_std",
    "words_per_row_avg", "words_per_row_std",
    "chars_per_row_avg", "chars_per_row_std",
    "entities_per_column_avg", "entities_per_column_std",
    "words_per_column_avg", "words_per_column_std",
    "chars_per_column_avg", "chars_per_column_std",
    "first_entity_column_avg", "first_entity_column_std"};

const std::vector<std::string> kTableMentionNumeric = {
    "table_position", "row_position", "column_position", "mention_position",
    "header_matches_title", "entities_in_row", "mentions_same_container",
    "mentions_other_containers"};

std::vector<std::string> concat(std::initializer_list<const std::vector<std::string> *> parts) {
  std::vector<std::string> out;
  for (const auto *p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    size_t start = i;
    if (is_word_byte(c)) {
      while (i < text.size()) {
        unsigned char d = static_cast<unsigned char>(text[i]);
        bool joiner = (d == '-' || d == '.') && i + 1 < text.size() &&
                      is_word_byte(static_cast<unsigned char>(text[i + 1])) && i > start;
        if (!is_word_byte(d) && !joiner) break;
        ++i;
      }
    } else {
      ++i;
    }
    out.push_back({std::string(text.substr(start, i - start)), start, i});
  }
  return out;
}

std::string token_tag(std::string_view token) {
  if (token.empty()) return "NONE";
  unsigned char first = static_cast<unsigned char>(token[0]);
  if (!is_word_byte(first)) return "PUNCT";
  bool all_digits = true;
  int letters = 0;
  bool all_upper = true;
  for (unsigned char c : token) {
    if (std::isalpha(c)) {
      ++letters;
      if (!std::isupper(c)) all_upper = false;
    }
    if (!std::isdigit(c) && c != '.' && c != ',' && c != '-') all_digits = false;
  }
  if (all_digits) return "NUM";
  if (letters >= 2 && all_upper) return "ALLCAPS";
  if (std::isupper(first) || first >= 0x80) return "CAP";
  if (std::isdigit(first)) return "NUM";
  return "LOWER";
}

const std::vector<std::string> &numeric_feature_names(Layout layout) {
  static const std::vector<std::string> kEnum =
      concat({&kSharedNumeric, &kEnumPageNumeric, &kEnumMentionNumeric});
  static const std::vector<std::string> kTable =
      concat({&kSharedNumeric, &kTablePageNumeric, &kTableMentionNumeric});
  static const std::vector<std::string> kNone;
  switch (layout) {
    case Layout::kEnumeration: return kEnum;
    case Layout::kTable: return kTable;
    default: return kNone;
  }
}

const std::vector<std::string> &categorical_feature_names(Layout layout) {
  static const std::vector<std::string> kNames = {"section_title", "tag_entity", "tag_left",
                                                  "tag_right"};
  static const std::vector<std::string> kNone;
  return layout == Layout::kUndefined ? kNone : kNames;
}

bool mention_matches_layout(const EntityMention &mention, Layout layout) {
  if (layout == Layout::kEnumeration) return !mention.position.in_table();
  if (layout == Layout::kTable) return mention.position.in_table();
  return false;
}

PageFeatureContext::PageFeatureContext(const ParsedListPage &page, const Lexicon &lexicon)
    : page_(page), lexicon_(lexicon) {
  title_words_ = content_words(strip_list_prefix(page.title));

  for (const auto &m : page.mentions()) {
    if (!mention_matches_layout(*m, page.layout)) continue;
    ++target_counts_[m->target][container_key(m->position)];
  }

  page_numeric_.push_back(double(page.sections.size()));
  if (page.layout == Layout::kEnumeration) {
    std::vector<double> indent, entities, words, chars, first_pos;
    for (const auto &s : page.sections) {
      for (const auto &e : s.enumerations) {
        for (const auto &entry : e.entries) {
          indent.push_back(entry.depth);
          entities.push_back(double(entry.mentions.size()));
          words.push_back(double(words_of(entry.text).size()));
          chars.push_back(double(entry.text.size()));
          if (!entry.mentions.empty()) {
            first_pos.push_back(double(words_before(entry.text, entry.mentions[0].begin)));
          }
        }
      }
    }
    page_numeric_.push_back(double(indent.size()));
    push_stats(&page_numeric_, indent);
    push_stats(&page_numeric_, entities);
    push_stats(&page_numeric_, words);
    push_stats(&page_numeric_, chars);
    push_stats(&page_numeric_, first_pos);
  } else if (page.layout == Layout::kTable) {
    std::vector<double> rows_per, cols_per, row_ent, row_words, row_chars, col_ent, col_words,
        col_chars, first_col;
    double rows = 0, cols = 0;
    int tables = 0;
    for (const auto &s : page.sections) {
      table_offset_.push_back(tables);
      for (const auto &t : s.tables) {
        ++tables;
        size_t width = t.header.size();
        for (const auto &r : t.rows) width = std::max(width, r.size());
        rows += double(t.rows.size());
        cols += double(width);
        rows_per.push_back(double(t.rows.size()));
        cols_per.push_back(double(width));
        std::vector<double> ce(width, 0), cw(width, 0), cc(width, 0);
        for (const auto &r : t.rows) {
          double e = 0, w = 0, c = 0;
          int first = -1;
          for (size_t j = 0; j < r.size(); ++j) {
            double cell_e = double(r[j].mentions.size());
            double cell_w = double(words_of(r[j].text).size());
            double cell_c = double(r[j].text.size());
            if (first < 0 && cell_e > 0) first = int(j);
            e += cell_e;
            w += cell_w;
            c += cell_c;
            ce[j] += cell_e;
            cw[j] += cell_w;
            cc[j] += cell_c;
          }
          row_ent.push_back(e);
          row_words.push_back(w);
          row_chars.push_back(c);
          if (first >= 0) first_col.push_back(first);
        }
        col_ent.insert(col_ent.end(), ce.begin(), ce.end());
        col_words.insert(col_words.end(), cw.begin(), cw.end());
        col_chars.insert(col_chars.end(), cc.begin(), cc.end());
      }
    }
    page_numeric_.push_back(tables);
    page_numeric_.push_back(rows);
    page_numeric_.push_back(cols);
    push_stats(&page_numeric_, rows_per);
    push_stats(&page_numeric_, cols_per);
    push_stats(&page_numeric_, row_ent);
    push_stats(&page_numeric_, row_words);
    push_stats(&page_numeric_, row_chars);
    push_stats(&page_numeric_, col_ent);
    push_stats(&page_numeric_, col_words);
    push_stats(&page_numeric_, col_chars);
    push_stats(&page_numeric_, first_col);
  }
}

RawFeatures PageFeatureContext::extract(const EntityMention &mention) const {
  const ParsedListPage &page = page_;
  if (!mention_matches_layout(mention, page.layout)) {
    throw Error(page.title + ": mention does not match the " +
                std::string(layout_name(page.layout)) + " feature schema");
  }
  const MentionPosition &pos = mention.position;
  if (page.at(pos) == nullptr) throw Error(page.title + ": mention position out of range");
  const Section &section = page.sections[pos.section];

  RawFeatures f;
  f.layout = page.layout;
  f.numeric.push_back(page_numeric_[0]);
  f.numeric.push_back(pos.section);
  f.numeric.insert(f.numeric.end(), page_numeric_.begin() + 1, page_numeric_.end());

  const std::string *text = nullptr;
  if (page.layout == Layout::kEnumeration) {
    int entry_index = 0;
    for (int s = 0; s < pos.section; ++s) {
      for (const auto &e : page.sections[s].enumerations) entry_index += int(e.entries.size());
    }
    for (int c = 0; c < pos.container; ++c) {
      entry_index += int(section.enumerations[c].entries.size());
    }
    entry_index += pos.item;
    const EnumEntry &entry = section.enumerations[pos.container].entries[pos.item];
    text = &entry.text;
    f.numeric.push_back(entry_index);
    f.numeric.push_back(entry.depth);
    f.numeric.push_back(entry.sub_entry_count);
    f.numeric.push_back(pos.mention);
    f.numeric.push_back(double(entry.mentions.size()));
  } else {
    const WikiTable &table = section.tables[pos.container];
    const auto &row = table.rows[pos.item];
    text = &row[pos.cell].text;
    int in_row = 0;
    for (int j = 0; j < pos.cell; ++j) in_row += int(row[j].mentions.size());
    in_row += pos.mention;
    double header_match = kMissing;
    if (size_t(pos.cell) < table.header.size() && !trim(table.header[pos.cell]).empty()) {
      header_match = 0;
      for (const auto &h : content_words(table.header[pos.cell])) {
        for (const auto &w : title_words_) {
          if (lexicon_.synonym_or_hypernym(w, h)) header_match = 1;
        }
      }
    }
    int row_mentions = 0;
    for (const auto &cell : row) row_mentions += int(cell.mentions.size());
    f.numeric.push_back(table_offset_[pos.section] + pos.container);
    f.numeric.push_back(pos.item);
    f.numeric.push_back(pos.cell);
    f.numeric.push_back(in_row);
    f.numeric.push_back(header_match);
    f.numeric.push_back(row_mentions);
  }

  int own = container_key(pos);
  int same = 0, other = 0;
  auto it = target_counts_.find(mention.target);
  if (it != target_counts_.end()) {
    for (const auto &[container, n] : it->second) (container == own ? same : other) += n;
  }
  f.numeric.push_back(same);
  f.numeric.push_back(other);

  std::vector<Token> tokens = tokenize(*text);
  std::string entity_tok, left_tok, right_tok;
  for (const auto &t : tokens) {
    if (t.end <= mention.begin) left_tok = t.text;
    if (entity_tok.empty() && t.begin >= mention.begin && t.begin < mention.end) entity_tok = t.text;
    if (right_tok.empty() && t.begin >= mention.end) right_tok = t.text;
  }
  f.categorical.push_back(section_label(section));
  f.categorical.push_back(token_tag(entity_tok));
  f.categorical.push_back(token_tag(left_tok));
  f.categorical.push_back(token_tag(right_tok));
  return f;
}

RawFeatures extract_features(const EntityMention &mention, const ParsedListPage &page,
                             const Lexicon &lexicon) {
  return PageFeatureContext(page, lexicon).extract(mention);
}

uint64_t schema_hash(const std::vector<std::string> &feature_names) {
  uint64_t h = fnv1a("listforge-schema");
  for (const auto &n : feature_names) h = fnv1a(n + '\n', h);
  return h;
}

CategoricalEncoder::CategoricalEncoder(Layout layout, const std::vector<RawFeatures> &training,
                                       size_t top_k)
    : layout_(layout) {
  const auto &cat = categorical_feature_names(layout);
  vocab_.resize(cat.size());
  for (size_t k = 0; k < cat.size(); ++k) {
    std::map<std::string, int> counts;
    for (const auto &r : training) {
      if (r.layout != layout) throw Error("encoder training data mixes layouts");
      ++counts[r.categorical.at(k)];
    }
    std::vector<std::pair<int, std::string>> ranked;
    for (const auto &[v, n] : counts) ranked.push_back({-n, v});
    std::sort(ranked.begin(), ranked.end());
    for (size_t i = 0; i < ranked.size() && i < top_k; ++i) vocab_[k].push_back(ranked[i].second);
  }
  finalize();
}

void CategoricalEncoder::finalize() {
  names_ = numeric_feature_names(layout_);
  const auto &cat = categorical_feature_names(layout_);
  for (size_t k = 0; k < cat.size(); ++k) {
    for (const auto &v : vocab_[k]) names_.push_back(cat[k] + "=" + v);
    names_.push_back(cat[k] + "=<other>");
  }
  hash_ = schema_hash(names_);
}

FeatureVector CategoricalEncoder::encode(const RawFeatures &raw) const {
  if (raw.layout != layout_) {
    throw Error(std::string("feature layout ") + layout_name(raw.layout) +
                " does not match encoder layout " + layout_name(layout_));
  }
  FeatureVector fv;
  fv.schema_hash = hash_;
  fv.values = raw.numeric;
  for (size_t k = 0; k < vocab_.size(); ++k) {
    const auto &voc = vocab_[k];
    size_t hit = voc.size();
    for (size_t i = 0; i < voc.size(); ++i) {
      if (voc[i] == raw.categorical.at(k)) hit = i;
    }
    for (size_t i = 0; i <= voc.size(); ++i) fv.values.push_back(i == hit ? 1.0 : 0.0);
  }
  return fv;
}

json CategoricalEncoder::to_json() const {
  json j;
  j["layout"] = layout_name(layout_);
  j["vocabulary"] = vocab_;
  j["schema_hash"] = hex64(hash_);
  return j;
}

CategoricalEncoder CategoricalEncoder::from_json(const json &j) {
  CategoricalEncoder enc;
  enc.layout_ = layout_from_name(j.at("layout").get<std::string>());
  enc.vocab_ = j.at("vocabulary").get<std::vector<std::vector<std::string>>>();
  if (enc.vocab_.size() != categorical_feature_names(enc.layout_).size()) {
    throw Error("encoder vocabulary does not match the layout schema");
  }
  enc.finalize();
  if (j.contains("schema_hash") && j.at("schema_hash").get<std::string>() != hex64(enc.hash_)) {
    throw Error("encoder schema hash mismatch");
  }
  return enc;
}

}  // namespace listforge
