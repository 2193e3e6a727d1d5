#include "listforge/wikitext.h"

#include <array>
#include <cctype>
#include <optional>

#include "listforge/util.h"

namespace listforge {

namespace {

using Warnings = std::vector<std::pair<int, std::string>>;

bool ieq_prefix(std::string_view s, size_t pos, std::string_view prefix) {
  if (pos + prefix.size() > s.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[pos + i])) != prefix[i]) return false;
  }
  return true;
}

int count_newlines(std::string_view s) {
  int n = 0;
  for (char c : s) n += (c == '\n');
  return n;
}

// Index just past the "]]" that closes the "[[" at `open`, honouring
// nesting; npos if unbalanced on this fragment.
size_t match_brackets(std::string_view s, size_t open) {
  int depth = 0;
  for (size_t i = open; i + 1 < s.size(); ++i) {
    if (s[i] == '[' && s[i + 1] == '[') {
      ++depth;
      ++i;
    } else if (s[i] == ']' && s[i + 1] == ']') {
      --depth;
      ++i;
      if (depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

// Position of the first `sep` at bracket depth zero, or npos.
size_t find_top_level(std::string_view s, std::string_view sep, size_t from = 0) {
  int links = 0, templates = 0;
  for (size_t i = from; i < s.size(); ++i) {
    if (s.compare(i, 2, "[[") == 0) {
      ++links;
      ++i;
      continue;
    }
    if (s.compare(i, 2, "]]") == 0 && links > 0) {
      --links;
      ++i;
      continue;
    }
    if (s.compare(i, 2, "{{") == 0) {
      ++templates;
      ++i;
      continue;
    }
    if (s.compare(i, 2, "}}") == 0 && templates > 0) {
      --templates;
      ++i;
      continue;
    }
    if (links == 0 && templates == 0 && s.compare(i, sep.size(), sep) == 0) return i;
  }
  return std::string_view::npos;
}

bool is_namespace_prefix(const std::string &prefix) {
  static const std::set<std::string> kNamespaces = {
      "category", "file", "image", "media", "wikipedia", "wp", "template", "help",
      "portal", "user", "talk", "special", "wiktionary", "wikt", "module", "draft"};
  if (kNamespaces.count(prefix)) return true;
  // Interlanguage links such as [[fr:...]].
  if (prefix.size() < 2 || prefix.size() > 3) return false;
  for (char c : prefix) {
    if (!std::islower(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Accumulates plain text with whitespace collapsed. Spaces are emitted
// lazily so that no leading or trailing whitespace survives.
class TextBuilder {
 public:
  void append(std::string_view s) {
    for (char c : s) put(c);
  }
  void put(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space_ = !text_.empty();
      return;
    }
    flush();
    text_.push_back(c);
  }
  // Emits a pending separator and returns the offset where the next
  // non-space character will land.
  size_t mark() {
    flush();
    return text_.size();
  }
  size_t size() const { return text_.size(); }
  std::string finish() { return std::move(text_); }

 private:
  void flush() {
    if (pending_space_) text_.push_back(' ');
    pending_space_ = false;
  }

  std::string text_;
  bool pending_space_ = false;
};

std::string strip_quotes(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
      while (i + 1 < s.size() && s[i + 1] == '\'') ++i;
      continue;
    }
    out.push_back(s[i]);
  }
  return out;
}

std::string collapse_ws(std::string_view s) {
  TextBuilder tb;
  tb.append(s);
  return tb.finish();
}

struct InlineResult {
  std::string text;
  std::vector<EntityMention> mentions;
};

// Parses one fragment (entry body or cell) into plain text and mentions.
InlineResult parse_inline(std::string_view s, const LinkResolver *resolver, int line,
                          Warnings *warnings) {
  InlineResult r;
  TextBuilder tb;
  for (size_t i = 0; i < s.size();) {
    if (s.compare(i, 2, "[[") == 0) {
      size_t close = match_brackets(s, i);
      if (close == std::string_view::npos) {
        if (warnings) warnings->emplace_back(line, "unclosed link");
        i += 2;
        continue;
      }
      std::string_view inner = s.substr(i + 2, close - i - 4);
      i = close;
      size_t pipe = find_top_level(inner, "|");
      std::string target_raw = trim(inner.substr(0, pipe));
      std::optional<std::string> label;
      if (pipe != std::string_view::npos) label = trim(inner.substr(pipe + 1));

      if (!target_raw.empty() && target_raw.front() == ':') {
        std::string shown = label && !label->empty() ? *label : target_raw.substr(1);
        tb.append(strip_quotes(shown));
        continue;
      }
      size_t colon = target_raw.find(':');
      if (colon != std::string::npos &&
          is_namespace_prefix(to_lower(trim(target_raw.substr(0, colon))))) {
        continue;
      }

      // Link trail: "[[writer]]s" renders as "writers".
      std::string trail;
      while (i < s.size() && std::islower(static_cast<unsigned char>(s[i]))) trail.push_back(s[i++]);

      std::string target = normalize_link_target(target_raw);
      std::string surface;
      if (label && !label->empty()) {
        surface = *label;
      } else if (label) {
        // Pipe trick: drop a trailing parenthetical.
        surface = target_raw;
        size_t paren = surface.find(" (");
        if (paren != std::string::npos) surface.resize(paren);
      } else {
        surface = target_raw;
      }
      surface = collapse_ws(strip_quotes(surface + trail));
      if (target.empty()) {
        tb.append(surface);
        continue;
      }
      if (surface.empty()) {
        if (warnings) warnings->emplace_back(line, "link with empty label: " + target_raw);
        continue;
      }
      EntityMention m;
      m.link_title = target;
      if (resolver != nullptr) {
        auto [id, blue] = resolver->resolve(target);
        m.target = id;
        m.exists_in_kb = blue;
      } else {
        m.target = std::string(kRedLinkPrefix) + percent_encode(target);
      }
      m.surface = surface;
      m.begin = tb.mark();
      tb.append(surface);
      m.end = tb.size();
      r.mentions.push_back(std::move(m));
      continue;
    }
    if (s[i] == '[' && (s.compare(i + 1, 4, "http") == 0 || s.compare(i + 1, 2, "//") == 0)) {
      size_t close = s.find(']', i);
      if (close == std::string_view::npos) {
        ++i;
        continue;
      }
      std::string_view body = s.substr(i + 1, close - i - 1);
      size_t space = body.find(' ');
      if (space != std::string_view::npos) tb.append(strip_quotes(body.substr(space + 1)));
      i = close + 1;
      continue;
    }
    if (s[i] == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
      while (i < s.size() && s[i] == '\'') ++i;
      continue;
    }
    if (s[i] == '&') {
      static const std::pair<std::string_view, std::string_view> kEntities[] = {
          {"&nbsp;", " "}, {"&amp;", "&"}, {"&ndash;", "\xE2\x80\x93"},
          {"&mdash;", "\xE2\x80\x94"}, {"&quot;", "\""}, {"&lt;", "<"}, {"&gt;", ">"}};
      bool matched = false;
      for (const auto &[ent, rep] : kEntities) {
        if (s.compare(i, ent.size(), ent) == 0) {
          tb.append(rep);
          i += ent.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    tb.put(s[i]);
    ++i;
  }
  r.text = tb.finish();
  return r;
}

struct PendingCell {
  std::string raw;
  bool header = false;
  int line = 0;
};

class PageBuilder {
 public:
  PageBuilder(const std::string &title, const LinkResolver &resolver)
      : resolver_(resolver) {
    page_.title = title;
  }

  void heading(int level, const std::string &text) {
    end_enumeration();
    Section s;
    s.level = level;
    s.heading = parse_inline(text, nullptr, 0, nullptr).text;
    page_.sections.push_back(std::move(s));
  }

  void entry(int depth, std::string_view body, int line) {
    Section &sec = current_section();
    if (!in_enumeration_) {
      sec.enumerations.emplace_back();
      in_enumeration_ = true;
    }
    InlineResult r = parse_inline(body, &resolver_, line, &warnings_);
    EnumEntry e;
    e.depth = depth;
    e.text = std::move(r.text);
    e.mentions = std::move(r.mentions);
    e.line = line;
    sec.enumerations.back().entries.push_back(std::move(e));
  }

  void end_enumeration() {
    if (!in_enumeration_) return;
    in_enumeration_ = false;
    auto &entries = current_section().enumerations.back().entries;
    std::vector<size_t> stack;
    for (size_t i = 0; i < entries.size(); ++i) {
      while (!stack.empty() && entries[stack.back()].depth >= entries[i].depth) stack.pop_back();
      if (!stack.empty()) ++entries[stack.back()].sub_entry_count;
      stack.push_back(i);
    }
  }

  // Table handling.
  bool in_table() const { return table_depth_ > 0; }

  void open_table(int line) {
    if (table_depth_ > 0) {
      if (table_depth_ == 1) warnings_.emplace_back(line, "nested table ignored");
      ++table_depth_;
      return;
    }
    end_enumeration();
    table_depth_ = 1;
    table_ = WikiTable();
    cells_.clear();
  }

  void table_line(std::string_view line, int lineno) {
    std::string t = trim(line);
    if (table_depth_ > 1) {
      if (starts_with(t, "{|")) ++table_depth_;
      if (starts_with(t, "|}")) --table_depth_;
      return;
    }
    if (starts_with(t, "{|")) {
      open_table(lineno);
      return;
    }
    if (starts_with(t, "|}")) {
      close_table();
      return;
    }
    if (starts_with(t, "|+")) return;  // caption
    if (starts_with(t, "|-")) {
      finish_row();
      return;
    }
    if (!t.empty() && (t[0] == '!' || t[0] == '|')) {
      bool header = t[0] == '!';
      std::string_view body = std::string_view(t).substr(1);
      std::vector<std::string_view> seps = {"||"};
      if (header) seps.push_back("!!");
      size_t start = 0;
      for (;;) {
        size_t best = std::string_view::npos, len = 0;
        for (auto sep : seps) {
          size_t p = find_top_level(body, sep, start);
          if (p < best) {
            best = p;
            len = sep.size();
          }
        }
        cells_.push_back({std::string(body.substr(start, best - start)), header, lineno});
        if (best == std::string_view::npos) break;
        start = best + len;
      }
      return;
    }
    // Continuation of a multi-line cell.
    if (!cells_.empty()) cells_.back().raw += "\n" + std::string(line);
  }

  void close_table() {
    finish_row();
    table_depth_ = 0;
    size_t width = table_.header.size();
    if (width == 0) {
      for (const auto &row : table_.rows) width = std::max(width, row.size());
    }
    for (auto &row : table_.rows) row.resize(width);
    if (!table_.header.empty() || !table_.rows.empty()) {
      current_section().tables.push_back(std::move(table_));
    }
    table_ = WikiTable();
  }

  void finish_row() {
    if (cells_.empty()) return;
    bool all_header = true;
    for (const auto &c : cells_) all_header = all_header && c.header;
    if (all_header && table_.header.empty() && table_.rows.empty()) {
      for (const auto &c : cells_) {
        table_.header.push_back(parse_inline(strip_attributes(c.raw), nullptr, c.line, nullptr).text);
      }
    } else {
      std::vector<TableCell> row;
      for (const auto &c : cells_) {
        InlineResult r = parse_inline(strip_attributes(c.raw), &resolver_, c.line, &warnings_);
        row.push_back(TableCell{std::move(r.text), std::move(r.mentions)});
      }
      table_.rows.push_back(std::move(row));
    }
    cells_.clear();
  }

  void add_warning(int line, std::string message) { warnings_.emplace_back(line, std::move(message)); }

  ParsedListPage finish(int last_line) {
    if (in_table()) {
      warnings_.emplace_back(last_line, "unterminated table");
      table_depth_ = 1;
      close_table();
    }
    end_enumeration();
    assign_positions();
    page_.layout = detect_layout(page_);
    for (const auto &[line, msg] : warnings_) {
      page_.warnings.push_back(page_.title + ":" + std::to_string(line) + ": " + msg);
    }
    return std::move(page_);
  }

  ParsedListPage &page() { return page_; }

 private:
  static std::string strip_attributes(const std::string &raw) {
    size_t pipe = find_top_level(raw, "|");
    if (pipe == std::string::npos) return raw;
    std::string_view prefix = std::string_view(raw).substr(0, pipe);
    if (prefix.find("[[") != std::string_view::npos) return raw;
    return raw.substr(pipe + 1);
  }

  Section &current_section() {
    if (page_.sections.empty()) page_.sections.emplace_back();
    return page_.sections.back();
  }

  void assign_positions() {
    for (size_t s = 0; s < page_.sections.size(); ++s) {
      auto &sec = page_.sections[s];
      for (size_t c = 0; c < sec.enumerations.size(); ++c) {
        auto &entries = sec.enumerations[c].entries;
        for (size_t e = 0; e < entries.size(); ++e) {
          for (size_t m = 0; m < entries[e].mentions.size(); ++m) {
            entries[e].mentions[m].position = {int(s), int(c), int(e), -1, int(m)};
          }
        }
      }
      for (size_t t = 0; t < sec.tables.size(); ++t) {
        auto &rows = sec.tables[t].rows;
        for (size_t r = 0; r < rows.size(); ++r) {
          for (size_t cell = 0; cell < rows[r].size(); ++cell) {
            auto &ms = rows[r][cell].mentions;
            for (size_t m = 0; m < ms.size(); ++m) {
              ms[m].position = {int(s), int(t), int(r), int(cell), int(m)};
            }
          }
        }
      }
    }
  }

  const LinkResolver &resolver_;
  ParsedListPage page_;
  Warnings warnings_;
  bool in_enumeration_ = false;
  int table_depth_ = 0;
  WikiTable table_;
  std::vector<PendingCell> cells_;
};

std::optional<std::pair<int, std::string>> parse_heading(std::string_view line) {
  std::string t = trim(line);
  if (t.size() < 4 || t[0] != '=' || t.back() != '=') return std::nullopt;
  size_t lead = 0, tail = 0;
  while (lead < t.size() && t[lead] == '=') ++lead;
  while (tail < t.size() - lead && t[t.size() - 1 - tail] == '=') ++tail;
  int level = static_cast<int>(std::min(lead, tail));
  if (level < 2 || lead + tail >= t.size()) return std::nullopt;
  std::string text = trim(std::string_view(t).substr(level, t.size() - 2 * level));
  return std::make_pair(level, text);
}

std::vector<std::string> extract_categories(std::string_view text) {
  std::vector<std::string> out;
  for (size_t i = 0; i + 2 < text.size(); ++i) {
    if (text.compare(i, 2, "[[") != 0) continue;
    size_t j = i + 2;
    while (j < text.size() && text[j] == ' ') ++j;
    if (!ieq_prefix(text, j, "category:")) continue;
    size_t close = text.find("]]", j);
    if (close == std::string_view::npos) break;
    std::string_view inner = text.substr(j + 9, close - j - 9);
    size_t pipe = inner.find('|');
    std::string name = trim(inner.substr(0, pipe));
    if (!name.empty()) out.push_back(name);
    i = close + 1;
  }
  return out;
}

}  // namespace

const char *layout_name(Layout layout) {
  switch (layout) {
    case Layout::kEnumeration: return "enumeration";
    case Layout::kTable: return "table";
    default: return "undefined";
  }
}

Layout layout_from_name(std::string_view name) {
  if (name == "enumeration") return Layout::kEnumeration;
  if (name == "table") return Layout::kTable;
  return Layout::kUndefined;
}

size_t ParsedListPage::entry_count() const {
  size_t n = 0;
  for (const auto &s : sections) {
    for (const auto &e : s.enumerations) n += e.entries.size();
  }
  return n;
}

size_t ParsedListPage::row_count() const {
  size_t n = 0;
  for (const auto &s : sections) {
    for (const auto &t : s.tables) n += t.rows.size();
  }
  return n;
}

size_t ParsedListPage::table_count() const {
  size_t n = 0;
  for (const auto &s : sections) n += s.tables.size();
  return n;
}

const EntityMention *ParsedListPage::at(const MentionPosition &pos) const {
  if (pos.section < 0 || pos.section >= int(sections.size())) return nullptr;
  const Section &sec = sections[pos.section];
  const std::vector<EntityMention> *mentions = nullptr;
  if (pos.cell < 0) {
    if (pos.container < 0 || pos.container >= int(sec.enumerations.size())) return nullptr;
    const auto &entries = sec.enumerations[pos.container].entries;
    if (pos.item < 0 || pos.item >= int(entries.size())) return nullptr;
    mentions = &entries[pos.item].mentions;
  } else {
    if (pos.container < 0 || pos.container >= int(sec.tables.size())) return nullptr;
    const auto &rows = sec.tables[pos.container].rows;
    if (pos.item < 0 || pos.item >= int(rows.size())) return nullptr;
    if (pos.cell >= int(rows[pos.item].size())) return nullptr;
    mentions = &rows[pos.item][pos.cell].mentions;
  }
  if (pos.mention < 0 || pos.mention >= int(mentions->size())) return nullptr;
  return &(*mentions)[pos.mention];
}

std::vector<const EntityMention *> ParsedListPage::mentions() const {
  std::vector<const EntityMention *> out;
  for (const auto &s : sections) {
    for (const auto &en : s.enumerations) {
      for (const auto &e : en.entries) {
        for (const auto &m : e.mentions) out.push_back(&m);
      }
    }
    for (const auto &t : s.tables) {
      for (const auto &row : t.rows) {
        for (const auto &cell : row) {
          for (const auto &m : cell.mentions) out.push_back(&m);
        }
      }
    }
  }
  return out;
}

std::pair<std::string, bool> LinkResolver::resolve(const std::string &link_title) const {
  if (bundle_ != nullptr) {
    std::string underscored = link_title;
    for (char &c : underscored) {
      if (c == ' ') c = '_';
    }
    for (const std::string *cand : std::array<const std::string *, 2>{&link_title, &underscored}) {
      const EntityRecord *e = bundle_->find_entity(*cand);
      if (e != nullptr && e->exists_in_kb) return {*cand, true};
    }
    for (const std::string *cand : std::array<const std::string *, 2>{&link_title, &underscored}) {
      if (bundle_->pages().count(*cand)) return {*cand, true};
    }
  }
  return {std::string(kRedLinkPrefix) + percent_encode(link_title), false};
}

std::string normalize_link_target(std::string_view target) {
  std::string t(target);
  size_t hash = t.find('#');
  if (hash != std::string::npos) t.resize(hash);
  for (char &c : t) {
    if (c == '_') c = ' ';
  }
  t = collapse_ws(t);
  if (!t.empty() && t[0] >= 'a' && t[0] <= 'z') t[0] = static_cast<char>(t[0] - 'a' + 'A');
  return t;
}

std::string strip_markup(std::string_view s, std::vector<std::pair<int, std::string>> *warnings) {
  std::string out;
  out.reserve(s.size());
  int line = 1;
  auto keep_newlines = [&](std::string_view removed) {
    int n = count_newlines(removed);
    out.append(n, '\n');
    line += n;
  };
  for (size_t i = 0; i < s.size();) {
    if (s.compare(i, 4, "<!--") == 0) {
      size_t end = s.find("-->", i + 4);
      if (end == std::string_view::npos) {
        if (warnings) warnings->emplace_back(line, "unterminated comment");
        out.append(s.substr(i, 4));
        i += 4;
        continue;
      }
      keep_newlines(s.substr(i, end + 3 - i));
      i = end + 3;
      continue;
    }
    if (ieq_prefix(s, i, "<ref") && i + 4 < s.size() &&
        (s[i + 4] == '>' || s[i + 4] == ' ' || s[i + 4] == '/')) {
      size_t tag_end = s.find('>', i);
      if (tag_end == std::string_view::npos) {
        if (warnings) warnings->emplace_back(line, "unterminated <ref> tag");
        out.push_back(s[i++]);
        continue;
      }
      if (s[tag_end - 1] == '/') {
        keep_newlines(s.substr(i, tag_end + 1 - i));
        i = tag_end + 1;
        continue;
      }
      size_t close = std::string_view::npos;
      for (size_t j = tag_end; j + 6 <= s.size(); ++j) {
        if (ieq_prefix(s, j, "</ref>")) {
          close = j;
          break;
        }
      }
      if (close == std::string_view::npos) {
        if (warnings) warnings->emplace_back(line, "unterminated <ref> element");
        keep_newlines(s.substr(i, tag_end + 1 - i));
        i = tag_end + 1;
        continue;
      }
      keep_newlines(s.substr(i, close + 6 - i));
      i = close + 6;
      continue;
    }
    if (s.compare(i, 2, "{{") == 0) {
      int depth = 0;
      size_t j = i;
      for (; j + 1 < s.size(); ++j) {
        if (s[j] == '{' && s[j + 1] == '{') {
          ++depth;
          ++j;
        } else if (s[j] == '}' && s[j + 1] == '}') {
          --depth;
          ++j;
          if (depth == 0) break;
        }
      }
      if (depth != 0) {
        if (warnings) warnings->emplace_back(line, "unterminated template");
        out.append("{{");
        i += 2;
        continue;
      }
      keep_newlines(s.substr(i, j + 1 - i));
      i = j + 1;
      continue;
    }
    if (s[i] == '<' && i + 1 < s.size() &&
        (std::isalpha(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '/')) {
      size_t end = s.find_first_of(">\n", i);
      if (end != std::string_view::npos && s[end] == '>') {
        bool br = ieq_prefix(s, i, "<br");
        if (br) out.push_back(' ');
        i = end + 1;
        continue;
      }
    }
    if (s[i] == '\n') ++line;
    out.push_back(s[i++]);
  }
  return out;
}

std::string plain_text(std::string_view wikitext) {
  std::string stripped = strip_markup(wikitext);
  std::string out;
  for (const auto &line : split(stripped, '\n')) {
    std::string t = trim(line);
    if (t.empty()) continue;
    std::string body = parse_inline(t, nullptr, 0, nullptr).text;
    if (body.empty()) continue;
    if (!out.empty()) out.push_back('\n');
    out += body;
  }
  return out;
}

ParsedListPage parse_list_page(const std::string &title, std::string_view wikitext,
                               const LinkResolver &resolver) {
  Warnings pre_warnings;
  std::string text = strip_markup(wikitext, &pre_warnings);
  PageBuilder builder(title, resolver);
  for (const auto &[line, msg] : pre_warnings) builder.add_warning(line, msg);
  auto lines = split(text, '\n');
  int lineno = 0;
  for (const auto &raw : lines) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (builder.in_table()) {
      builder.table_line(line, lineno);
      continue;
    }
    std::string t = trim(line);
    if (auto h = parse_heading(line)) {
      builder.heading(h->first, h->second);
      continue;
    }
    if (starts_with(t, "{|")) {
      builder.open_table(lineno);
      continue;
    }
    if (!line.empty() && line[0] == '*') {
      size_t depth = 0;
      while (depth < line.size() && line[depth] == '*') ++depth;
      size_t body = depth;
      while (body < line.size() && (line[body] == '#' || line[body] == ':')) ++body;
      builder.entry(static_cast<int>(depth), std::string_view(line).substr(body), lineno);
      continue;
    }
    builder.end_enumeration();
  }
  ParsedListPage page = builder.finish(lineno);
  page.categories = extract_categories(text);
  for (const auto &w : page.warnings) log(LogLevel::kInfo, "parse " + w);
  return page;
}

ParsedListPage parse_list_page(const std::string &title, std::string_view wikitext,
                               const CorpusBundle &bundle) {
  return parse_list_page(title, wikitext, LinkResolver(bundle));
}

Layout detect_layout(const ParsedListPage &page) {
  size_t entries = page.entry_count();
  size_t rows = page.row_count();
  if (entries > rows) return Layout::kEnumeration;
  if (rows > entries) return Layout::kTable;
  return Layout::kUndefined;
}

bool is_list_page_title(std::string_view title) {
  return starts_with(title, "List of ") || starts_with(title, "Lists of ") ||
         starts_with(title, "List_of_") || starts_with(title, "Lists_of_");
}

std::set<std::string> select_list_pages(const CorpusBundle &bundle) {
  std::set<std::string> out;
  LinkResolver resolver(bundle);
  for (const auto &[title, text] : bundle.pages()) {
    if (!is_list_page_title(title)) continue;
    if (parse_list_page(title, text, resolver).layout != Layout::kUndefined) out.insert(title);
  }
  return out;
}

}  // namespace listforge
