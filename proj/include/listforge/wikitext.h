#ifndef LISTFORGE_WIKITEXT_H_
#define LISTFORGE_WIKITEXT_H_

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "listforge/ingest.h"

namespace listforge {

inline constexpr const char *kRedLinkPrefix = "red:";

// Location of a mention inside a parsed page. `container` indexes the
// section's enumerations when cell < 0 and its tables otherwise; `item` is
// the entry or row; `mention` counts within the entry or the cell.
struct MentionPosition {
  int section = 0;
  int container = 0;
  int item = 0;
  int cell = -1;
  int mention = 0;

  bool in_table() const { return cell >= 0; }
  auto operator<=>(const MentionPosition &) const = default;
  bool operator==(const MentionPosition &) const = default;
};

struct EntityMention {
  std::string target;      // entity ID, page title, or "red:<encoded link title>"
  std::string link_title;  // normalized link target as written
  std::string surface;     // display text
  bool exists_in_kb = false;
  MentionPosition position;
  size_t begin = 0;  // byte offsets into the entry/cell plain text
  size_t end = 0;

  bool is_red_link() const { return !exists_in_kb; }
};

struct EnumEntry {
  int depth = 1;
  std::string text;
  std::vector<EntityMention> mentions;
  int sub_entry_count = 0;
  int line = 0;
};

struct Enumeration {
  std::vector<EnumEntry> entries;
};

struct TableCell {
  std::string text;
  std::vector<EntityMention> mentions;
};

struct WikiTable {
  std::vector<std::string> header;
  std::vector<std::vector<TableCell>> rows;
};

struct Section {
  std::string heading;  // empty for the lead section
  int level = 0;
  std::vector<Enumeration> enumerations;
  std::vector<WikiTable> tables;
};

enum class Layout { kEnumeration, kTable, kUndefined };

const char *layout_name(Layout layout);
Layout layout_from_name(std::string_view name);

struct ParsedListPage {
  std::string title;
  std::vector<Section> sections;
  Layout layout = Layout::kUndefined;
  std::vector<std::string> categories;  // [[Category:...]] links, in order
  std::vector<std::string> warnings;    // "<title>:<line>: <message>"

  size_t entry_count() const;
  size_t row_count() const;
  size_t table_count() const;
  // nullptr when the position is out of bounds.
  const EntityMention *at(const MentionPosition &pos) const;
  // All mentions in document order.
  std::vector<const EntityMention *> mentions() const;
};

// Maps a link target to an entity ID. Blue links resolve to a bundle entity
// that exists in the KB or to a page title; everything else becomes a red
// link with a deterministic "red:" ID.
class LinkResolver {
 public:
  LinkResolver() = default;
  explicit LinkResolver(const CorpusBundle &bundle) : bundle_(&bundle) {}

  // Returns the target ID and whether it is a blue link.
  std::pair<std::string, bool> resolve(const std::string &link_title) const;

 private:
  const CorpusBundle *bundle_ = nullptr;
};

// Normalizes a link target: trims, drops "#fragment", maps underscores to
// spaces and upper-cases the first ASCII letter.
std::string normalize_link_target(std::string_view target);

// Removes HTML comments, <ref> elements and {{templates}} while keeping line
// breaks, so that line numbers stay valid. Unterminated constructs are left
// in place and reported through `warnings` as (line, message).
std::string strip_markup(std::string_view wikitext,
                         std::vector<std::pair<int, std::string>> *warnings = nullptr);

// Plain text of a wikitext fragment with links replaced by their labels.
std::string plain_text(std::string_view wikitext);

// Total function: never throws on malformed markup.
ParsedListPage parse_list_page(const std::string &title, std::string_view wikitext,
                               const LinkResolver &resolver);
ParsedListPage parse_list_page(const std::string &title, std::string_view wikitext,
                               const CorpusBundle &bundle);

// Enumeration if entries outnumber table rows, table if rows outnumber
// entries, undefined on a tie (including zero/zero).
Layout detect_layout(const ParsedListPage &page);

bool is_list_page_title(std::string_view title);

// Titles starting with "List of"/"Lists of" whose layout is not undefined.
std::set<std::string> select_list_pages(const CorpusBundle &bundle);

}  // namespace listforge

#endif  // LISTFORGE_WIKITEXT_H_
