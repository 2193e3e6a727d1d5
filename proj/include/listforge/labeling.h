#ifndef LISTFORGE_LABELING_H_
#define LISTFORGE_LABELING_H_

#include <set>
#include <string>
#include <vector>

#include "listforge/ingest.h"
#include "listforge/taxonomy.h"
#include "listforge/wikitext.h"

namespace listforge {

enum class Label { kPositive, kNegative, kUnlabeled };
enum class LabelSource { kEq3, kEq4, kRowRule, kNone };

const char *label_name(Label label);           // "pos" | "neg" | "unl"
const char *label_source_name(LabelSource s);  // "eq3" | "eq4" | "row_rule" | "none"
Label label_from_name(const std::string &name);
LabelSource label_source_from_name(const std::string &name);

struct LabeledExample {
  std::string page;
  EntityMention mention;
  Label label = Label::kUnlabeled;
  LabelSource source = LabelSource::kNone;
};

// Categories most closely related to a list page: walk upwards level by
// level from `list_node`; at the first level holding category nodes, take
// all of them plus every descendant category. Returns category node IDs.
std::set<std::string> related(const std::string &list_node, const TaxonomyGraph &graph);

// Names of all ontology-type ancestors of `list_node`, excluding the
// ontology root.
std::set<std::string> types_of(const std::string &list_node, const TaxonomyGraph &graph,
                               const std::string &ontology_root = "");

// Distant labels for every mention on the page, ordered by position.
//   positive  (eq3)      target is a member of some related() category
//   negative  (eq4)      a target type (with ancestors) is disjoint with a
//                        type in types_of()
//   both                 unlabeled, the evidence conflicts
//   negative  (row_rule) any non-positive mention sharing an entry or row
//                        with a positive
std::vector<LabeledExample> label_page(const ParsedListPage &page, const TaxonomyGraph &graph,
                                       const CorpusBundle &bundle);

// labels.jsonl: one {"page", "position", "target", "label", "source"} object
// per line; position is [section, container, item, cell, mention] with
// cell = -1 inside enumerations.
struct LabelRecord {
  std::string page;
  MentionPosition position;
  std::string target;
  Label label = Label::kUnlabeled;
  LabelSource source = LabelSource::kNone;
};

void write_labels(const std::string &path, const std::vector<LabeledExample> &examples);
std::vector<LabelRecord> read_labels(const std::string &path);

}  // namespace listforge

#endif  // LISTFORGE_LABELING_H_
