#ifndef LISTFORGE_INGEST_H_
#define LISTFORGE_INGEST_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "listforge/lexical.h"

namespace listforge {

inline constexpr const char *kListCategoryPrefix = "Lists of";
inline constexpr const char *kDefaultRootCategory = "Main_topic_classifications";

using Edge = std::pair<std::string, std::string>;  // (parent, child)
using Fact = std::tuple<std::string, std::string, std::string>;  // (entity, predicate, object)

struct CategoryRecord {
  std::string name;
  std::set<std::string> members;  // entity IDs
  bool is_list_category = false;

  bool operator==(const CategoryRecord &other) const = default;
};

struct EntityRecord {
  std::string id;
  std::string label;
  std::set<std::string> types;
  bool exists_in_kb = true;

  bool operator==(const EntityRecord &other) const = default;
};

struct OntologyRecord {
  std::set<std::string> types;
  std::set<Edge> subclass_edges;         // (superclass, subclass)
  std::set<Edge> disjointness_pairs;     // stored in both orientations
  std::set<Fact> relation_facts;

  bool operator==(const OntologyRecord &other) const = default;
};

// Raw bundle content, as read from or written to a corpus directory.
struct BundleData {
  std::map<std::string, CategoryRecord> categories;
  std::set<Edge> subcategory_edges;
  std::map<std::string, EntityRecord> entities;
  OntologyRecord ontology;
  std::map<std::string, std::string> pages;  // title -> wikitext
  HypernymEvidence evidence;                 // hearst + webisalod; axiom pairs stay empty
  SynonymTable synonyms;

  bool operator==(const BundleData &other) const = default;
};

// Read-only index over the ontology: ancestor closure, disjointness and the
// single root type.
class Ontology {
 public:
  Ontology() = default;
  // Throws ValidationError when the subclass graph is cyclic, has several
  // roots, or references undeclared types.
  explicit Ontology(const OntologyRecord &record);

  const std::string &root() const { return root_; }
  bool has_type(const std::string &type) const { return ancestors_.count(type) > 0; }
  // The type itself plus all its superclasses. Empty for unknown types.
  const std::set<std::string> &ancestors(const std::string &type) const;
  // Closure of a set of types under ancestors().
  std::set<std::string> closure(const std::set<std::string> &types) const;
  bool is_disjoint(const std::string &a, const std::string &b) const;
  // Shortest distance from the root (root = 0); -1 for unknown types.
  int depth(const std::string &type) const;
  const std::set<std::string> &parents(const std::string &type) const;

 private:
  std::string root_;
  std::map<std::string, std::set<std::string>> ancestors_;
  std::map<std::string, std::set<std::string>> parents_;
  std::map<std::string, int> depth_;
  std::set<Edge> disjoint_;
};

// Immutable, validated corpus snapshot. Construct through load_bundle() or
// from BundleData; both validate every invariant and build lookup indexes.
class CorpusBundle {
 public:
  CorpusBundle() = default;
  // Throws ValidationError listing every dangling or inconsistent reference.
  explicit CorpusBundle(BundleData data);

  const BundleData &data() const { return data_; }
  const std::map<std::string, CategoryRecord> &categories() const { return data_.categories; }
  const std::set<Edge> &subcategory_edges() const { return data_.subcategory_edges; }
  const std::map<std::string, EntityRecord> &entities() const { return data_.entities; }
  const std::map<std::string, std::string> &pages() const { return data_.pages; }
  const HypernymEvidence &evidence() const { return data_.evidence; }
  const SynonymTable &synonyms() const { return data_.synonyms; }
  const Ontology &ontology() const { return ontology_; }
  const OntologyRecord &ontology_record() const { return data_.ontology; }

  const CategoryRecord *find_category(const std::string &name) const;
  const EntityRecord *find_entity(const std::string &id) const;
  // Subcategories of `name` according to subcategory_edges.
  const std::set<std::string> &subcategories(const std::string &name) const;
  // Types of an entity plus their ontology ancestors.
  std::set<std::string> entity_type_closure(const std::string &id) const;
  // (predicate, object) pairs recorded for an entity.
  const std::set<std::pair<std::string, std::string>> &facts_of(const std::string &id) const;
  bool has_fact(const std::string &entity, const std::string &predicate,
                const std::string &object) const;

  bool operator==(const CorpusBundle &other) const { return data_ == other.data_; }

 private:
  BundleData data_;
  Ontology ontology_;
  std::map<std::string, std::set<std::string>> children_;
  std::map<std::string, std::set<std::pair<std::string, std::string>>> facts_;
};

// Loads categories.jsonl, entities.jsonl, ontology.json, pages.jsonl and the
// optional hearst.tsv, webisalod.tsv and synonyms.tsv from `root_dir`.
// Missing files are read as empty. Throws ParseError on malformed lines and
// ValidationError on dangling references.
CorpusBundle load_bundle(const std::string &root_dir);

// Writes the bundle in the format load_bundle reads, with sorted records.
void write_bundle(const CorpusBundle &bundle, const std::string &root_dir);

struct CategoryGraph {
  std::set<std::string> nodes;
  std::set<Edge> edges;
};

// Categories reachable from `root` via subcategory edges, minus every
// non-root category whose lowercased name contains "wikipedia", "lists",
// "template" or "stub". Edges are the induced subgraph. Throws
// MissingInputError when the root category is missing from a non-empty
// bundle.
CategoryGraph filter_category_graph(const CorpusBundle &bundle,
                                    const std::string &root = kDefaultRootCategory);

}  // namespace listforge

#endif  // LISTFORGE_INGEST_H_
