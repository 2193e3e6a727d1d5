#ifndef LISTFORGE_TAXONOMY_H_
#define LISTFORGE_TAXONOMY_H_

#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "listforge/ingest.h"
#include "listforge/lexical.h"

namespace listforge {

enum class NodeKind { kCategory, kListCategory, kListPage, kOntologyType };

const char *node_kind_name(NodeKind kind);
NodeKind node_kind_from_name(const std::string &name);

// Node IDs carry a namespace prefix so that a category, a list page and an
// ontology type with the same name never collide.
std::string category_node(const std::string &name);
std::string page_node(const std::string &title);
std::string type_node(const std::string &type);
// Name part of a node ID ("cat:Japanese writers" -> "Japanese writers").
std::string node_name(const std::string &id);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct TypeAxiom {
  std::string type;
  double confidence = 0.0;
  int support = 0;
  bool operator==(const TypeAxiom &) const = default;
};

struct RelationAxiom {
  std::string predicate;
  std::string object;
  double confidence = 0.0;
  int support = 0;
  bool operator==(const RelationAxiom &) const = default;
};

struct AxiomSet {
  std::vector<TypeAxiom> type_axioms;          // sorted by type
  std::vector<RelationAxiom> relation_axioms;  // sorted by (predicate, object)

  bool empty() const { return type_axioms.empty() && relation_axioms.empty(); }
  bool has_type(const std::string &type) const;
  bool operator==(const AxiomSet &) const = default;
};

struct AxiomThresholds {
  double type_min_confidence = 0.6;
  double relation_min_confidence = 0.6;
  int min_support = 3;
};

// Directed graph over categories, list categories, list pages and ontology
// types. Edges point from parent to child. Depths are shortest-path
// distances from the depth roots and must be refreshed with
// compute_depths() after mutation.
class TaxonomyGraph {
 public:
  bool add_node(const std::string &id, NodeKind kind);
  void remove_node(const std::string &id);
  bool has_node(const std::string &id) const { return kinds_.count(id) > 0; }
  NodeKind kind(const std::string &id) const;
  const std::map<std::string, NodeKind> &nodes() const { return kinds_; }
  size_t node_count() const { return kinds_.size(); }

  // Both endpoints must exist. Returns false if the edge was present.
  bool add_edge(const std::string &parent, const std::string &child);
  bool remove_edge(const std::string &parent, const std::string &child);
  bool has_edge(const std::string &parent, const std::string &child) const;
  const std::set<std::string> &children(const std::string &id) const;
  const std::set<std::string> &parents(const std::string &id) const;
  std::vector<Edge> edges() const;  // sorted
  size_t edge_count() const { return edge_count_; }

  // Depth roots. With no explicit roots, every node without parents is a
  // root.
  void set_roots(std::set<std::string> roots) { roots_ = std::move(roots); }
  const std::set<std::string> &roots() const { return roots_; }
  void compute_depths();
  int depth(const std::string &id) const;  // kUnreachable if not reachable

  // Transitive closures, excluding the start node.
  std::set<std::string> descendants(const std::string &id) const;
  std::set<std::string> ancestors(const std::string &id) const;
  bool reaches(const std::string &from, const std::string &to) const;
  // Topological order; empty optional-like result when cyclic.
  bool topological_order(std::vector<std::string> *order) const;
  bool is_acyclic() const;

  std::map<std::string, AxiomSet> node_axioms;
  AxiomThresholds axiom_thresholds;

 private:
  std::map<std::string, NodeKind> kinds_;
  std::map<std::string, std::set<std::string>> children_;
  std::map<std::string, std::set<std::string>> parents_;
  std::map<std::string, int> depth_;
  std::set<std::string> roots_;
  size_t edge_count_ = 0;
};

// Head noun of a node's title, with the list prefix stripped for list nodes.
// Empty when no head noun exists.
std::string node_head(const TaxonomyGraph &graph, const std::string &id);

// Category graph over the filtered categories; the root becomes the depth
// root.
TaxonomyGraph make_category_graph(const CategoryGraph &filtered, const std::string &root);

// List graph: list categories plus the given list pages, with subcategory
// edges between list categories and membership edges from list categories
// to the pages that name them in [[Category:...]] links.
TaxonomyGraph make_list_graph(const CorpusBundle &bundle,
                              const std::map<std::string, std::vector<std::string>> &page_categories);

// Removes every node whose head noun is missing or singular, together with
// its incident edges. Nodes in `keep` are never removed.
TaxonomyGraph clean_nodes(const TaxonomyGraph &graph, const std::set<std::string> &keep = {});

// Keeps edge (p, c) iff head(p) is a synonym or hypernym of head(c). Edges
// leaving a node in `exempt_parents` (the artificial root) are kept.
TaxonomyGraph clean_edges(const TaxonomyGraph &graph, const Lexicon &lexicon,
                          const std::set<std::string> &exempt_parents = {});

// Removes cycle edges pointing from a deeper to a shallower node, then every
// edge of any remaining (equal-depth) cycle. The result is acyclic.
TaxonomyGraph resolve_cycles(const TaxonomyGraph &graph);

struct LinkStats {
  int equivalence_links = 0;
  int hypernym_links = 0;
};

// Existing Wikipedia edges between a category and a list node: list
// categories listed as subcategories of a category, and list pages that are
// members of a category. Pairs are node IDs (category node, list node).
std::set<Edge> category_list_candidates(
    const CorpusBundle &bundle,
    const std::map<std::string, std::vector<std::string>> &page_categories);

// Merges both graphs and adds equivalence links (names equal after list
// prefix stripping and singularization, or declared synonyms) and hypernym
// links along candidate edges. Links point from the category to the list
// node.
TaxonomyGraph link_lists_to_categories(const TaxonomyGraph &category_graph,
                                       const TaxonomyGraph &list_graph,
                                       const std::set<Edge> &candidates, const Lexicon &lexicon,
                                       LinkStats *stats = nullptr);

// Frequency-threshold axiom induction. The entity set of a node is its
// direct members plus the members of every descendant category node.
std::map<std::string, AxiomSet> induce_axioms(const TaxonomyGraph &graph,
                                              const CorpusBundle &bundle,
                                              const AxiomThresholds &thresholds = {},
                                              int threads = 1);

// Counts (head(parent), head(child)) for every edge whose endpoints share a
// type axiom.
std::map<WordPair, int> build_axiom_evidence(const TaxonomyGraph &category_graph,
                                             const CorpusBundle &bundle,
                                             const AxiomThresholds &thresholds = {},
                                             int threads = 1);

struct BackboneStats {
  int backbone_edges = 0;
  int skipped_edges = 0;
  int nodes_with_type_ancestor = 0;
  int non_type_nodes = 0;
  double coverage() const {
    return non_type_nodes == 0 ? 0.0 : double(nodes_with_type_ancestor) / non_type_nodes;
  }
};

// Adds ontology type nodes with their subclass edges and an edge from each
// type axiom to its node. Edges that would close a cycle are skipped.
TaxonomyGraph attach_backbone(const TaxonomyGraph &graph, const CorpusBundle &bundle,
                              BackboneStats *stats = nullptr);

// Fraction of non-type nodes that have an ontology-type ancestor.
BackboneStats backbone_coverage(const TaxonomyGraph &graph);

nlohmann::json taxonomy_to_json(const TaxonomyGraph &graph);
// Throws Error when an axiom violates the recorded thresholds.
TaxonomyGraph taxonomy_from_json(const nlohmann::json &j);

}  // namespace listforge

#endif  // LISTFORGE_TAXONOMY_H_
