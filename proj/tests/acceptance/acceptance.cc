// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "listforge/fixture.h"
#include "listforge/gbdt.h"
#include "listforge/labeling.h"
#include "listforge/lexical.h"
#include "listforge/pipeline.h"
#include "listforge/taxonomy.h"
#include "worked_example.h"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace listforge;

namespace {

// Tolerances.
constexpr double kDagBudgetSeconds = 10.0;
constexpr double kCvBudgetSeconds = 120.0;
constexpr int kDagGraphs = 100;
constexpr int kDagMaxNodes = 500;
constexpr double kCycleInjectionRate = 0.2;
constexpr int kCleaningGraphs = 200;
constexpr int kCleaningMaxNodes = 50;
constexpr int kTraversalGraphs = 100;
constexpr int kTraversalMaxNodes = 200;
constexpr int kFixturePages = 200;
constexpr uint64_t kSeed = 42;
constexpr int kFolds = 10;
constexpr int kMinRelationFacts = 3;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Synthetic node names whose head noun, lemma and number are known by
// construction, so the cleaning oracle never calls the lexical module.

struct Noun {
  std::string surface;
  std::string lemma;
  bool plural;
};

const std::vector<Noun> &nouns() {
  static const std::vector<Noun> v = {
      {"writers", "writer", true},      {"actors", "actor", true},
      {"rivers", "river", true},        {"mountains", "mountain", true},
      {"songs", "song", true},          {"awards", "award", true},
      {"buildings", "building", true},  {"moths", "moth", true},
      {"people", "person", true},       {"cities", "city", true},
      {"companies", "company", true},   {"albums", "album", true},
      {"music", "music", false},        {"history", "history", false},
      {"geography", "geography", false}, {"culture", "culture", false},
      {"football", "football", false},  {"architecture", "architecture", false},
      {"literature", "literature", false}};
  return v;
}

const std::vector<std::string> kAdjectives = {"Brazilian", "Japanese", "Modern", "Early",
                                              "Kenyan",    "Polish",   "Irish",  "Chilean"};
const std::vector<std::string> kPlaces = {"Japan", "Brazil", "Kenya",  "Poland", "Ireland",
                                          "Chile", "Peru",   "Norway", "Egypt",  "Nepal",
                                          "Ghana", "Cuba",   "Fiji",   "Malta",  "Oman"};
const std::vector<std::string> kPreps = {"of", "from", "in"};

struct SynthNode {
  std::string id;
  NodeKind kind;
  size_t noun;
};

class NameFactory {
 public:
  explicit NameFactory(std::mt19937_64 *rng) : rng_(rng) {}

  SynthNode make(NodeKind kind) {
    for (;;) {
      size_t n = pick(nouns().size());
      std::string name = phrase(nouns()[n].surface);
      if (kind == NodeKind::kListCategory) name = "Lists of " + lower_first(name);
      if (kind == NodeKind::kListPage) name = "List of " + lower_first(name);
      if (kind == NodeKind::kCategory) name = upper_first(name);
      std::string id = kind == NodeKind::kListPage ? page_node(name) : category_node(name);
      if (used_.insert(id).second) return {id, kind, n};
    }
  }

  size_t pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(*rng_); }

 private:
  std::string phrase(const std::string &noun) {
    switch (pick(4)) {
      case 0: return kAdjectives[pick(kAdjectives.size())] + " " + noun;
      case 1: return noun + " " + kPreps[pick(kPreps.size())] + " " + kPlaces[pick(kPlaces.size())];
      case 2:
        return kAdjectives[pick(kAdjectives.size())] + " " + noun + " " +
               kPreps[pick(kPreps.size())] + " " + kPlaces[pick(kPlaces.size())];
      default: return noun;
    }
  }
  static std::string upper_first(std::string s) {
    s[0] = char(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  }
  static std::string lower_first(std::string s) {
    if (std::find(kAdjectives.begin(), kAdjectives.end(), s.substr(0, s.find(' '))) ==
        kAdjectives.end()) {
      s[0] = char(std::tolower(static_cast<unsigned char>(s[0])));
    }
    return s;
  }

  std::mt19937_64 *rng_;
  std::set<std::string> used_;
};

// Evidence over noun lemmas with the raw numbers kept for the oracle.
struct SynthEvidence {
  Lexicon lexicon;
  std::set<std::pair<std::string, std::string>> synonyms;  // both orientations

  int votes(const std::string &hyper, const std::string &hypo) const {
    WordPair k{hyper, hypo};
    const auto &ev = lexicon.evidence;
    int v = 0;
    if (auto it = ev.hearst.find(k); it != ev.hearst.end() && it->second >= 2) ++v;
    if (auto it = ev.webisalod.find(k); it != ev.webisalod.end() && it->second >= 0.4) ++v;
    if (auto it = ev.category_axiom_pairs.find(k); it != ev.category_axiom_pairs.end() &&
                                                   it->second >= 2) {
      ++v;
    }
    return v;
  }
};

SynthEvidence random_evidence(std::mt19937_64 *rng, double density) {
  SynthEvidence s;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto &a : nouns()) {
    for (const auto &b : nouns()) {
      if (a.lemma == b.lemma) continue;
      WordPair k{a.lemma, b.lemma};
      if (u(*rng) < density) s.lexicon.evidence.hearst[k] = int(u(*rng) * 5);
      if (u(*rng) < density) s.lexicon.evidence.webisalod[k] = std::round(u(*rng) * 10) / 10;
      if (u(*rng) < density) s.lexicon.evidence.category_axiom_pairs[k] = int(u(*rng) * 4);
      if (u(*rng) < 0.02 && !s.synonyms.count({a.lemma, b.lemma})) {
        s.lexicon.synonyms.add(a.lemma, b.lemma);
        s.synonyms.insert({a.lemma, b.lemma});
        s.synonyms.insert({b.lemma, a.lemma});
      }
    }
  }
  return s;
}

// Kahn's algorithm over the edge list; independent of TaxonomyGraph.
bool kahn_acyclic(const TaxonomyGraph &g) {
  std::map<std::string, int> indeg;
  std::map<std::string, std::vector<std::string>> out;
  for (const auto &[id, k] : g.nodes()) indeg[id] = 0;
  for (const auto &[p, c] : g.edges()) {
    ++indeg[c];
    out[p].push_back(c);
  }
  std::vector<std::string> ready;
  for (const auto &[id, d] : indeg) {
    if (d == 0) ready.push_back(id);
  }
  size_t seen = 0;
  while (!ready.empty()) {
    std::string n = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto &c : out[n]) {
      if (--indeg[c] == 0) ready.push_back(c);
    }
  }
  return seen == indeg.size();
}

// ---------------------------------------------------------------------------
// 1. Taxonomy DAG property.

Outcome check_dag() {
  std::mt19937_64 rng(kSeed);
  auto t0 = std::chrono::steady_clock::now();
  int cyclic_inputs = 0, failures = 0, max_nodes = 0;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int g = 0; g < kDagGraphs; ++g) {
    NameFactory names(&rng);
    SynthEvidence ev = random_evidence(&rng, 0.8);
    int n = 50 + int(names.pick(kDagMaxNodes - 50 + 1));
    int n_cat = n * 6 / 10, n_lcat = n / 10, n_page = n - n_cat - n_lcat;

    const std::string root = category_node("Main topic classifications");
    TaxonomyGraph cg;
    cg.add_node(root, NodeKind::kCategory);
    std::vector<std::string> cats{root};
    for (int i = 1; i < n_cat; ++i) {
      SynthNode s = names.make(NodeKind::kCategory);
      cg.add_node(s.id, s.kind);
      int parents = 1 + int(names.pick(3));
      for (int k = 0; k < parents; ++k) cg.add_edge(cats[names.pick(cats.size())], s.id);
      cats.push_back(s.id);
    }
    TaxonomyGraph lg;
    std::vector<std::string> lists;
    std::set<std::string> page_ids;
    for (int i = 0; i < n_lcat + n_page; ++i) {
      NodeKind kind = i < n_lcat ? NodeKind::kListCategory : NodeKind::kListPage;
      SynthNode s = names.make(kind);
      lg.add_node(s.id, kind);
      if (!lists.empty()) {
        int parents = 1 + int(names.pick(2));
        for (int k = 0; k < parents; ++k) lg.add_edge(lists[names.pick(lists.size())], s.id);
      }
      if (kind == NodeKind::kListPage) page_ids.insert(s.id);
      lists.push_back(s.id);
    }
    // Cycle injection: back edges from a later node and self loops.
    auto inject = [&](TaxonomyGraph *graph, const std::vector<std::string> &ids, size_t from) {
      for (size_t i = from; i < ids.size(); ++i) {
        if (u(rng) >= kCycleInjectionRate) continue;
        if (u(rng) < 0.2) {
          graph->add_edge(ids[i], ids[i]);
        } else {
          size_t j = i + names.pick(ids.size() - i);
          graph->add_edge(ids[j], ids[i]);
        }
      }
    };
    inject(&cg, cats, 1);
    inject(&lg, lists, 0);
    cg.set_roots({root});
    cg.compute_depths();
    lg.compute_depths();
    if (!kahn_acyclic(cg) || !kahn_acyclic(lg)) ++cyclic_inputs;

    std::set<Edge> candidates;
    for (size_t i = 0; i < lists.size(); ++i) {
      int links = int(names.pick(3));
      for (int k = 0; k < links; ++k) candidates.insert({cats[names.pick(cats.size())], lists[i]});
    }

    cg = clean_nodes(cg, {root});
    cg = clean_edges(cg, ev.lexicon, {root});
    cg = resolve_cycles(cg);
    lg = clean_nodes(lg, page_ids);
    lg = clean_edges(lg, ev.lexicon);
    lg = resolve_cycles(lg);
    TaxonomyGraph merged = link_lists_to_categories(cg, lg, candidates, ev.lexicon);
    merged = resolve_cycles(merged);
    std::vector<std::string> order;
    bool ok = kahn_acyclic(cg) && kahn_acyclic(lg) && kahn_acyclic(merged) &&
              merged.topological_order(&order) && order.size() == merged.node_count();
    if (!ok) ++failures;
    max_nodes = std::max(max_nodes, n);
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << kDagGraphs << " graphs (max " << max_nodes << " nodes, " << cyclic_inputs
    << " cyclic inputs), " << failures << " cyclic outputs, " << secs << " s (budget "
    << kDagBudgetSeconds << " s)";
  return {failures == 0 && cyclic_inputs > 0 && secs < kDagBudgetSeconds, d.str()};
}

// ---------------------------------------------------------------------------
// 2. Cleaning oracle.

Outcome check_cleaning() {
  std::mt19937_64 rng(kSeed + 1);
  int mismatches = 0, nodes_checked = 0, edges_checked = 0;
  for (int g = 0; g < kCleaningGraphs; ++g) {
    NameFactory names(&rng);
    SynthEvidence ev = random_evidence(&rng, 0.5);
    int n = 2 + int(names.pick(kCleaningMaxNodes - 1));
    TaxonomyGraph graph;
    std::vector<SynthNode> nodes;
    for (int i = 0; i < n; ++i) {
      size_t r = names.pick(10);
      NodeKind kind = r < 6 ? NodeKind::kCategory : r < 8 ? NodeKind::kListCategory
                                                          : NodeKind::kListPage;
      nodes.push_back(names.make(kind));
      graph.add_node(nodes.back().id, kind);
    }
    int m = int(names.pick(size_t(n) * 3));
    for (int e = 0; e < m; ++e) {
      graph.add_edge(nodes[names.pick(nodes.size())].id, nodes[names.pick(nodes.size())].id);
    }
    std::set<std::string> keep;
    if (names.pick(2) == 0) keep.insert(nodes[0].id);
    std::set<std::string> exempt;
    if (names.pick(2) == 0) exempt.insert(nodes[names.pick(nodes.size())].id);

    std::map<std::string, const SynthNode *> by_id;
    for (const auto &s : nodes) by_id[s.id] = &s;

    std::set<std::string> expected_nodes;
    for (const auto &s : nodes) {
      if (keep.count(s.id) || nouns()[s.noun].plural) expected_nodes.insert(s.id);
    }
    std::set<Edge> expected_after_nodes;
    for (const auto &[p, c] : graph.edges()) {
      if (expected_nodes.count(p) && expected_nodes.count(c)) expected_after_nodes.insert({p, c});
    }
    TaxonomyGraph cleaned = clean_nodes(graph, keep);
    std::set<std::string> got_nodes;
    for (const auto &[id, k] : cleaned.nodes()) got_nodes.insert(id);
    auto got_edges_vec = cleaned.edges();
    std::set<Edge> got_after_nodes(got_edges_vec.begin(), got_edges_vec.end());
    if (got_nodes != expected_nodes || got_after_nodes != expected_after_nodes) ++mismatches;

    std::set<Edge> expected_edges;
    for (const auto &[p, c] : graph.edges()) {
      const std::string &hp = nouns()[by_id.at(p)->noun].lemma;
      const std::string &hc = nouns()[by_id.at(c)->noun].lemma;
      bool keep_edge = exempt.count(p) || hp == hc || ev.synonyms.count({hp, hc}) ||
                       ev.votes(hp, hc) >= 2;
      if (keep_edge) expected_edges.insert({p, c});
    }
    TaxonomyGraph edge_cleaned = clean_edges(graph, ev.lexicon, exempt);
    auto ev_vec = edge_cleaned.edges();
    if (std::set<Edge>(ev_vec.begin(), ev_vec.end()) != expected_edges) ++mismatches;
    if (edge_cleaned.node_count() != graph.node_count()) ++mismatches;
    nodes_checked += n;
    edges_checked += int(graph.edge_count());
  }
  std::ostringstream d;
  d << kCleaningGraphs << " graphs (<= " << kCleaningMaxNodes << " nodes), " << nodes_checked
    << " nodes and " << edges_checked << " edges checked, " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

// ---------------------------------------------------------------------------
// 3. related()/types_of() oracle via all-pairs shortest paths.

struct ClosureOracle {
  std::vector<std::string> ids;
  std::vector<NodeKind> kinds;
  std::vector<std::vector<int>> dist;  // dist[a][b]: edges on the shortest a->b path

  explicit ClosureOracle(const TaxonomyGraph &g) {
    std::map<std::string, size_t> index;
    for (const auto &[id, k] : g.nodes()) {
      index[id] = ids.size();
      ids.push_back(id);
      kinds.push_back(k);
    }
    const int inf = 1 << 28;
    size_t n = ids.size();
    dist.assign(n, std::vector<int>(n, inf));
    for (size_t i = 0; i < n; ++i) dist[i][i] = 0;
    for (const auto &[p, c] : g.edges()) dist[index[p]][index[c]] = std::min(dist[index[p]][index[c]], 1);
    for (size_t k = 0; k < n; ++k) {
      for (size_t i = 0; i < n; ++i) {
        if (dist[i][k] >= inf) continue;
        for (size_t j = 0; j < n; ++j) {
          if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
        }
      }
    }
  }

  bool reaches(size_t a, size_t b) const { return a != b && dist[a][b] < (1 << 28); }

  std::set<std::string> related(size_t l) const {
    int best = 1 << 28;
    for (size_t c = 0; c < ids.size(); ++c) {
      if (kinds[c] == NodeKind::kCategory && reaches(c, l)) best = std::min(best, dist[c][l]);
    }
    std::set<std::string> out;
    for (size_t c = 0; c < ids.size(); ++c) {
      if (kinds[c] != NodeKind::kCategory || !reaches(c, l) || dist[c][l] != best) continue;
      out.insert(ids[c]);
      for (size_t d = 0; d < ids.size(); ++d) {
        if (kinds[d] == NodeKind::kCategory && reaches(c, d)) out.insert(ids[d]);
      }
    }
    return out;
  }

  std::set<std::string> types(size_t l, const std::string &root) const {
    std::set<std::string> out;
    for (size_t t = 0; t < ids.size(); ++t) {
      if (kinds[t] != NodeKind::kOntologyType || !reaches(t, l)) continue;
      std::string name = node_name(ids[t]);
      if (name != root) out.insert(name);
    }
    return out;
  }
};

int compare_traversals(const TaxonomyGraph &g, const std::string &root, int *checked) {
  ClosureOracle o(g);
  int mismatches = 0;
  for (size_t i = 0; i < o.ids.size(); ++i) {
    if (o.kinds[i] != NodeKind::kListPage && o.kinds[i] != NodeKind::kListCategory) continue;
    if (related(o.ids[i], g) != o.related(i)) ++mismatches;
    if (types_of(o.ids[i], g, root) != o.types(i, root)) ++mismatches;
    ++*checked;
  }
  return mismatches;
}

TaxonomyGraph diamond_graph() {
  // Two categories at the same distance share an ancestor and both carry a
  // type path; a list category sits between one branch and the page.
  TaxonomyGraph g;
  for (const auto &t : {"Thing", "Agent", "Person", "Writer"}) {
    g.add_node(type_node(t), NodeKind::kOntologyType);
  }
  g.add_edge(type_node("Thing"), type_node("Agent"));
  g.add_edge(type_node("Agent"), type_node("Person"));
  g.add_edge(type_node("Person"), type_node("Writer"));
  for (const auto &c : {"Writers", "Japanese writers", "Novelists", "Japanese novelists",
                        "Japanese women novelists", "Poets"}) {
    g.add_node(category_node(c), NodeKind::kCategory);
  }
  g.add_node(category_node("Lists of Japanese writers"), NodeKind::kListCategory);
  g.add_node(page_node("List of Japanese novelists"), NodeKind::kListPage);
  g.add_edge(category_node("Writers"), category_node("Japanese writers"));
  g.add_edge(category_node("Writers"), category_node("Novelists"));
  g.add_edge(category_node("Japanese writers"), category_node("Japanese novelists"));
  g.add_edge(category_node("Novelists"), category_node("Japanese novelists"));
  g.add_edge(category_node("Japanese novelists"), category_node("Japanese women novelists"));
  g.add_edge(category_node("Writers"), category_node("Poets"));
  g.add_edge(category_node("Japanese writers"), category_node("Lists of Japanese writers"));
  g.add_edge(category_node("Lists of Japanese writers"), page_node("List of Japanese novelists"));
  g.add_edge(category_node("Japanese novelists"), page_node("List of Japanese novelists"));
  g.add_edge(category_node("Poets"), page_node("List of Japanese novelists"));
  g.add_edge(type_node("Writer"), category_node("Writers"));
  g.add_edge(type_node("Person"), category_node("Japanese novelists"));
  return g;
}

Outcome check_traversals() {
  std::mt19937_64 rng(kSeed + 2);
  int mismatches = 0, checked = 0;
  TaxonomyGraph d = diamond_graph();
  mismatches += compare_traversals(d, "Thing", &checked);
  const std::string page = page_node("List of Japanese novelists");
  bool diamond_ok =
      related(page, d) == std::set<std::string>{category_node("Japanese novelists"),
                                                category_node("Japanese women novelists"),
                                                category_node("Poets")} &&
      types_of(page, d, "Thing") == std::set<std::string>{"Agent", "Person", "Writer"};

  for (int g = 0; g < kTraversalGraphs; ++g) {
    std::uniform_int_distribution<int> size(5, kTraversalMaxNodes);
    int n = size(rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    TaxonomyGraph graph;
    std::vector<std::string> ids;
    int n_types = std::max(1, n / 10);
    for (int i = 0; i < n; ++i) {
      std::string id;
      NodeKind kind;
      if (i < n_types) {
        kind = NodeKind::kOntologyType;
        id = type_node(i == 0 ? "Thing" : "T" + std::to_string(i));
      } else {
        double r = u(rng);
        kind = r < 0.6 ? NodeKind::kCategory : r < 0.75 ? NodeKind::kListCategory
                                                         : NodeKind::kListPage;
        id = (kind == NodeKind::kListPage ? page_node("P" + std::to_string(i))
                                          : category_node("C" + std::to_string(i)));
      }
      graph.add_node(id, kind);
      // Edges only from earlier nodes keep the graph acyclic; several parents
      // per node give multi-ancestor and diamond shapes.
      if (!ids.empty()) {
        int parents = 1 + int(u(rng) * 3);
        for (int k = 0; k < parents; ++k) {
          graph.add_edge(ids[size_t(u(rng) * double(ids.size()))], id);
        }
      }
      ids.push_back(id);
    }
    graph.compute_depths();
    mismatches += compare_traversals(graph, "Thing", &checked);
  }
  std::ostringstream out;
  out << kTraversalGraphs << " graphs (<= " << kTraversalMaxNodes << " nodes) plus diamond, "
      << checked << " list nodes checked, " << mismatches << " mismatches, diamond "
      << (diamond_ok ? "ok" : "wrong");
  return {mismatches == 0 && diamond_ok, out.str()};
}

// ---------------------------------------------------------------------------
// 4. Labeling consistency on the generated corpus.

Outcome check_labeling() {
  FixtureOptions opts;
  opts.list_pages = kFixturePages;
  opts.seed = kSeed;
  CorpusBundle bundle(generate_fixture(opts));
  PipelineConfig config;
  TaxonomyBuild build = build_taxonomy(bundle, config);
  std::vector<ParsedListPage> pages = parse_list_pages(bundle);

  // Independent type closure and disjointness table.
  const OntologyRecord &onto = bundle.ontology_record();
  std::map<std::string, std::set<std::string>> supers;
  for (const auto &[sup, sub] : onto.subclass_edges) supers[sub].insert(sup);
  auto closure = [&](const std::set<std::string> &types) {
    std::set<std::string> out;
    std::vector<std::string> stack(types.begin(), types.end());
    while (!stack.empty()) {
      std::string t = stack.back();
      stack.pop_back();
      if (!out.insert(t).second) continue;
      for (const auto &s : supers[t]) stack.push_back(s);
    }
    return out;
  };
  std::string onto_root;
  for (const auto &t : onto.types) {
    if (supers[t].empty()) onto_root = t;
  }
  auto list_types = [&](const std::string &node) {
    std::set<std::string> out, seen;
    std::vector<std::string> stack{node};
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      for (const auto &p : build.graph.parents(n)) {
        if (!seen.insert(p).second) continue;
        if (p.rfind("type:", 0) == 0 && node_name(p) != onto_root) out.insert(node_name(p));
        stack.push_back(p);
      }
    }
    return out;
  };

  int both = 0, orphan_row_rule = 0, unwitnessed = 0, pos = 0, neg_eq4 = 0, neg_row = 0;
  for (const auto &page : pages) {
    auto labels = label_page(page, build.graph, bundle);
    std::map<std::string, std::set<Label>> by_target;
    std::map<std::tuple<int, int, int, bool>, bool> item_has_eq3;
    std::set<MentionPosition> positions;
    for (const auto &l : labels) {
      const auto &p = l.mention.position;
      if (!positions.insert(p).second) ++both;
      by_target[l.mention.target].insert(l.label);
      if (l.label == Label::kPositive && l.source == LabelSource::kEq3) {
        item_has_eq3[{p.section, p.container, p.item, p.in_table()}] = true;
      }
    }
    for (const auto &[t, ls] : by_target) {
      if (ls.count(Label::kPositive) && ls.count(Label::kNegative)) ++both;
    }
    std::set<std::string> ltypes = list_types(page_node(page.title));
    for (const auto &l : labels) {
      const auto &p = l.mention.position;
      if (l.label == Label::kPositive) ++pos;
      if (l.source == LabelSource::kRowRule) {
        ++neg_row;
        if (!item_has_eq3.count({p.section, p.container, p.item, p.in_table()})) ++orphan_row_rule;
      }
      if (l.source == LabelSource::kEq4) {
        ++neg_eq4;
        const EntityRecord *e = bundle.find_entity(l.mention.target);
        bool witness = false;
        if (e) {
          for (const auto &te : closure(e->types)) {
            for (const auto &tl : ltypes) {
              witness |= onto.disjointness_pairs.count({te, tl}) > 0 ||
                         onto.disjointness_pairs.count({tl, te}) > 0;
            }
          }
        }
        if (!witness) ++unwitnessed;
      }
    }
  }
  std::ostringstream d;
  d << pages.size() << " pages: " << pos << " positive, " << neg_eq4 << " eq4 and " << neg_row
    << " row_rule negatives; " << both << " conflicting, " << orphan_row_rule
    << " row_rule without eq3 positive, " << unwitnessed << " eq4 without disjoint witness";
  bool ok = both == 0 && orphan_row_rule == 0 && unwitnessed == 0 && pos > 0 && neg_eq4 > 0 &&
            neg_row > 0 && pages.size() == size_t(kFixturePages);
  return {ok, d.str()};
}

// ---------------------------------------------------------------------------
// 5. Worked examples.

Outcome check_worked_examples() {
  std::vector<std::string> failed;
  auto expect = [&](bool cond, const std::string &what) {
    if (!cond) failed.push_back(what);
  };
  expect(head_noun("People from London") == "people", "head(People from London)");
  expect(is_plural(head_noun("People from London")), "People from London plural");
  expect(head_noun("London") == "london" && !is_plural(head_noun("London")), "London singular");
  expect(head_noun("Song awards") == "awards", "head(Song awards)");

  CorpusBundle bundle(testing::worked_example_data());
  PipelineConfig config;
  TaxonomyBuild build = build_taxonomy(bundle, config);
  const TaxonomyGraph &g = build.graph;
  expect(!g.has_node(category_node("London")), "London removed");
  expect(g.has_node(category_node("Songs")) && g.has_node(category_node("Song awards")) &&
             !g.has_edge(category_node("Songs"), category_node("Song awards")),
         "Songs -> Song awards removed");
  expect(g.has_edge(category_node("People from London"), category_node("Criminals from London")),
         "People from London -> Criminals from London kept");
  expect(g.has_edge(category_node("Japanese writers"), category_node("Lists of Japanese writers")),
         "Japanese writers = Lists of Japanese writers");
  expect(types_of(page_node("List of Japanese speculative fiction writers"), g,
                  bundle.ontology().root()) == std::set<std::string>{"Agent", "Person", "Writer"},
         "types_of = {Agent, Person, Writer}");
  std::string d = failed.empty() ? "all 9 examples hold" : "failed:";
  for (const auto &f : failed) d += " [" + f + "]";
  return {failed.empty(), d};
}

// ---------------------------------------------------------------------------
// 6. Classifier beats the pick-first baseline under grouped CV.

Outcome check_classifier(const fs::path &work) {
  auto t0 = std::chrono::steady_clock::now();
  fs::path corpus = work / "c6" / "corpus";
  FixtureOptions opts;
  opts.list_pages = kFixturePages;
  opts.seed = kSeed;
  write_fixture(corpus.string(), opts);
  PipelineConfig config;
  config.corpus = corpus.string();
  config.out = (work / "c6" / "out").string();
  config.seed = kSeed;
  config.gbdt.seed = kSeed;
  config.folds = kFolds;
  config.threads = int(std::clamp(std::thread::hardware_concurrency(), 1u, 4u));
  cmd_build_taxonomy(config);
  cmd_label(config);
  json r = cmd_eval(config);
  double secs = seconds_since(t0);
  double mp = r["model"]["all"]["precision"], bp = r["baseline"]["all"]["precision"];
  double be = r["baseline"]["enumeration"]["recall"], bt = r["baseline"]["table"]["recall"];
  std::ostringstream d;
  d << kFolds << "-fold CV: model P " << mp << " vs baseline P " << bp
    << "; baseline R enumeration " << be << " vs table " << bt << "; " << secs << " s (budget "
    << kCvBudgetSeconds << " s)";
  return {mp > bp && be > bt && secs < kCvBudgetSeconds, d.str()};
}

// ---------------------------------------------------------------------------
// 7. Determinism through the CLI.

int run(const std::string &cmd) { return std::system(cmd.c_str()); }

std::string quote(const fs::path &p) { return "'" + p.string() + "'"; }

Outcome check_determinism(const fs::path &work, const std::string &cli) {
  fs::path base = work / "c7";
  fs::path corpus = base / "corpus";
  std::ostringstream gen;
  gen << quote(cli) << " gen-fixture --out " << quote(corpus) << " --pages " << kFixturePages
      << " --seed " << kSeed << " > /dev/null";
  if (run(gen.str()) != 0) return {false, "gen-fixture failed"};
  const std::vector<std::pair<std::string, int>> runs = {{"run1", 1}, {"run2", 1}, {"run4", 4}};
  for (const auto &[name, threads] : runs) {
    for (const std::string stage : {"build-taxonomy", "label", "train", "extract"}) {
      std::ostringstream c;
      c << quote(cli) << " " << stage << " --corpus " << quote(corpus) << " --out "
        << quote(base / name) << " --threads " << threads << " --seed " << kSeed << " > "
        << quote(base / (name + "." + stage + ".json")) << " 2> /dev/null";
      if (run(c.str()) != 0) return {false, name + " " + stage + " failed"};
    }
  }
  std::vector<std::string> differing;
  size_t bytes = 0;
  for (const char *f : {kTaxonomyFile, kLabelsFile, kModelFile, kTriplesFile}) {
    std::string a = read_file(base / "run1" / f);
    bytes += a.size();
    if (a.empty() || a != read_file(base / "run2" / f) || a != read_file(base / "run4" / f)) {
      differing.push_back(f);
    }
  }
  std::ostringstream d;
  d << "3 CLI runs (threads 1, 1, 4), 4 artifacts, " << bytes << " bytes per run";
  if (!differing.empty()) {
    d << "; differ:";
    for (const auto &f : differing) d << " " << f;
  }
  return {differing.empty(), d.str()};
}

// ---------------------------------------------------------------------------
// 8. GBDT correctness on a linearly separable set.

Outcome check_gbdt() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> x;
  std::vector<int> y;
  while (x.size() < 300) {
    double a = u(rng), b = u(rng), c = u(rng);
    double s = a + 2 * b - 0.5 * c;
    if (std::abs(s) < 0.1) continue;  // margin
    x.push_back({a, b, c});
    y.push_back(s > 0 ? 1 : 0);
  }
  GbdtParams params;
  params.n_trees = 200;
  params.max_depth = 4;
  GbdtModel m = train_gbdt(x, y, params);

  auto loss_at = [&](size_t rounds) {
    double total = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      double margin = m.base_score;
      for (size_t t = 0; t < rounds; ++t) margin += m.trees[t].predict(x[i]);
      double p = 1.0 / (1.0 + std::exp(-margin));
      total -= y[i] ? std::log(p) : std::log(1 - p);
    }
    return total / double(x.size());
  };
  bool monotone = true;
  double prev = loss_at(0);
  for (size_t r = 1; r <= m.trees.size(); ++r) {
    double cur = loss_at(r);
    if (cur > prev + 1e-12) monotone = false;
    prev = cur;
  }
  int correct = 0;
  bool in_range = true;
  for (size_t i = 0; i < x.size(); ++i) {
    double p = predict(m, x[i], 0);
    in_range &= p > 0.0 && p < 1.0;
    correct += (p >= 0.5) == (y[i] == 1);
  }
  double acc = double(correct) / double(x.size());
  std::ostringstream d;
  d << x.size() << " points, " << m.trees.size() << " rounds: accuracy " << acc << ", loss "
    << loss_at(0) << " -> " << prev << (monotone ? " monotone" : " NOT monotone")
    << (in_range ? ", predictions in (0,1)" : ", prediction outside (0,1)");
  return {acc == 1.0 && monotone && in_range, d.str()};
}

// ---------------------------------------------------------------------------
// 9. N-Triples validity, parsed by an independent grammar.

struct Triple {
  std::string s, p, o;
};

// Line grammar: subject (IRIREF | BLANK_NODE_LABEL), predicate IRIREF, object
// (IRIREF | BLANK_NODE_LABEL | literal), then '.'.
bool parse_ntriples(const std::string &text, std::vector<Triple> *out, std::string *error) {
  const std::string iri = R"(<(?:[^\x00-\x20<>"{}|^`\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*>)";
  const std::string bnode = R"(_:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)";
  const std::string literal =
      R"("(?:[^"\\\n\r]|\\[tbnrf"'\\]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*"(?:\^\^)" + iri +
      R"(|@[a-zA-Z]+(?:-[a-zA-Z0-9]+)*)?)";
  const std::regex line_re("^[ \\t]*(" + iri + "|" + bnode + ")[ \\t]+(" + iri + ")[ \\t]+(" +
                           iri + "|" + bnode + "|" + literal + ")[ \\t]*\\.[ \\t]*$");
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.empty() || line[0] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) {
      *error = "line " + std::to_string(n) + ": " + line;
      return false;
    }
    out->push_back({m[1], m[2], m[3]});
  }
  if (!text.empty() && text.back() != '\n') {
    *error = "missing final newline";
    return false;
  }
  return true;
}

Outcome check_ntriples(const fs::path &work) {
  fs::path base = work / "c7";
  std::string text = read_file(base / "run1" / kTriplesFile);
  std::vector<Triple> triples;
  std::string error;
  if (!parse_ntriples(text, &triples, &error)) return {false, "parse error at " + error};
  json summary;
  try {
    summary = json::parse(read_file(base / "run1.extract.json"));
  } catch (const std::exception &e) {
    return {false, std::string("cannot read extract summary: ") + e.what()};
  }
  size_t internal = summary.at("statements").get<size_t>();

  const std::string ns = kDefaultNamespace;
  auto profile = [&](const std::string &subject) {
    std::pair<int, int> tr{0, 0};
    for (const auto &t : triples) {
      if (t.s != "<" + subject + ">") continue;
      if (t.p == "<" + std::string(kRdfType) + ">") ++tr.first;
      else ++tr.second;
    }
    return tr;
  };
  auto rioja = profile(ns + "Rioja_(moth)");
  auto dan = profile(ns + "Dan_Stulbach");
  std::ostringstream d;
  d << triples.size() << " triples parsed, " << internal << " internal statements; Rioja "
    << rioja.first << " types + " << rioja.second << " relations; Dan Stulbach " << dan.first
    << " types + " << dan.second << " relations";
  bool ok = triples.size() == internal && !triples.empty() && rioja.first >= 1 &&
            rioja.second >= kMinRelationFacts && dan.first >= 1 && dan.second >= kMinRelationFacts;
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"listforge acceptance checks"};
  std::string workdir = (fs::temp_directory_path() / "listforge_acceptance").string();
  std::string cli = LISTFORGE_CLI;
  app.add_option("--workdir", workdir, "Scratch directory");
  app.add_option("--cli", cli, "Path to the listforge executable");
  CLI11_PARSE(app, argc, argv);
  set_log_level(LogLevel::kError);

  fs::path work(workdir);
  fs::remove_all(work);
  fs::create_directories(work);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"taxonomy-dag", check_dag},
      {"cleaning-oracle", check_cleaning},
      {"traversal-oracle", check_traversals},
      {"labeling-consistency", check_labeling},
      {"worked-examples", check_worked_examples},
      {"classifier-vs-baseline", [&] { return check_classifier(work); }},
      {"determinism", [&] { return check_determinism(work, cli); }},
      {"gbdt-correctness", check_gbdt},
      {"ntriples-validity", [&] { return check_ntriples(work); }},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - size_t(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
