#include "listforge/taxonomy.h"

#include <algorithm>
#include <deque>
#include <functional>

#include "listforge/util.h"

namespace listforge {

using json = nlohmann::json;

namespace {

const std::set<std::string> kNoNodes;

constexpr const char *kCategoryPrefix = "cat:";
constexpr const char *kPagePrefix = "page:";
constexpr const char *kTypePrefix = "type:";

// Tarjan's SCC, iterative. Returns a component index per node.
std::map<std::string, int> strongly_connected(const TaxonomyGraph &g) {
  std::map<std::string, int> index, low, comp;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  int next_index = 0, next_comp = 0;
  struct Frame {
    std::string node;
    std::set<std::string>::const_iterator it, end;
  };
  for (const auto &[start, kind] : g.nodes()) {
    if (index.count(start)) continue;
    std::vector<Frame> call;
    auto push = [&](const std::string &v) {
      index[v] = low[v] = next_index++;
      stack.push_back(v);
      on_stack.insert(v);
      const auto &ch = g.children(v);
      call.push_back({v, ch.begin(), ch.end()});
    };
    push(start);
    while (!call.empty()) {
      Frame &f = call.back();
      if (f.it != f.end) {
        const std::string &w = *f.it;
        ++f.it;
        if (!index.count(w)) {
          push(w);
        } else if (on_stack.count(w)) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      std::string v = f.node;
      call.pop_back();
      if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[v]);
      if (low[v] == index[v]) {
        for (;;) {
          std::string w = stack.back();
          stack.pop_back();
          on_stack.erase(w);
          comp[w] = next_comp;
          if (w == v) break;
        }
        ++next_comp;
      }
    }
  }
  return comp;
}

std::vector<Edge> cycle_edges(const TaxonomyGraph &g) {
  auto comp = strongly_connected(g);
  std::vector<Edge> out;
  for (const auto &e : g.edges()) {
    if (comp.at(e.first) == comp.at(e.second)) out.push_back(e);
  }
  return out;
}

std::set<std::string> members_of(const CorpusBundle &bundle, const std::string &node_id,
                                 NodeKind kind) {
  if (kind != NodeKind::kCategory && kind != NodeKind::kListCategory) return {};
  const CategoryRecord *cat = bundle.find_category(node_name(node_id));
  return cat ? cat->members : std::set<std::string>{};
}

AxiomSet axioms_for(const std::set<std::string> &entities, const CorpusBundle &bundle,
                    const AxiomThresholds &th) {
  AxiomSet out;
  const Ontology &onto = bundle.ontology();
  std::map<std::string, int> type_counts;
  std::map<std::pair<std::string, std::string>, int> rel_counts;
  int typed = 0;
  for (const auto &id : entities) {
    const EntityRecord *e = bundle.find_entity(id);
    if (e == nullptr || e->types.empty()) continue;
    ++typed;
    for (const auto &t : onto.closure(e->types)) ++type_counts[t];
    for (const auto &po : bundle.facts_of(id)) ++rel_counts[po];
  }
  if (typed == 0) return out;
  std::vector<std::string> qualifying;
  for (const auto &[t, n] : type_counts) {
    if (t == onto.root()) continue;
    double conf = double(n) / typed;
    if (conf >= th.type_min_confidence && n >= th.min_support) qualifying.push_back(t);
  }
  for (const auto &t : qualifying) {
    bool has_more_specific = false;
    for (const auto &other : qualifying) {
      if (other != t && onto.ancestors(other).count(t)) {
        has_more_specific = true;
        break;
      }
    }
    if (!has_more_specific) {
      int n = type_counts[t];
      out.type_axioms.push_back({t, double(n) / typed, n});
    }
  }
  for (const auto &[po, n] : rel_counts) {
    double conf = double(n) / typed;
    if (conf >= th.relation_min_confidence && n >= th.min_support) {
      out.relation_axioms.push_back({po.first, po.second, conf, n});
    }
  }
  return out;
}

}  // namespace

const char *node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::kCategory: return "category";
    case NodeKind::kListCategory: return "list_category";
    case NodeKind::kListPage: return "list_page";
    case NodeKind::kOntologyType: return "ontology_type";
  }
  return "category";
}

NodeKind node_kind_from_name(const std::string &name) {
  if (name == "category") return NodeKind::kCategory;
  if (name == "list_category") return NodeKind::kListCategory;
  if (name == "list_page") return NodeKind::kListPage;
  if (name == "ontology_type") return NodeKind::kOntologyType;
  throw Error("unknown node kind \"" + name + "\"");
}

std::string category_node(const std::string &name) { return kCategoryPrefix + name; }
std::string page_node(const std::string &title) { return kPagePrefix + title; }
std::string type_node(const std::string &type) { return kTypePrefix + type; }

std::string node_name(const std::string &id) {
  size_t colon = id.find(':');
  return colon == std::string::npos ? id : id.substr(colon + 1);
}

bool AxiomSet::has_type(const std::string &type) const {
  for (const auto &a : type_axioms) {
    if (a.type == type) return true;
  }
  return false;
}

bool TaxonomyGraph::add_node(const std::string &id, NodeKind kind) {
  auto [it, inserted] = kinds_.emplace(id, kind);
  if (inserted) {
    children_[id];
    parents_[id];
  }
  return inserted;
}

void TaxonomyGraph::remove_node(const std::string &id) {
  if (!has_node(id)) return;
  for (const auto &c : children_[id]) {
    parents_[c].erase(id);
    --edge_count_;
  }
  for (const auto &p : parents_[id]) {
    if (p == id) continue;  // self-loop already counted above
    children_[p].erase(id);
    --edge_count_;
  }
  children_.erase(id);
  parents_.erase(id);
  kinds_.erase(id);
  depth_.erase(id);
  roots_.erase(id);
  node_axioms.erase(id);
}

NodeKind TaxonomyGraph::kind(const std::string &id) const {
  auto it = kinds_.find(id);
  if (it == kinds_.end()) throw Error("unknown node \"" + id + "\"");
  return it->second;
}

bool TaxonomyGraph::add_edge(const std::string &parent, const std::string &child) {
  if (!has_node(parent) || !has_node(child)) {
    throw Error("edge endpoint missing: " + parent + " -> " + child);
  }
  if (!children_[parent].insert(child).second) return false;
  parents_[child].insert(parent);
  ++edge_count_;
  return true;
}

bool TaxonomyGraph::remove_edge(const std::string &parent, const std::string &child) {
  auto it = children_.find(parent);
  if (it == children_.end() || !it->second.erase(child)) return false;
  parents_[child].erase(parent);
  --edge_count_;
  return true;
}

bool TaxonomyGraph::has_edge(const std::string &parent, const std::string &child) const {
  auto it = children_.find(parent);
  return it != children_.end() && it->second.count(child) > 0;
}

const std::set<std::string> &TaxonomyGraph::children(const std::string &id) const {
  auto it = children_.find(id);
  return it == children_.end() ? kNoNodes : it->second;
}

const std::set<std::string> &TaxonomyGraph::parents(const std::string &id) const {
  auto it = parents_.find(id);
  return it == parents_.end() ? kNoNodes : it->second;
}

std::vector<Edge> TaxonomyGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (const auto &[p, cs] : children_) {
    for (const auto &c : cs) out.emplace_back(p, c);
  }
  return out;
}

void TaxonomyGraph::compute_depths() {
  depth_.clear();
  std::deque<std::string> queue;
  auto seed = [&](const std::string &id) {
    if (has_node(id) && depth_.emplace(id, 0).second) queue.push_back(id);
  };
  if (!roots_.empty()) {
    for (const auto &r : roots_) seed(r);
  } else {
    for (const auto &[id, kind] : kinds_) {
      if (parents_[id].empty()) seed(id);
    }
  }
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    int d = depth_[cur];
    for (const auto &c : children_[cur]) {
      if (depth_.emplace(c, d + 1).second) queue.push_back(c);
    }
  }
}

int TaxonomyGraph::depth(const std::string &id) const {
  auto it = depth_.find(id);
  return it == depth_.end() ? kUnreachable : it->second;
}

std::set<std::string> TaxonomyGraph::descendants(const std::string &id) const {
  std::set<std::string> seen;
  std::vector<std::string> stack{id};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto &c : children(cur)) {
      if (seen.insert(c).second) stack.push_back(c);
    }
  }
  seen.erase(id);
  return seen;
}

std::set<std::string> TaxonomyGraph::ancestors(const std::string &id) const {
  std::set<std::string> seen;
  std::vector<std::string> stack{id};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto &p : parents(cur)) {
      if (seen.insert(p).second) stack.push_back(p);
    }
  }
  seen.erase(id);
  return seen;
}

bool TaxonomyGraph::reaches(const std::string &from, const std::string &to) const {
  if (from == to) return true;
  std::set<std::string> seen{from};
  std::vector<std::string> stack{from};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto &c : children(cur)) {
      if (c == to) return true;
      if (seen.insert(c).second) stack.push_back(c);
    }
  }
  return false;
}

bool TaxonomyGraph::topological_order(std::vector<std::string> *order) const {
  std::map<std::string, size_t> indegree;
  std::deque<std::string> ready;
  for (const auto &[id, kind] : kinds_) {
    indegree[id] = parents(id).size();
    if (indegree[id] == 0) ready.push_back(id);
  }
  order->clear();
  while (!ready.empty()) {
    std::string cur = ready.front();
    ready.pop_front();
    order->push_back(cur);
    for (const auto &c : children(cur)) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  return order->size() == kinds_.size();
}

bool TaxonomyGraph::is_acyclic() const {
  std::vector<std::string> order;
  return topological_order(&order);
}

std::string node_head(const TaxonomyGraph &graph, const std::string &id) {
  NodeKind kind = graph.kind(id);
  std::string name = node_name(id);
  if (kind == NodeKind::kListCategory || kind == NodeKind::kListPage) {
    name = strip_list_prefix(name);
  }
  try {
    return head_noun(name);
  } catch (const Error &) {
    return "";
  }
}

TaxonomyGraph make_category_graph(const CategoryGraph &filtered, const std::string &root) {
  TaxonomyGraph g;
  for (const auto &name : filtered.nodes) g.add_node(category_node(name), NodeKind::kCategory);
  for (const auto &[p, c] : filtered.edges) g.add_edge(category_node(p), category_node(c));
  if (g.has_node(category_node(root))) g.set_roots({category_node(root)});
  g.compute_depths();
  return g;
}

TaxonomyGraph make_list_graph(const CorpusBundle &bundle,
                              const std::map<std::string, std::vector<std::string>> &page_categories) {
  TaxonomyGraph g;
  for (const auto &[name, cat] : bundle.categories()) {
    if (cat.is_list_category) g.add_node(category_node(name), NodeKind::kListCategory);
  }
  for (const auto &[p, c] : bundle.subcategory_edges()) {
    if (g.has_node(category_node(p)) && g.has_node(category_node(c))) {
      g.add_edge(category_node(p), category_node(c));
    }
  }
  for (const auto &[title, cats] : page_categories) {
    g.add_node(page_node(title), NodeKind::kListPage);
    for (const auto &cat : cats) {
      if (g.has_node(category_node(cat))) g.add_edge(category_node(cat), page_node(title));
    }
  }
  g.compute_depths();
  return g;
}

TaxonomyGraph clean_nodes(const TaxonomyGraph &graph, const std::set<std::string> &keep) {
  TaxonomyGraph out = graph;
  for (const auto &[id, kind] : graph.nodes()) {
    if (keep.count(id) || kind == NodeKind::kOntologyType) continue;
    std::string head = node_head(graph, id);
    if (head.empty() || !is_plural(head)) out.remove_node(id);
  }
  out.compute_depths();
  return out;
}

TaxonomyGraph clean_edges(const TaxonomyGraph &graph, const Lexicon &lexicon,
                          const std::set<std::string> &exempt_parents) {
  TaxonomyGraph out = graph;
  std::map<std::string, std::string> heads;
  auto head = [&](const std::string &id) -> const std::string & {
    auto it = heads.find(id);
    if (it == heads.end()) it = heads.emplace(id, node_head(graph, id)).first;
    return it->second;
  };
  for (const auto &[p, c] : graph.edges()) {
    if (exempt_parents.count(p)) continue;
    const std::string &hp = head(p);
    const std::string &hc = head(c);
    if (hp.empty() || hc.empty() || !lexicon.synonym_or_hypernym(hp, hc)) out.remove_edge(p, c);
  }
  out.compute_depths();
  return out;
}

TaxonomyGraph resolve_cycles(const TaxonomyGraph &graph) {
  TaxonomyGraph out = graph;
  out.compute_depths();
  for (const auto &[s, t] : cycle_edges(out)) {
    if (out.depth(s) > out.depth(t)) out.remove_edge(s, t);
  }
  out.compute_depths();
  // Whatever still lies on a cycle connects nodes of equal depth.
  for (const auto &[s, t] : cycle_edges(out)) out.remove_edge(s, t);
  out.compute_depths();
  return out;
}

std::set<Edge> category_list_candidates(
    const CorpusBundle &bundle,
    const std::map<std::string, std::vector<std::string>> &page_categories) {
  std::set<Edge> out;
  for (const auto &[p, c] : bundle.subcategory_edges()) {
    const CategoryRecord *pc = bundle.find_category(p);
    const CategoryRecord *cc = bundle.find_category(c);
    if (pc && cc && !pc->is_list_category && cc->is_list_category) {
      out.emplace(category_node(p), category_node(c));
    }
  }
  for (const auto &[title, cats] : page_categories) {
    for (const auto &cat : cats) {
      const CategoryRecord *rec = bundle.find_category(cat);
      if (rec && !rec->is_list_category) out.emplace(category_node(cat), page_node(title));
    }
  }
  return out;
}

TaxonomyGraph link_lists_to_categories(const TaxonomyGraph &category_graph,
                                       const TaxonomyGraph &list_graph,
                                       const std::set<Edge> &candidates, const Lexicon &lexicon,
                                       LinkStats *stats) {
  TaxonomyGraph out = category_graph;
  for (const auto &[id, kind] : list_graph.nodes()) out.add_node(id, kind);
  for (const auto &[p, c] : list_graph.edges()) out.add_edge(p, c);
  out.node_axioms.insert(list_graph.node_axioms.begin(), list_graph.node_axioms.end());

  std::map<std::string, std::vector<std::string>> by_name;
  for (const auto &[id, kind] : category_graph.nodes()) {
    if (kind == NodeKind::kCategory) by_name[normalize_phrase(node_name(id))].push_back(id);
  }
  LinkStats local;
  for (const auto &[id, kind] : list_graph.nodes()) {
    if (kind != NodeKind::kListCategory && kind != NodeKind::kListPage) continue;
    std::string stripped = strip_list_prefix(node_name(id));
    std::set<std::string> keys{normalize_phrase(stripped)};
    auto syn = lexicon.synonyms.synonyms_of(stripped);
    keys.insert(syn.begin(), syn.end());
    for (const auto &key : keys) {
      auto it = by_name.find(key);
      if (it == by_name.end()) continue;
      for (const auto &cat : it->second) {
        if (out.add_edge(cat, id)) ++local.equivalence_links;
      }
    }
  }
  for (const auto &[cat, list] : candidates) {
    if (!category_graph.has_node(cat) || !list_graph.has_node(list)) continue;
    if (out.has_edge(cat, list)) continue;
    std::string hc = node_head(out, cat), hl = node_head(out, list);
    if (hc.empty() || hl.empty()) continue;
    if (lexicon.synonym_or_hypernym(hc, hl) && out.add_edge(cat, list)) ++local.hypernym_links;
  }
  out.set_roots(category_graph.roots());
  out.compute_depths();
  if (stats) *stats = local;
  return out;
}

std::map<std::string, AxiomSet> induce_axioms(const TaxonomyGraph &graph,
                                              const CorpusBundle &bundle,
                                              const AxiomThresholds &thresholds, int threads) {
  std::vector<std::pair<std::string, NodeKind>> nodes(graph.nodes().begin(), graph.nodes().end());
  std::vector<AxiomSet> results(nodes.size());
  parallel_for(nodes.size(), threads, [&](size_t i) {
    const auto &[id, kind] = nodes[i];
    if (kind == NodeKind::kOntologyType) return;
    std::set<std::string> entities = members_of(bundle, id, kind);
    for (const auto &d : graph.descendants(id)) {
      auto m = members_of(bundle, d, graph.kind(d));
      entities.insert(m.begin(), m.end());
    }
    results[i] = axioms_for(entities, bundle, thresholds);
  });
  std::map<std::string, AxiomSet> out;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!results[i].empty()) out.emplace(nodes[i].first, std::move(results[i]));
  }
  return out;
}

std::map<WordPair, int> build_axiom_evidence(const TaxonomyGraph &category_graph,
                                             const CorpusBundle &bundle,
                                             const AxiomThresholds &thresholds, int threads) {
  auto axioms = induce_axioms(category_graph, bundle, thresholds, threads);
  std::map<WordPair, int> pairs;
  for (const auto &[p, c] : category_graph.edges()) {
    auto ip = axioms.find(p), ic = axioms.find(c);
    if (ip == axioms.end() || ic == axioms.end()) continue;
    bool shared = false;
    for (const auto &a : ip->second.type_axioms) {
      if (ic->second.has_type(a.type)) {
        shared = true;
        break;
      }
    }
    if (!shared) continue;
    std::string hp = node_head(category_graph, p), hc = node_head(category_graph, c);
    if (hp.empty() || hc.empty()) continue;
    ++pairs[{normalize_phrase(hp), normalize_phrase(hc)}];
  }
  return pairs;
}

TaxonomyGraph attach_backbone(const TaxonomyGraph &graph, const CorpusBundle &bundle,
                              BackboneStats *stats) {
  TaxonomyGraph out = graph;
  const OntologyRecord &onto = bundle.ontology_record();
  for (const auto &t : onto.types) out.add_node(type_node(t), NodeKind::kOntologyType);
  for (const auto &[p, c] : onto.subclass_edges) out.add_edge(type_node(p), type_node(c));
  BackboneStats local;
  for (const auto &[id, axioms] : graph.node_axioms) {
    if (!out.has_node(id)) continue;
    for (const auto &a : axioms.type_axioms) {
      std::string tn = type_node(a.type);
      if (!out.has_node(tn)) continue;
      if (out.reaches(id, tn)) {
        log(LogLevel::kWarn, "backbone edge " + tn + " -> " + id + " would close a cycle; skipped");
        ++local.skipped_edges;
        continue;
      }
      if (out.add_edge(tn, id)) ++local.backbone_edges;
    }
  }
  out.compute_depths();
  BackboneStats cov = backbone_coverage(out);
  local.nodes_with_type_ancestor = cov.nodes_with_type_ancestor;
  local.non_type_nodes = cov.non_type_nodes;
  if (stats) *stats = local;
  return out;
}

BackboneStats backbone_coverage(const TaxonomyGraph &graph) {
  BackboneStats stats;
  // Nodes with a type ancestor, propagated in topological order when
  // possible; falls back to per-node search on cyclic input.
  std::vector<std::string> order;
  std::map<std::string, bool> typed;
  if (graph.topological_order(&order)) {
    for (const auto &id : order) {
      bool has = false;
      for (const auto &p : graph.parents(id)) {
        if (graph.kind(p) == NodeKind::kOntologyType || typed[p]) {
          has = true;
          break;
        }
      }
      typed[id] = has;
    }
  } else {
    for (const auto &[id, kind] : graph.nodes()) {
      bool has = false;
      for (const auto &a : graph.ancestors(id)) {
        if (graph.kind(a) == NodeKind::kOntologyType) {
          has = true;
          break;
        }
      }
      typed[id] = has;
    }
  }
  for (const auto &[id, kind] : graph.nodes()) {
    if (kind == NodeKind::kOntologyType) continue;
    ++stats.non_type_nodes;
    if (typed[id]) ++stats.nodes_with_type_ancestor;
  }
  return stats;
}

namespace {

void check_axioms(const std::string &id, const AxiomSet &set, const AxiomThresholds &th) {
  for (const auto &a : set.type_axioms) {
    if (a.confidence < th.type_min_confidence || a.support < th.min_support) {
      throw Error("type axiom " + a.type + " on " + id + " violates thresholds");
    }
  }
  for (const auto &a : set.relation_axioms) {
    if (a.confidence < th.relation_min_confidence || a.support < th.min_support) {
      throw Error("relation axiom (" + a.predicate + ", " + a.object + ") on " + id +
                  " violates thresholds");
    }
  }
}

}  // namespace

json taxonomy_to_json(const TaxonomyGraph &graph) {
  json j;
  j["roots"] = graph.roots();
  j["thresholds"] = {{"type_min_confidence", graph.axiom_thresholds.type_min_confidence},
                     {"relation_min_confidence", graph.axiom_thresholds.relation_min_confidence},
                     {"min_support", graph.axiom_thresholds.min_support}};
  json nodes = json::array();
  for (const auto &[id, kind] : graph.nodes()) {
    json n = {{"id", id}, {"kind", node_kind_name(kind)}};
    int d = graph.depth(id);
    n["depth"] = d == kUnreachable ? json(nullptr) : json(d);
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  json edges = json::array();
  for (const auto &[p, c] : graph.edges()) edges.push_back({p, c});
  j["edges"] = std::move(edges);
  json axioms = json::object();
  for (const auto &[id, set] : graph.node_axioms) {
    check_axioms(id, set, graph.axiom_thresholds);
    json types = json::array(), rels = json::array();
    for (const auto &a : set.type_axioms) {
      types.push_back({{"type", a.type}, {"confidence", a.confidence}, {"support", a.support}});
    }
    for (const auto &a : set.relation_axioms) {
      rels.push_back({{"predicate", a.predicate}, {"object", a.object},
                      {"confidence", a.confidence}, {"support", a.support}});
    }
    axioms[id] = {{"types", std::move(types)}, {"relations", std::move(rels)}};
  }
  j["axioms"] = std::move(axioms);
  return j;
}

TaxonomyGraph taxonomy_from_json(const json &j) {
  TaxonomyGraph g;
  try {
    const auto &th = j.at("thresholds");
    g.axiom_thresholds.type_min_confidence = th.at("type_min_confidence").get<double>();
    g.axiom_thresholds.relation_min_confidence = th.at("relation_min_confidence").get<double>();
    g.axiom_thresholds.min_support = th.at("min_support").get<int>();
    for (const auto &n : j.at("nodes")) {
      g.add_node(n.at("id").get<std::string>(), node_kind_from_name(n.at("kind").get<std::string>()));
    }
    for (const auto &e : j.at("edges")) g.add_edge(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    for (const auto &[id, a] : j.at("axioms").items()) {
      AxiomSet set;
      for (const auto &t : a.at("types")) {
        set.type_axioms.push_back({t.at("type").get<std::string>(), t.at("confidence").get<double>(),
                                   t.at("support").get<int>()});
      }
      for (const auto &r : a.at("relations")) {
        set.relation_axioms.push_back({r.at("predicate").get<std::string>(),
                                       r.at("object").get<std::string>(),
                                       r.at("confidence").get<double>(), r.at("support").get<int>()});
      }
      check_axioms(id, set, g.axiom_thresholds);
      g.node_axioms.emplace(id, std::move(set));
    }
    g.set_roots(j.at("roots").get<std::set<std::string>>());
  } catch (const json::exception &e) {
    throw Error(std::string("malformed taxonomy: ") + e.what());
  }
  g.compute_depths();
  return g;
}

}  // namespace listforge
