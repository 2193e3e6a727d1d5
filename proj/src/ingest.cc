#include "listforge/ingest.h"

#include <filesystem>
#include <fstream>
#include <queue>
#include <sstream>

#include "json.hpp"
#include "listforge/util.h"

namespace listforge {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::set<std::string> kEmptySet;
const std::set<std::pair<std::string, std::string>> kEmptyFacts;

// Calls fn(object, line_number) for every non-blank line of a JSONL file.
template <typename Fn>
void for_each_jsonl(const fs::path &path, Fn fn) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(path.filename().string(), lineno, e.what());
    }
    if (!obj.is_object()) throw ParseError(path.filename().string(), lineno, "expected object");
    try {
      fn(obj, lineno);
    } catch (const json::exception &e) {
      throw ParseError(path.filename().string(), lineno, e.what());
    }
  }
}

std::set<std::string> string_set(const json &obj, const char *key) {
  std::set<std::string> out;
  if (!obj.contains(key)) return out;
  for (const auto &v : obj.at(key)) out.insert(v.get<std::string>());
  return out;
}

std::set<Edge> pair_set(const json &arr, const std::string &what) {
  std::set<Edge> out;
  for (const auto &p : arr) {
    if (!p.is_array() || p.size() != 2) throw Error(what + ": expected [a, b] pairs");
    out.emplace(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return out;
}

}  // namespace

Ontology::Ontology(const OntologyRecord &record) {
  std::vector<std::string> offenders;
  for (const auto &t : record.types) parents_[t];
  for (const auto &[parent, child] : record.subclass_edges) {
    for (const auto &t : {parent, child}) {
      if (!record.types.count(t)) offenders.push_back("subclass edge references undeclared type \"" + t + "\"");
    }
    parents_[child].insert(parent);
  }
  for (const auto &[a, b] : record.disjointness_pairs) {
    for (const auto &t : {a, b}) {
      if (!record.types.count(t)) offenders.push_back("disjointness references undeclared type \"" + t + "\"");
    }
    disjoint_.emplace(a, b);
    disjoint_.emplace(b, a);
  }
  if (!offenders.empty()) throw ValidationError(offenders);

  std::vector<std::string> roots;
  for (const auto &t : record.types) {
    if (parents_[t].empty()) roots.push_back(t);
  }
  if (!record.types.empty() && roots.size() != 1) {
    throw ValidationError({"ontology must have exactly one root type, found " +
                           std::to_string(roots.size()) + (roots.empty() ? "" : " (" + join(roots, ", ") + ")")});
  }
  if (!roots.empty()) root_ = roots.front();

  // Topological order via Kahn's algorithm; leftover types lie on a cycle.
  std::map<std::string, std::set<std::string>> children;
  std::map<std::string, size_t> indegree;
  for (const auto &t : record.types) indegree[t] = parents_[t].size();
  for (const auto &[parent, child] : record.subclass_edges) children[parent].insert(child);
  std::queue<std::string> ready;
  for (const auto &[t, d] : indegree) {
    if (d == 0) ready.push(t);
  }
  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string t = ready.front();
    ready.pop();
    order.push_back(t);
    for (const auto &c : children[t]) {
      if (--indegree[c] == 0) ready.push(c);
    }
  }
  if (order.size() != record.types.size()) {
    std::vector<std::string> cyclic;
    for (const auto &[t, d] : indegree) {
      if (d > 0) cyclic.push_back("type \"" + t + "\" lies on a subclass cycle");
    }
    throw ValidationError(cyclic);
  }
  for (const auto &t : order) {
    auto &anc = ancestors_[t];
    anc.insert(t);
    int best = parents_[t].empty() ? 0 : -1;
    for (const auto &p : parents_[t]) {
      const auto &pa = ancestors_[p];
      anc.insert(pa.begin(), pa.end());
      int d = depth_[p] + 1;
      if (best < 0 || d < best) best = d;
    }
    depth_[t] = best;
  }
}

const std::set<std::string> &Ontology::ancestors(const std::string &type) const {
  auto it = ancestors_.find(type);
  return it == ancestors_.end() ? kEmptySet : it->second;
}

std::set<std::string> Ontology::closure(const std::set<std::string> &types) const {
  std::set<std::string> out;
  for (const auto &t : types) {
    const auto &a = ancestors(t);
    out.insert(a.begin(), a.end());
  }
  return out;
}

bool Ontology::is_disjoint(const std::string &a, const std::string &b) const {
  return disjoint_.count({a, b}) > 0;
}

int Ontology::depth(const std::string &type) const {
  auto it = depth_.find(type);
  return it == depth_.end() ? -1 : it->second;
}

const std::set<std::string> &Ontology::parents(const std::string &type) const {
  auto it = parents_.find(type);
  return it == parents_.end() ? kEmptySet : it->second;
}

CorpusBundle::CorpusBundle(BundleData data) : data_(std::move(data)) {
  // Disjointness is symmetric after loading.
  std::set<Edge> sym;
  for (const auto &[a, b] : data_.ontology.disjointness_pairs) {
    sym.emplace(a, b);
    sym.emplace(b, a);
  }
  data_.ontology.disjointness_pairs = std::move(sym);
  ontology_ = Ontology(data_.ontology);

  std::vector<std::string> offenders;
  for (const auto &[name, cat] : data_.categories) {
    if (name.empty()) offenders.push_back("category with empty name");
    if (cat.name != name) offenders.push_back("category key \"" + name + "\" != name \"" + cat.name + "\"");
    if (cat.is_list_category != starts_with(name, kListCategoryPrefix)) {
      offenders.push_back("category \"" + name + "\" has inconsistent is_list_category");
    }
    for (const auto &m : cat.members) {
      if (!data_.entities.count(m)) {
        offenders.push_back("category \"" + name + "\" lists unknown member \"" + m + "\"");
      }
    }
  }
  for (const auto &[parent, child] : data_.subcategory_edges) {
    for (const auto &c : {parent, child}) {
      if (!data_.categories.count(c)) {
        offenders.push_back("subcategory edge references unknown category \"" + c + "\"");
      }
    }
    children_[parent].insert(child);
  }
  for (const auto &[id, ent] : data_.entities) {
    if (id.empty()) offenders.push_back("entity with empty id");
    for (const auto &t : ent.types) {
      if (!ontology_.has_type(t)) {
        offenders.push_back("entity \"" + id + "\" references undeclared type \"" + t + "\"");
      }
    }
    if (!ent.exists_in_kb && !ent.types.empty()) {
      offenders.push_back("red-link entity \"" + id + "\" must not carry types");
    }
  }
  for (const auto &[e, p, o] : data_.ontology.relation_facts) {
    if (!data_.entities.count(e)) {
      offenders.push_back("fact subject \"" + e + "\" is not a known entity");
    }
    facts_[e].emplace(p, o);
  }
  if (!offenders.empty()) throw ValidationError(offenders);
}

const CategoryRecord *CorpusBundle::find_category(const std::string &name) const {
  auto it = data_.categories.find(name);
  return it == data_.categories.end() ? nullptr : &it->second;
}

const EntityRecord *CorpusBundle::find_entity(const std::string &id) const {
  auto it = data_.entities.find(id);
  return it == data_.entities.end() ? nullptr : &it->second;
}

const std::set<std::string> &CorpusBundle::subcategories(const std::string &name) const {
  auto it = children_.find(name);
  return it == children_.end() ? kEmptySet : it->second;
}

std::set<std::string> CorpusBundle::entity_type_closure(const std::string &id) const {
  const EntityRecord *e = find_entity(id);
  if (e == nullptr) return {};
  return ontology_.closure(e->types);
}

const std::set<std::pair<std::string, std::string>> &CorpusBundle::facts_of(
    const std::string &id) const {
  auto it = facts_.find(id);
  return it == facts_.end() ? kEmptyFacts : it->second;
}

bool CorpusBundle::has_fact(const std::string &entity, const std::string &predicate,
                            const std::string &object) const {
  return facts_of(entity).count({predicate, object}) > 0;
}

CorpusBundle load_bundle(const std::string &root_dir) {
  fs::path root(root_dir);
  if (!fs::is_directory(root)) throw MissingInputError("corpus directory not found: " + root_dir);
  BundleData data;

  for_each_jsonl(root / "categories.jsonl", [&](const json &obj, int lineno) {
    CategoryRecord cat;
    cat.name = obj.at("name").get<std::string>();
    if (cat.name.empty()) throw ParseError("categories.jsonl", lineno, "empty category name");
    cat.members = string_set(obj, "members");
    cat.is_list_category = starts_with(cat.name, kListCategoryPrefix);
    for (const auto &sub : string_set(obj, "subcats")) data.subcategory_edges.emplace(cat.name, sub);
    if (!data.categories.emplace(cat.name, cat).second) {
      throw ParseError("categories.jsonl", lineno, "duplicate category \"" + cat.name + "\"");
    }
  });

  for_each_jsonl(root / "entities.jsonl", [&](const json &obj, int lineno) {
    EntityRecord ent;
    ent.id = obj.at("id").get<std::string>();
    ent.label = obj.value("label", ent.id);
    ent.types = string_set(obj, "types");
    ent.exists_in_kb = obj.value("exists_in_kb", true);
    if (!data.entities.emplace(ent.id, ent).second) {
      throw ParseError("entities.jsonl", lineno, "duplicate entity \"" + ent.id + "\"");
    }
  });

  fs::path onto_path = root / "ontology.json";
  std::ifstream onto_in(onto_path);
  if (onto_in) {
    std::stringstream buf;
    buf << onto_in.rdbuf();
    std::string text = buf.str();
    if (!trim(text).empty()) {
      try {
        json obj = json::parse(text);
        for (const auto &t : obj.value("types", json::array())) data.ontology.types.insert(t.get<std::string>());
        data.ontology.subclass_edges = pair_set(obj.value("subclass_edges", json::array()), "subclass_edges");
        data.ontology.disjointness_pairs = pair_set(obj.value("disjoint", json::array()), "disjoint");
        for (const auto &f : obj.value("facts", json::array())) {
          if (!f.is_array() || f.size() != 3) throw Error("facts: expected [entity, predicate, object]");
          data.ontology.relation_facts.emplace(f[0].get<std::string>(), f[1].get<std::string>(),
                                               f[2].get<std::string>());
        }
      } catch (const json::parse_error &e) {
        throw ParseError("ontology.json", static_cast<int>(e.byte), e.what());
      } catch (const json::exception &e) {
        throw ParseError("ontology.json", 1, e.what());
      } catch (const ParseError &) {
        throw;
      } catch (const Error &e) {
        throw ParseError("ontology.json", 1, e.what());
      }
    }
  }

  for_each_jsonl(root / "pages.jsonl", [&](const json &obj, int lineno) {
    std::string title = obj.at("title").get<std::string>();
    if (!data.pages.emplace(title, obj.value("wikitext", "")).second) {
      throw ParseError("pages.jsonl", lineno, "duplicate page \"" + title + "\"");
    }
  });

  data.evidence.hearst = read_count_tsv((root / "hearst.tsv").string());
  data.evidence.webisalod = read_confidence_tsv((root / "webisalod.tsv").string());
  data.synonyms = read_synonyms_tsv((root / "synonyms.tsv").string());

  return CorpusBundle(std::move(data));
}

void write_bundle(const CorpusBundle &bundle, const std::string &root_dir) {
  fs::path root(root_dir);
  fs::create_directories(root);
  const BundleData &d = bundle.data();
  auto open = [&](const char *name) {
    std::ofstream out(root / name);
    if (!out) throw Error("cannot write " + (root / name).string());
    return out;
  };
  {
    auto out = open("categories.jsonl");
    for (const auto &[name, cat] : d.categories) {
      json obj;
      obj["name"] = name;
      obj["members"] = cat.members;
      obj["subcats"] = bundle.subcategories(name);
      out << obj.dump() << '\n';
    }
  }
  {
    auto out = open("entities.jsonl");
    for (const auto &[id, ent] : d.entities) {
      json obj;
      obj["id"] = id;
      obj["label"] = ent.label;
      obj["types"] = ent.types;
      obj["exists_in_kb"] = ent.exists_in_kb;
      out << obj.dump() << '\n';
    }
  }
  {
    auto out = open("ontology.json");
    json obj;
    obj["types"] = d.ontology.types;
    obj["subclass_edges"] = json::array();
    for (const auto &[p, c] : d.ontology.subclass_edges) obj["subclass_edges"].push_back({p, c});
    obj["disjoint"] = json::array();
    for (const auto &[a, b] : d.ontology.disjointness_pairs) {
      if (a < b) obj["disjoint"].push_back({a, b});
    }
    obj["facts"] = json::array();
    for (const auto &[e, p, o] : d.ontology.relation_facts) obj["facts"].push_back({e, p, o});
    out << obj.dump(1) << '\n';
  }
  {
    auto out = open("pages.jsonl");
    for (const auto &[title, text] : d.pages) {
      json obj;
      obj["title"] = title;
      obj["wikitext"] = text;
      out << obj.dump() << '\n';
    }
  }
  write_count_tsv((root / "hearst.tsv").string(), d.evidence.hearst);
  write_confidence_tsv((root / "webisalod.tsv").string(), d.evidence.webisalod);
  write_synonyms_tsv((root / "synonyms.tsv").string(), d.synonyms);
}

CategoryGraph filter_category_graph(const CorpusBundle &bundle, const std::string &root) {
  CategoryGraph graph;
  if (bundle.categories().empty()) return graph;
  if (bundle.find_category(root) == nullptr) {
    throw MissingInputError("root category \"" + root + "\" not found");
  }
  static const char *kKeywords[] = {"wikipedia", "lists", "template", "stub"};
  auto excluded = [&](const std::string &name) {
    if (name == root) return false;
    std::string lower = to_lower(name);
    for (const char *kw : kKeywords) {
      if (lower.find(kw) != std::string::npos) return true;
    }
    return false;
  };
  std::set<std::string> reached{root};
  std::queue<std::string> queue;
  queue.push(root);
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop();
    for (const auto &child : bundle.subcategories(cur)) {
      if (reached.insert(child).second) queue.push(child);
    }
  }
  for (const auto &name : reached) {
    if (!excluded(name)) graph.nodes.insert(name);
  }
  for (const auto &name : graph.nodes) {
    for (const auto &child : bundle.subcategories(name)) {
      if (graph.nodes.count(child)) graph.edges.emplace(name, child);
    }
  }
  return graph;
}

}  // namespace listforge
